import typer

from conservnet.cli.commands import (
    evaluate,
    extract,
    generate,
    heatmap,
    ingest,
    sweep,
    train,
)
from conservnet.core.config import settings

app = typer.Typer(
    name=settings.PROJECT_NAME,
    help="Learn conserved quantities from grouped trajectory data.",
    no_args_is_help=True,
    add_completion=False,
    pretty_exceptions_enable=False,
)
app.command("generate")(generate.generate)
app.command("ingest-dp")(ingest.ingest_dp)
app.command("train")(train.train)
app.command("eval")(evaluate.evaluate_command)
app.command("heatmap")(heatmap.heatmap)
app.command("sweep")(sweep.sweep_command)
app.command("extract")(extract.extract_command)
