import sys

import logfire
import typer
from pydantic import ValidationError

from conservnet.cli.main import app
from conservnet.core.config import settings
from conservnet.core.exceptions import EXIT_USAGE, ConservNetError


def configure_logging() -> None:
    logfire.configure(
        token=settings.LOGFIRE_TOKEN or None,
        send_to_logfire=settings.logfire_enabled,
        service_name=settings.PROJECT_NAME,
        environment=settings.ENVIRONMENT,
        console=None if settings.LOG_CONSOLE else False,
    )


def main(argv: list[str] | None = None) -> int:
    """Console entry point; usage problems exit 1, runtime failures exit 2."""
    configure_logging()
    try:
        app(args=argv, prog_name="conservnet")
    except SystemExit as exc:
        # Typer has already printed parser errors; any non-zero status is a usage error
        return 0 if exc.code in (0, None) else EXIT_USAGE
    except ValidationError as exc:
        typer.echo(f"Invalid configuration:\n{exc}", err=True)
        return EXIT_USAGE
    except ConservNetError as exc:
        logfire.error("{error_type}: {message}", **exc.detail)
        typer.echo(f"{exc.error_type}: {exc.message}", err=True)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
