import json
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
from pydantic import BaseModel

from conservnet.core.exceptions import FormatError, MissingArtifactError
from conservnet.models import (
    PRIMARY_INVARIANT,
    DatasetMeta,
    Group,
    GroupedDataset,
    Heatmap,
    Snapshot,
    SweepRow,
    TrajectoryResponse,
)
from conservnet.services.network import Gradients, MlpParams

CHECKPOINT_VERSION = 1
FLOAT_FORMAT = "%.17g"
GROUP_COLUMN = "group_id"


def _require(path: Path, artifact: str) -> Path:
    if not path.is_file():
        raise MissingArtifactError(path, artifact)
    return path


def _write_json(path: Path, payload: Any) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def _write_model(path: Path, model: BaseModel) -> Path:
    return _write_json(path, model.model_dump(mode="json"))


def sidecar_path(path: Path) -> Path:
    return path.with_suffix(".json")


def write_dataset(*, dataset: GroupedDataset, path: Path) -> Path:
    """CSV of every row plus a JSON sidecar; floats keep all 17 digits."""
    aux = list(dataset.aux_invariant_names)
    frames: list[pd.DataFrame] = []
    for group in dataset.groups:
        frame = pd.DataFrame(group.states, columns=list(dataset.variables))
        frame.insert(0, GROUP_COLUMN, group.group_id)
        frame[PRIMARY_INVARIANT] = (
            np.nan if group.invariant is None else group.invariant
        )
        for name in aux:
            frame[name] = group.aux_invariants[name]
        frames.append(frame)
    columns = [GROUP_COLUMN, *dataset.variables, PRIMARY_INVARIANT, *aux]
    table = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=columns)

    path.parent.mkdir(parents=True, exist_ok=True)
    table[columns].to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep="")

    meta = DatasetMeta(
        name=dataset.name,
        variables=list(dataset.variables),
        rescale_log=list(dataset.rescale_log),
        n_groups=dataset.n_groups,
        points_per_group=[group.size for group in dataset.groups],
        invariant_columns=[PRIMARY_INVARIANT, *aux],
        extra=dict(dataset.meta),
    )
    _write_model(sidecar_path(path), meta)
    return path


def read_dataset(*, path: Path) -> GroupedDataset:
    _require(path, "Dataset")
    meta = DatasetMeta.model_validate_json(
        _require(sidecar_path(path), "Dataset metadata").read_text()
    )
    table = pd.read_csv(path, float_precision="round_trip")

    expected = [GROUP_COLUMN, *meta.variables, *meta.invariant_columns]
    if list(table.columns) != expected:
        raise FormatError(f"{path}: columns {list(table.columns)} != {expected}")

    aux = [name for name in meta.invariant_columns if name != PRIMARY_INVARIANT]
    groups: list[Group] = []
    for group_id, rows in table.groupby(GROUP_COLUMN, sort=False):
        primary = rows[PRIMARY_INVARIANT].iloc[0]
        groups.append(
            Group(
                group_id=int(group_id),  # type: ignore[arg-type]
                states=rows[list(meta.variables)].to_numpy(dtype=np.float64),
                invariant=None if pd.isna(primary) else float(primary),
                aux_invariants={name: float(rows[name].iloc[0]) for name in aux},
            )
        )
    if len(groups) != meta.n_groups:
        raise FormatError(f"{path}: {len(groups)} groups, metadata says {meta.n_groups}")

    return GroupedDataset(
        name=meta.name,
        variables=tuple(meta.variables),
        groups=tuple(groups),
        rescale_log=tuple(meta.rescale_log),
        meta=meta.extra,
    )


def save_checkpoint(*, params: MlpParams, path: Path) -> Path:
    arrays: dict[str, Any] = {
        "format_version": np.int64(CHECKPOINT_VERSION),
        "dims": np.asarray(params.dims, dtype=np.int64),
        "seed": np.int64(-1 if params.seed is None else params.seed),
        "step_count": np.int64(params.step_count),
    }
    for prefix, values in (
        ("w", params.weights),
        ("b", params.biases),
        ("mw", params.adam_m.weights),
        ("mb", params.adam_m.biases),
        ("vw", params.adam_v.weights),
        ("vb", params.adam_v.biases),
    ):
        for i, array in enumerate(values):
            arrays[f"{prefix}{i}"] = np.ascontiguousarray(array)

    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("wb") as handle:
        np.savez(handle, **arrays)
    return path


def load_checkpoint(*, path: Path) -> MlpParams:
    _require(path, "Checkpoint")
    try:
        with np.load(path, allow_pickle=False) as archive:
            version = int(archive["format_version"])
            if version != CHECKPOINT_VERSION:
                raise FormatError(
                    f"{path}: checkpoint version {version}, expected {CHECKPOINT_VERSION}"
                )
            n_layers = len(archive["dims"]) - 1

            def layers(prefix: str) -> tuple[np.ndarray, ...]:
                return tuple(archive[f"{prefix}{i}"] for i in range(n_layers))

            seed = int(archive["seed"])
            return MlpParams(
                weights=layers("w"),
                biases=layers("b"),
                adam_m=Gradients(weights=layers("mw"), biases=layers("mb")),
                adam_v=Gradients(weights=layers("vw"), biases=layers("vb")),
                step_count=int(archive["step_count"]),
                seed=None if seed < 0 else seed,
            )
    except (KeyError, ValueError, OSError) as exc:
        raise FormatError(f"{path}: unreadable checkpoint ({exc})") from exc


def append_metrics(*, snapshot: Snapshot, path: Path) -> Path:
    """One row per snapshot; the header is written with the first row."""
    path.parent.mkdir(parents=True, exist_ok=True)
    row = pd.DataFrame([snapshot.model_dump()])
    row.to_csv(
        path,
        mode="a",
        header=not path.exists(),
        index=False,
        float_format=FLOAT_FORMAT,
        na_rep="",
    )
    return path


def read_metrics(*, path: Path) -> list[Snapshot]:
    table = pd.read_csv(_require(path, "Metric log"), float_precision="round_trip")
    records = table.astype(object).where(table.notna(), None).to_dict(orient="records")
    return [Snapshot.model_validate(record) for record in records]


def write_report(*, report: BaseModel, path: Path) -> Path:
    return _write_model(path, report)


def read_json(*, path: Path) -> dict[str, Any]:
    return json.loads(_require(path, "Report").read_text())


def write_text(*, text: str, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return path


def write_sweep_table(*, rows: list[SweepRow], axis: str, path: Path) -> Path:
    table = pd.DataFrame([row.model_dump() for row in rows])
    table.insert(0, "axis", axis)
    path.parent.mkdir(parents=True, exist_ok=True)
    table.to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep="")
    return path


def write_heatmap(*, heatmap: Heatmap, path: Path) -> tuple[Path, Path]:
    """Matrix CSV without headers (rows follow the first axis) plus an axis JSON."""
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(heatmap.values).to_csv(
        path, index=False, header=False, float_format=FLOAT_FORMAT
    )
    axes = _write_json(
        sidecar_path(path),
        {
            "rows": {"name": heatmap.rows.name, "values": heatmap.rows.values.tolist()},
            "cols": {"name": heatmap.cols.name, "values": heatmap.cols.values.tolist()},
            "fixed": heatmap.fixed,
            "shape": list(heatmap.shape),
        },
    )
    return path, axes


def write_trajectory_response(*, response: TrajectoryResponse, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(
        {
            "step": np.arange(response.clean.size),
            "clean": response.clean,
            "noised": response.noised,
        }
    ).to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path
