from pathlib import Path
from typing import Any

EXIT_USAGE = 1
EXIT_RUNTIME = 2


class ConservNetError(Exception):
    def __init__(self, message: str, error_type: str, exit_code: int = EXIT_RUNTIME):
        self.message = message
        self.error_type = error_type
        self.exit_code = exit_code
        super().__init__(message)

    @property
    def detail(self) -> dict[str, Any]:
        return {
            "message": self.message,
            "error_type": self.error_type,
            "exit_code": self.exit_code,
        }


class DimensionError(ConservNetError):
    def __init__(self, expected: int | tuple[int, ...], got: int | tuple[int, ...]):
        super().__init__(
            message=f"Dimension mismatch: expected {expected}, got {got}",
            error_type="DimensionError",
        )


class ArgumentError(ConservNetError):
    def __init__(self, detail: str = "Invalid argument"):
        super().__init__(
            message=detail, error_type="ArgumentError", exit_code=EXIT_USAGE
        )


class TrainingDivergenceError(ConservNetError):
    def __init__(self, epoch: int | None = None, detail: str = "Non-finite value"):
        self.epoch = epoch
        where = f" at epoch {epoch}" if epoch is not None else ""
        super().__init__(
            message=f"Training diverged{where}: {detail}",
            error_type="TrainingDivergenceError",
        )


class DomainError(ConservNetError):
    def __init__(self, detail: str = "State outside the invariant's domain"):
        super().__init__(message=detail, error_type="DomainError")


class InfeasibleSpecError(ConservNetError):
    def __init__(self, system: str, acceptance: float):
        super().__init__(
            message=(
                f"Sampling for {system} is infeasible: "
                f"acceptance rate {acceptance:.4%} over the last window"
            ),
            error_type="InfeasibleSpecError",
        )


class SimulationError(ConservNetError):
    def __init__(self, system: str, detail: str):
        super().__init__(
            message=f"Simulation of {system} failed: {detail}",
            error_type="SimulationError",
        )


class ParseError(ConservNetError):
    def __init__(self, path: Path | str, line: int, detail: str = "malformed row"):
        self.line = line
        super().__init__(
            message=f"{path}:{line}: {detail}",
            error_type="ParseError",
        )


class FormatError(ConservNetError):
    def __init__(self, detail: str = "Unexpected file format"):
        super().__init__(message=detail, error_type="FormatError")


class UndefinedCorrelationError(ConservNetError):
    def __init__(self, detail: str = "Correlation is undefined for constant input"):
        super().__init__(message=detail, error_type="UndefinedCorrelationError")


class DegenerateFitError(ConservNetError):
    def __init__(self, detail: str = "Calibration is degenerate: constant model output"):
        super().__init__(message=detail, error_type="DegenerateFitError")


class RankDeficiencyError(ConservNetError):
    def __init__(self, rank: int, n_features: int):
        super().__init__(
            message=(
                f"Normal equations are singular (rank {rank} < {n_features}); "
                "use a positive ridge penalty"
            ),
            error_type="RankDeficiencyError",
        )


class UsageError(ConservNetError):
    def __init__(self, detail: str = "Invalid usage"):
        super().__init__(message=detail, error_type="UsageError", exit_code=EXIT_USAGE)


class MissingArtifactError(ConservNetError):
    def __init__(self, path: Path | str, artifact: str = "Artifact"):
        self.path = Path(path)
        super().__init__(
            message=f"{artifact} not found: {path}",
            error_type="MissingArtifactError",
            exit_code=EXIT_USAGE,
        )
