"""
Configuration settings for the Coherence Fraction SDK.
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional

from coherence_fraction_sdk.errors import OutOfRange
from coherence_fraction_sdk.models import OutputFormat


class Config:
    """Fixed tolerances and defaults shared by every module."""

    # Validation of states, phases and channels
    STATE_TOL = 1e-10
    PURE_NORM_TOL = 1e-12
    KRAUS_TOL = 1e-9

    # Off-diagonal entries below this magnitude have no defined argument
    ZERO_ENTRY_TOL = 1e-12
    ALIGNMENT_TOL = 1e-8

    # Entropies
    EIGENVALUE_CUTOFF = 1e-14
    NEGATIVE_CLAMP = 1e-9

    # Strictness margin for "greater than 1/d" decisions
    COHERENT_MARGIN = 1e-9

    # Oracle
    MAX_ORACLE_DIM = 4

    DEFAULT_PRECISION = 9

    @classmethod
    def default_grid_points(cls, dim: int) -> int:
        """Oracle resolution per free angle for a given dimension."""
        return 360 if dim <= 3 else 36


@dataclass
class OptimizerConfig:
    """Settings of the phase optimizer and of the channel searches."""

    restarts: int = 16
    max_iters: int = 500
    tol: float = 1e-10
    seed: int = 0
    grid_points: Optional[int] = None
    channel_grid_points: int = 720
    refine_tol: float = 1e-12
    bipartite_restarts: int = 32
    inner_restarts: int = 4
    step_init: float = 0.5
    step_min: float = 1e-6
    record_trace: bool = False

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        """Raise OutOfRange when a field is not positive."""
        for name in ("restarts", "max_iters", "channel_grid_points", "bipartite_restarts", "inner_restarts"):
            if getattr(self, name) < 1:
                raise OutOfRange(f"{name} must be >= 1, got {getattr(self, name)}")
        for name in ("tol", "refine_tol", "step_init", "step_min"):
            if not getattr(self, name) > 0:
                raise OutOfRange(f"{name} must be > 0, got {getattr(self, name)}")
        if self.grid_points is not None and self.grid_points < 8:
            raise OutOfRange(f"grid_points must be >= 8, got {self.grid_points}")
        if self.seed < 0:
            raise OutOfRange(f"seed must be non-negative, got {self.seed}")

    def resolved_grid_points(self, dim: int) -> int:
        return self.grid_points if self.grid_points is not None else Config.default_grid_points(dim)


@dataclass
class OutputConfig:
    """Where and how command results are written."""

    format: OutputFormat = OutputFormat.CSV
    precision: int = Config.DEFAULT_PRECISION
    path: Optional[str] = None

    def __post_init__(self):
        if isinstance(self.format, str):
            self.format = OutputFormat(self.format)
        if not 3 <= self.precision <= 17:
            raise OutOfRange(f"precision must lie in [3, 17], got {self.precision}")


@dataclass
class RunConfig:
    """Main configuration bundle handed to the analyzer and the CLI commands."""

    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]) -> "RunConfig":
        """Create configuration from dictionary."""
        return cls(
            optimizer=OptimizerConfig(**config_dict.get("optimizer", {})),
            output=OutputConfig(**config_dict.get("output", {})),
        )

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary."""
        output = asdict(self.output)
        output["format"] = self.output.format.value
        return {"optimizer": asdict(self.optimizer), "output": output}


# Default configuration
DEFAULT_CONFIG = RunConfig()
