"""Configuration schema for shellergm."""

from pathlib import Path
from typing import List, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator

from shellergm.domain.enums import Correction

DEFAULT_CONFIG_PATH = Path(__file__).with_name("default.yml")


class OutputConfig(BaseModel):
    """Output configuration settings."""

    directory: str = Field(default="runs", description="Output directory")
    format: str = Field(default="json", description="Output format (json, csv)")

    @field_validator("format")
    @classmethod
    def _known_format(cls, value: str) -> str:
        value = value.strip().lower()
        if value not in {"json", "csv"}:
            raise ValueError(f"unsupported output format '{value}' (json, csv)")
        return value


class ChainConfig(BaseModel):
    """Metropolis chain settings."""

    model_config = ConfigDict(extra="forbid", validate_assignment=True)

    steps: int = Field(default=20000, ge=1, description="Number of proposals")
    k: int = Field(default=5, ge=1, description="Dyads toggled per tie-no-tie proposal")
    burn_in: int = Field(default=1000, ge=0, description="Steps discarded before recording")
    thin: int = Field(default=1, ge=1, description="Record every thin-th step after burn-in")
    seed: Optional[int] = Field(
        default=None,
        ge=0,
        lt=2**64,
        description="64-bit seed; generated and recorded when omitted",
    )
    correction: Correction = Field(
        default=Correction.PAPER,
        description="paper_metropolis or hastings_corrected acceptance",
    )

    @field_validator("correction", mode="before")
    @classmethod
    def _parse_correction(cls, value: Union[str, Correction]) -> Correction:
        return value if isinstance(value, Correction) else Correction.parse(value)

    @property
    def recorded_steps(self) -> int:
        if self.steps <= self.burn_in:
            return 0
        return (self.steps - self.burn_in) // self.thin


class EstimatorConfig(BaseModel):
    """Smoothed empirical estimator settings."""

    alpha: Union[float, List[float]] = Field(
        default=0.2,
        description="Pseudo-count per shell: a scalar broadcast to every shell or a full vector",
    )

    @field_validator("alpha")
    @classmethod
    def _non_negative(cls, value: Union[float, List[float]]) -> Union[float, List[float]]:
        values = value if isinstance(value, list) else [value]
        if any(v < 0 for v in values):
            raise ValueError("alpha must be non-negative")
        return value


class FiberConfig(BaseModel):
    """Fiber sampler settings."""

    count: int = Field(default=10000, ge=1, description="Sampler runs per invocation")
    iso_class_cap: int = Field(
        default=8,
        ge=0,
        le=8,
        description="Largest n for which isomorphism classes are reported",
    )


class EnumerationConfig(BaseModel):
    """Exhaustive enumeration caps."""

    partition_max_n: int = Field(
        default=6, ge=1, le=7, description="Largest n for the exact partition function"
    )
    fiber_max_n: int = Field(
        default=7, ge=1, le=7, description="Largest n for brute-force fiber enumeration"
    )


class GOFConfig(BaseModel):
    """Goodness-of-fit report settings."""

    quantile_levels: List[float] = Field(
        default=[0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95],
        description="Quantile levels reported for every statistic",
    )
    centrality_bins: int = Field(default=20, ge=1, description="Equal-width centrality bins")
    centrality_measures: List[str] = Field(
        default=["freeman_degree"],
        description="Registered centrality measures included in the report",
    )
    modal_top: int = Field(default=5, ge=1, description="Most visited shell distributions listed")
    max_lag: int = Field(default=50, ge=1, description="Largest autocorrelation lag")

    @field_validator("quantile_levels")
    @classmethod
    def _sorted_levels(cls, value: List[float]) -> List[float]:
        if any(not 0.0 <= q <= 1.0 for q in value):
            raise ValueError("quantile levels must lie in [0, 1]")
        return sorted(value)


class LoggingConfig(BaseModel):
    """Logging configuration settings."""

    level: str = Field(default="INFO", description="Logging level")
    format: str = Field(
        default="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        description="Log message format",
    )
    file: Optional[str] = Field(
        default="shellergm.log",
        description=(
            "Log file name or path (relative paths are resolved within the output directory)"
        ),
    )


class ShellERGMConfig(BaseModel):
    """Main shellergm configuration schema."""

    model_config = ConfigDict(extra="forbid", validate_assignment=True)

    output: OutputConfig = Field(default_factory=OutputConfig)
    chain: ChainConfig = Field(default_factory=ChainConfig)
    estimator: EstimatorConfig = Field(default_factory=EstimatorConfig)
    fiber: FiberConfig = Field(default_factory=FiberConfig)
    enumeration: EnumerationConfig = Field(default_factory=EnumerationConfig)
    gof: GOFConfig = Field(default_factory=GOFConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)


def load_config(config_path: Optional[Path] = None) -> ShellERGMConfig:
    """Load configuration from a YAML file, the packaged default when omitted.

    Raises:
        FileNotFoundError: If the config file doesn't exist
        yaml.YAMLError: If the config file is invalid YAML
        ValueError: If the config data is invalid
    """
    path = Path(config_path) if config_path is not None else DEFAULT_CONFIG_PATH
    if not path.exists():
        raise FileNotFoundError(f"Configuration file not found: {path}")

    with open(path, "r", encoding="utf-8") as f:
        config_data = yaml.safe_load(f) or {}

    return ShellERGMConfig(**config_data)
