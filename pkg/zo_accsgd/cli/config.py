"""JSON experiment configuration."""

import json
import math
import os
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Any, Dict, List, Optional

from ..core.noise import NoiseModel, NoiseVariant
from ..errors import ConfigError
from ..estimators import EstimatorConfig, EstimatorMode
from ..kernels import KernelSpec, kernel_for_beta, load_kernel_file
from ..problems import ProblemConfig

METHODS = ("zo_acc_sgd", "zo_sgd")


@dataclass
class ExperimentConfig:
    """Everything needed to reproduce a run.

    Defaults are the planted linear-system experiment: d = 64, B = 50,
    Delta = 1e-5, eta = 0.02, h = 0.5 with the beta = 3 kernel.
    """

    problem: ProblemConfig = field(default_factory=lambda: ProblemConfig(scale=0.1))
    method: str = "zo_acc_sgd"
    mode: str = EstimatorMode.KERNEL_ONEPOINT.value
    beta: float = 3.0
    kernel_file: Optional[str] = None
    batch_size: int = 50
    h: float = 0.5
    eta: Optional[float] = 0.02
    L: Optional[float] = None
    rho_B: Optional[float] = None
    noise: str = NoiseVariant.UNIFORM.value
    delta: float = 1e-5
    iterations: int = 10_000
    record_every: int = 1
    target_gap: Optional[float] = None
    seeds: List[int] = field(default_factory=lambda: [0])
    output_dir: str = "results"

    def __post_init__(self) -> None:
        if isinstance(self.problem, dict):
            self.problem = ProblemConfig.from_dict(self.problem)
        self.seeds = [int(s) for s in self.seeds]

    @classmethod
    def from_dict(cls, raw: Dict[str, Any]) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            config = cls(**raw)
        except TypeError as e:
            raise ConfigError(str(e)) from e
        config.validate()
        return config

    @classmethod
    def load(cls, path: str) -> "ExperimentConfig":
        try:
            with open(path, "r", encoding="utf-8") as f:
                raw = json.load(f)
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e}") from e
        except ValueError as e:
            raise ConfigError(f"config {path} is not valid JSON: {e}") from e
        if not isinstance(raw, dict):
            raise ConfigError(f"config {path} must hold a JSON object")
        return cls.from_dict(raw)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def with_overrides(self, **overrides: Any) -> "ExperimentConfig":
        """Copy with every non-None override applied, then validated."""
        updated = replace(self, **{k: v for k, v in overrides.items() if v is not None})
        updated.validate()
        return updated

    def validate(self) -> None:
        if self.method not in METHODS:
            raise ConfigError(f"method must be one of {', '.join(METHODS)}, got {self.method!r}")
        try:
            EstimatorMode(self.mode)
            NoiseModel(self.noise, self.delta)
        except ValueError as e:
            raise ConfigError(str(e)) from e
        if int(self.batch_size) != self.batch_size or self.batch_size < 1:
            raise ConfigError(f"batch_size must be an integer >= 1, got {self.batch_size}")
        if not (math.isfinite(self.h) and self.h > 0):
            raise ConfigError(f"h must be > 0, got {self.h}")
        for name in ("eta", "L", "target_gap"):
            value = getattr(self, name)
            if value is not None and not (math.isfinite(value) and value > 0):
                raise ConfigError(f"{name} must be > 0, got {value}")
        if self.rho_B is not None and not self.rho_B >= 1:
            raise ConfigError(f"rho_B must be >= 1, got {self.rho_B}")
        if self.iterations < 0 or self.record_every < 1:
            raise ConfigError("iterations must be >= 0 and record_every >= 1")
        if not self.seeds:
            raise ConfigError("seeds must list at least one seed")
        if self.kernel_file is not None and not os.path.exists(self.kernel_file):
            raise ConfigError(f"kernel file not found: {self.kernel_file}")
        if self.problem.family == "logistic" and not self.problem.data_path:
            raise ConfigError("logistic problems need problem.data_path")

    def kernel(self) -> Optional[KernelSpec]:
        if EstimatorMode(self.mode) is EstimatorMode.CENTRAL_L2:
            return None
        if self.kernel_file is not None:
            return load_kernel_file(self.kernel_file)
        return kernel_for_beta(self.beta)

    def estimator(self) -> EstimatorConfig:
        return EstimatorConfig(h=self.h, batch_size=int(self.batch_size), kernel=self.kernel(), mode=EstimatorMode(self.mode))

    def noise_model(self) -> NoiseModel:
        return NoiseModel(self.noise, self.delta)
