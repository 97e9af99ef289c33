"""Build benchmark problems from configuration."""

import os
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Optional

from ..config import data_dir
from ..core.objective import ObjectiveFunction
from ..errors import ConfigError
from .least_squares import least_squares_make
from .libsvm import load_libsvm
from .logistic import LogisticRegressionProblem
from .reference import DEFAULT_TOL, attach_reference, cached_reference
from .synthetic import quadratic_make

FAMILIES = ("least_squares", "quadratic", "logistic")


@dataclass
class ProblemConfig:
    """Problem section of an experiment configuration.

    Args:
        family: least_squares, quadratic or logistic
        d: Dimension (synthetic families)
        p: Number of equations (least_squares)
        seed: Generator seed (synthetic families)
        condition: Condition target of the generated spectrum
        scale: Singular-value scale (least_squares)
        data_path: LIBSVM file (logistic); relative paths also resolve under ZO_DATA_DIR
        spectral_root: Use sqrt(lambda_max)/(4M) as the logistic L
        reference_tol: Gradient tolerance of the reference solver (logistic)
    """

    family: str = "least_squares"
    d: int = 64
    p: int = 64
    seed: int = 0
    condition: float = 10.0
    scale: float = 1.0
    data_path: Optional[str] = None
    spectral_root: bool = False
    reference_tol: float = DEFAULT_TOL

    @classmethod
    def from_dict(cls, raw: Dict[str, Any]) -> "ProblemConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown problem keys: {sorted(unknown)}")
        return cls(**raw)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def resolve_data_path(path: str) -> str:
    if os.path.exists(path):
        return path
    root = data_dir()
    if root and not os.path.isabs(path) and os.path.exists(os.path.join(root, path)):
        return os.path.join(root, path)
    raise ConfigError(f"dataset not found: {path}" + (f" (also looked in {root})" if root else ""))


def make_problem(config: ProblemConfig) -> ObjectiveFunction:
    if config.family == "least_squares":
        return least_squares_make(config.d, config.p, config.seed, config.condition, config.scale)
    if config.family == "quadratic":
        return quadratic_make(config.d, config.seed, config.condition)
    if config.family == "logistic":
        if not config.data_path:
            raise ConfigError("logistic problems need data_path")
        path = resolve_data_path(config.data_path)
        A, y, _ = load_libsvm(path)
        problem = LogisticRegressionProblem(A, y, spectral_root=config.spectral_root)
        return attach_reference(problem, cached_reference(path, problem, config.reference_tol))
    raise ConfigError(f"unknown problem family {config.family!r}; expected one of {', '.join(FAMILIES)}")
