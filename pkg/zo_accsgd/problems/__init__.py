"""Benchmark objectives, LIBSVM data and reference solutions."""

from typing import Union

from .factory import FAMILIES, ProblemConfig, make_problem, resolve_data_path
from .least_squares import LeastSquaresProblem, least_squares_make
from .libsvm import KNOWN_DATASETS, DatasetMeta, load_libsvm, parse_libsvm, serialize_libsvm
from .logistic import LogisticRegressionProblem
from .reference import ReferenceSolution, attach_reference, cached_reference, solve_reference
from .spectral import power_iteration
from .synthetic import LinearFunction, QuadraticProblem, quadratic_make


def smoothness_constant(problem: Union[LeastSquaresProblem, LogisticRegressionProblem], spectral_root: bool = False) -> float:
    """L of a benchmark problem, recomputed by power iteration."""
    if isinstance(problem, LogisticRegressionProblem):
        return problem.smoothness_constant(spectral_root)
    return problem.smoothness_constant()


__all__ = [
    "FAMILIES",
    "KNOWN_DATASETS",
    "DatasetMeta",
    "LeastSquaresProblem",
    "LinearFunction",
    "LogisticRegressionProblem",
    "ProblemConfig",
    "QuadraticProblem",
    "ReferenceSolution",
    "attach_reference",
    "cached_reference",
    "least_squares_make",
    "load_libsvm",
    "make_problem",
    "parse_libsvm",
    "power_iteration",
    "quadratic_make",
    "resolve_data_path",
    "serialize_libsvm",
    "smoothness_constant",
    "solve_reference",
]
