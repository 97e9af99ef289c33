"""Objectives, noise models, the zero-order oracle and reproducible random streams."""

from .noise import NoiseModel, NoiseVariant, make_noise, noise_sample
from .objective import CallableObjective, ObjectiveFunction, check_gradient
from .oracle import ZeroOrderOracle, oracle_query
from .rng import RngLike, RngStream, as_generator

__all__ = [
    "CallableObjective",
    "NoiseModel",
    "NoiseVariant",
    "ObjectiveFunction",
    "RngLike",
    "RngStream",
    "ZeroOrderOracle",
    "as_generator",
    "check_gradient",
    "make_noise",
    "noise_sample",
    "oracle_query",
]
