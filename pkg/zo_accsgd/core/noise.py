"""Bounded-second-moment noise models for the zero-order oracle."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np
from scipy import stats

from ..errors import UsageError
from .rng import RngLike, as_generator


class NoiseVariant(Enum):
    """Distribution family of the additive oracle noise."""
    NONE = "none"
    UNIFORM = "uniform"
    GAUSSIAN_CLIPPED = "gaussian_clipped"
    ADVERSARIAL_SIGN = "adversarial_sign"


CLIP_SIGMAS: float = 3.0


def _clipped_normal_second_moment(c: float) -> float:
    # E[min(z^2, c^2)] for z ~ N(0, 1)
    inside = (2.0 * stats.norm.cdf(c) - 1.0) - 2.0 * c * stats.norm.pdf(c)
    outside = c * c * 2.0 * stats.norm.sf(c)
    return float(inside + outside)


_CLIPPED_RESCALE = 1.0 / math.sqrt(_clipped_normal_second_moment(CLIP_SIGMAS))


@dataclass(frozen=True)
class NoiseModel:
    """Additive noise with E[xi^2] <= level^2.

    Args:
        variant: Distribution family
        level: Noise level Delta >= 0, in units of the objective
    """

    variant: NoiseVariant = NoiseVariant.NONE
    level: float = 0.0

    def __post_init__(self) -> None:
        if isinstance(self.variant, str):
            try:
                object.__setattr__(self, "variant", NoiseVariant(self.variant))
            except ValueError as e:
                names = ", ".join(v.value for v in NoiseVariant)
                raise UsageError(f"unknown noise variant {self.variant!r}; expected one of {names}") from e
        if not math.isfinite(self.level) or self.level < 0:
            raise UsageError(f"noise level must be finite and >= 0, got {self.level}")

    @property
    def is_silent(self) -> bool:
        return self.variant is NoiseVariant.NONE or self.level == 0.0

    def draw(self, gen: np.random.Generator, hints: np.ndarray) -> np.ndarray:
        """Draw one noise value per hint.

        The adversarial variant ignores ``gen`` and returns level * sign(hint),
        with sign(0) taken as +1.
        """
        hints = np.asarray(hints, dtype=float)
        n = hints.shape[0]
        delta = self.level
        if self.variant is NoiseVariant.NONE:
            return np.zeros(n)
        if self.variant is NoiseVariant.UNIFORM:
            # uniform on [-sqrt(3) D, sqrt(3) D] has second moment exactly D^2
            half_width = math.sqrt(3.0) * delta
            return gen.uniform(-half_width, half_width, size=n)
        if self.variant is NoiseVariant.GAUSSIAN_CLIPPED:
            z = np.clip(gen.standard_normal(n), -CLIP_SIGMAS, CLIP_SIGMAS)
            return delta * _CLIPPED_RESCALE * z
        return np.where(hints >= 0.0, delta, -delta)


def noise_sample(model: NoiseModel, rng: RngLike, hint: float = 0.0) -> float:
    """Draw a single noise value from ``model``."""
    return float(model.draw(as_generator(rng), np.array([hint], dtype=float))[0])


def make_noise(variant: Union[str, NoiseVariant], level: float) -> NoiseModel:
    return NoiseModel(NoiseVariant(variant), float(level))
