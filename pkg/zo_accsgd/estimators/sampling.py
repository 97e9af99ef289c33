from typing import Tuple

import numpy as np

from ..core.rng import RngLike, as_generator
from ..errors import UsageError


def _unit_rows(gen: np.random.Generator, n: int, d: int) -> np.ndarray:
    g = gen.standard_normal((n, d))
    norms = np.linalg.norm(g, axis=1)
    # a zero row has probability zero; redraw rather than divide by it
    while np.any(norms == 0.0):
        bad = norms == 0.0
        g[bad] = gen.standard_normal((int(bad.sum()), d))
        norms = np.linalg.norm(g, axis=1)
    return g / norms[:, None]


def sample_sphere(d: int, rng: RngLike) -> np.ndarray:
    """Uniform draw from the Euclidean unit sphere in R^d (normalized Gaussian)."""
    if d < 1:
        raise UsageError(f"dimension must be >= 1, got {d}")
    return _unit_rows(as_generator(rng), 1, d)[0]


def sample_probes(gen: np.random.Generator, n: int, d: int, with_radius: bool = True) -> Tuple[np.ndarray, np.ndarray]:
    """Draw ``n`` probe directions on the sphere and radii uniform on [-1, 1].

    Directions are drawn first, then radii, always in sample-index order.
    """
    directions = _unit_rows(gen, n, d)
    radii = gen.uniform(-1.0, 1.0, size=n) if with_radius else np.ones(n)
    return directions, radii
