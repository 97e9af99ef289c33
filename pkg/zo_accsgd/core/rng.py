"""Counter-based splittable random streams.

A stream is the triple (seed, stream_id, counter). Its output is produced by a
Philox 4x64 generator keyed by (seed, stream_id) and started at ``counter``, so
the sequence is a pure function of the triple and never depends on which thread
or in which order streams are consumed.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np

from ..errors import UsageError

MASK64 = (1 << 64) - 1


def _splitmix64(value: int) -> int:
    z = (value + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class RngStream:
    """Immutable handle on one random stream.

    Args:
        seed: 64-bit run seed
        stream_id: 64-bit stream identifier
        counter: Philox block counter the stream starts from
    """

    seed: int
    stream_id: int = 0
    counter: int = 0

    def __post_init__(self) -> None:
        for name in ("seed", "stream_id", "counter"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
                raise UsageError(f"RngStream.{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value) & MASK64)

    def split(self, index: int) -> "RngStream":
        """Derive the independent child stream number ``index``."""
        if index < 0:
            raise UsageError(f"split index must be non-negative, got {index}")
        child = _splitmix64(_splitmix64(self.stream_id) ^ _splitmix64(int(index) + 1))
        return RngStream(self.seed, child, 0)

    def advance(self, blocks: int) -> "RngStream":
        return RngStream(self.seed, self.stream_id, self.counter + int(blocks))

    def generator(self) -> np.random.Generator:
        """A fresh numpy generator positioned at the start of this stream."""
        key = (self.seed << 64) | self.stream_id
        return np.random.Generator(np.random.Philox(key=key, counter=self.counter))


RngLike = Union[RngStream, np.random.Generator]


def as_generator(rng: RngLike) -> np.random.Generator:
    """Accept either a stream handle or an already-open generator."""
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise UsageError(f"expected RngStream or numpy Generator, got {type(rng).__name__}")
