"""Environment-driven runtime settings and the shared worker pool helper."""

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from .errors import ConfigError

T = TypeVar("T")
R = TypeVar("R")


def worker_count(requested: Optional[int] = None) -> int:
    """Resolve the number of workers.

    Args:
        requested: Explicit count; ``None`` reads ``ZO_THREADS`` (0 or unset = auto)

    Returns:
        A positive worker count
    """
    if requested is None:
        raw = os.environ.get("ZO_THREADS", "0").strip() or "0"
        try:
            requested = int(raw)
        except ValueError as e:
            raise ConfigError(f"ZO_THREADS must be an integer, got {raw!r}") from e
    if requested < 0:
        raise ConfigError(f"worker count must be >= 0, got {requested}")
    if requested == 0:
        return os.cpu_count() or 1
    return requested


def data_dir() -> Optional[str]:
    return os.environ.get("ZO_DATA_DIR") or None


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None) -> List[R]:
    """Apply ``fn`` to every item, possibly concurrently, returning results in input order."""
    items = list(items)
    n_workers = min(worker_count(workers), max(1, len(items)))
    if n_workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        return list(pool.map(fn, items))
