"""Run traces and the recorder that streams them to listeners."""

import time
import traceback
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from ..log_util import warn


class RunStatus(Enum):
    """How a run ended."""
    COMPLETED = "completed"
    TARGET_REACHED = "target_reached"
    DIVERGED = "diverged"


@dataclass(frozen=True)
class TraceRecord:
    iteration: int
    oracle_calls: int
    f_gap: float
    wall_ms: float
    seed: int
    z_minus_y: Optional[float] = None
    z_minus_xstar: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class RunTrace:
    """Recorded history of one run.

    Args:
        records: Records in iteration order
        metadata: Echo of the resolved configuration
        status: How the run ended
        final_x: Last iterate x_N
    """

    records: List[TraceRecord] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)
    status: RunStatus = RunStatus.COMPLETED
    final_x: Optional[np.ndarray] = None

    @property
    def final_gap(self) -> float:
        return self.records[-1].f_gap if self.records else float("nan")

    @property
    def iterations(self) -> List[int]:
        return [r.iteration for r in self.records]

    @property
    def gaps(self) -> np.ndarray:
        return np.array([r.f_gap for r in self.records])

    def iterations_to(self, gap: float) -> Optional[int]:
        """First recorded iteration whose f-gap is <= ``gap``; None if never reached."""
        for record in self.records:
            if record.f_gap <= gap:
                return record.iteration
        return None


class TraceRecorder:
    """Collects records at a stride and forwards each one to subscribers."""

    def __init__(self, seed: int, record_every: int = 1, metadata: Optional[Dict[str, Any]] = None):
        self.seed = seed
        self.record_every = max(1, int(record_every))
        self.trace = RunTrace(metadata=dict(metadata or {}))
        self._subscribers: List[Callable[[TraceRecord], None]] = []
        self._start = time.perf_counter()

    def subscribe(self, callback: Callable[[TraceRecord], None]) -> None:
        """Subscribe to new records.

        Args:
            callback: Function taking the new TraceRecord
        """
        if callback not in self._subscribers:
            self._subscribers.append(callback)

    def unsubscribe(self, callback: Callable[[TraceRecord], None]) -> None:
        if callback in self._subscribers:
            self._subscribers.remove(callback)

    def _notify_subscribers(self, record: TraceRecord) -> None:
        for callback in self._subscribers:
            try:
                callback(record)
            except Exception as e:
                # one listener failing must not stop the run
                warn(f"trace subscriber error: {e}\n{traceback.format_exc()}")

    def due(self, k: int) -> bool:
        return k % self.record_every == 0

    def record(
        self,
        k: int,
        oracle_calls: int,
        f_gap: float,
        z_minus_y: Optional[float] = None,
        z_minus_xstar: Optional[float] = None,
    ) -> TraceRecord:
        if self.trace.records and self.trace.records[-1].iteration == k:
            return self.trace.records[-1]
        record = TraceRecord(
            iteration=k,
            oracle_calls=oracle_calls,
            f_gap=float(f_gap),
            wall_ms=(time.perf_counter() - self._start) * 1000.0,
            seed=self.seed,
            z_minus_y=z_minus_y,
            z_minus_xstar=z_minus_xstar,
        )
        self.trace.records.append(record)
        self._notify_subscribers(record)
        return record

    def finish(self, status: RunStatus, final_x: Optional[np.ndarray]) -> RunTrace:
        self.trace.status = status
        self.trace.final_x = None if final_x is None else np.array(final_x, copy=True)
        self.trace.metadata["status"] = status.value
        return self.trace
