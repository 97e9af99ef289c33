"""LIBSVM text format: ``<label> <idx>:<val> <idx>:<val> ...`` with 1-based indices."""

import os
from dataclasses import dataclass
from typing import IO, Iterable, List, Optional, Tuple, Union

import numpy as np
from scipy import sparse

from ..errors import ParseError
from ..log_util import log

PROGRESS_EVERY: int = 2000

# Summary shapes (M, d) of the benchmark datasets
KNOWN_DATASETS = {
    "phishing": (11055, 68),
    "diabetes": (768, 8),
    "heart": (270, 13),
}


@dataclass(frozen=True)
class DatasetMeta:
    name: str
    M: int
    d: int
    source: Optional[str] = None


def _number(token: str, line_number: int, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"non-numeric {what} {token!r}", line_number) from None
    if not np.isfinite(value):
        raise ParseError(f"non-finite {what} {token!r}", line_number)
    return value


def parse_libsvm(
    lines: Union[IO[str], Iterable[str]],
    name: str = "<stream>",
    source: Optional[str] = None,
    n_features: Optional[int] = None,
) -> Tuple[sparse.csr_matrix, np.ndarray, DatasetMeta]:
    """Parse LIBSVM records into a CSR matrix and {-1, +1} labels.

    Blank lines are skipped. Exactly two distinct label values are required.
    Labels already in {-1, +1} are kept; otherwise the smaller maps to -1 and
    the larger to +1.

    Args:
        lines: Text stream or iterable of lines
        name: Dataset name for the metadata
        source: Path the lines came from
        n_features: Pad the column count to at least this many features

    Raises:
        ParseError carrying the 1-based line number
    """
    indptr: List[int] = [0]
    indices: List[int] = []
    data: List[float] = []
    raw_labels: List[float] = []
    distinct: List[float] = []
    d = 0

    for line_number, line in enumerate(lines, start=1):
        tokens = line.split()
        if not tokens:
            continue
        label = _number(tokens[0], line_number, "label")
        if label not in distinct:
            distinct.append(label)
            if len(distinct) > 2:
                raise ParseError(f"more than two distinct labels: {sorted(distinct)}", line_number)
        raw_labels.append(label)

        last = 0
        for token in tokens[1:]:
            idx_text, sep, val_text = token.partition(":")
            if not sep:
                raise ParseError(f"malformed feature {token!r}, expected idx:val", line_number)
            try:
                idx = int(idx_text)
            except ValueError:
                raise ParseError(f"non-numeric index {idx_text!r}", line_number) from None
            if idx < 1:
                raise ParseError(f"feature indices are 1-based, got {idx}", line_number)
            if idx <= last:
                raise ParseError(f"indices must be strictly increasing, {idx} after {last}", line_number)
            last = idx
            indices.append(idx - 1)
            data.append(_number(val_text, line_number, "value"))
        d = max(d, last)
        indptr.append(len(indices))

        M = len(raw_labels)
        if M % PROGRESS_EVERY == 0:
            log(f"--- read {M} points from {name}")

    M = len(raw_labels)
    if M == 0:
        raise ParseError(f"{name} holds no records")
    if n_features is not None:
        d = max(d, int(n_features))
    labels = np.array(raw_labels, dtype=float)
    if len(distinct) != 2:
        raise ParseError(f"need two distinct labels, found {sorted(distinct)}")
    if not set(distinct) <= {-1.0, 1.0}:
        labels = np.where(labels == min(distinct), -1.0, 1.0)

    X = sparse.csr_matrix(
        (np.array(data, dtype=float), np.array(indices, dtype=np.int64), np.array(indptr, dtype=np.int64)),
        shape=(M, d),
    )
    log(f"Finished {name}: {M} points, {d} features, {int((labels > 0).sum())} positive")
    return X, labels, DatasetMeta(name=name, M=M, d=d, source=source)


def load_libsvm(path: str, n_features: Optional[int] = None) -> Tuple[sparse.csr_matrix, np.ndarray, DatasetMeta]:
    with open(path, "r", encoding="utf-8") as f:
        return parse_libsvm(f, name=os.path.basename(path), source=os.path.abspath(path), n_features=n_features)


def _format_number(value: float) -> str:
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def serialize_libsvm(matrix: sparse.spmatrix, labels: np.ndarray) -> str:
    """Inverse of ``parse_libsvm`` for the stored entries of ``matrix``."""
    X = sparse.csr_matrix(matrix)
    X.sort_indices()
    out = []
    for i, label in enumerate(np.asarray(labels, dtype=float)):
        lo, hi = X.indptr[i], X.indptr[i + 1]
        features = [f"{j + 1}:{_format_number(v)}" for j, v in zip(X.indices[lo:hi], X.data[lo:hi])]
        head = f"{'+' if label > 0 else ''}{_format_number(label)}"
        out.append(" ".join([head] + features))
    return "\n".join(out) + "\n"
