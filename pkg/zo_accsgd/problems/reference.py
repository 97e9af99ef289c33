"""High-accuracy reference solutions for computing f-gaps."""

import hashlib
import json
import os
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from ..core.objective import ObjectiveFunction
from ..errors import UsageError
from ..log_util import log, warn

DEFAULT_TOL: float = 1e-10
MAX_ITER: int = 1_000_000


@dataclass(frozen=True)
class ReferenceSolution:
    x: np.ndarray
    f: float
    grad_norm: float
    iterations: int
    converged: bool

    def to_dict(self) -> dict:
        out = asdict(self)
        out["x"] = [float(v) for v in self.x]
        return out

    @classmethod
    def from_dict(cls, raw: dict) -> "ReferenceSolution":
        return cls(
            x=np.asarray(raw["x"], dtype=float),
            f=float(raw["f"]),
            grad_norm=float(raw["grad_norm"]),
            iterations=int(raw["iterations"]),
            converged=bool(raw["converged"]),
        )


def solve_reference(
    problem: ObjectiveFunction,
    tol: float = DEFAULT_TOL,
    max_iter: int = MAX_ITER,
    x0: Optional[np.ndarray] = None,
) -> ReferenceSolution:
    """Accelerated gradient descent with function-value restarts until ||grad f|| <= tol.

    The best iterate seen is returned; ``converged`` is False when the cap was
    hit (separable logistic data has no finite minimizer, for instance) or when
    a plain gradient step stops decreasing f before the tolerance is met.
    """
    if not problem.has_gradient:
        raise UsageError(f"{type(problem).__name__} has no analytic gradient")
    if problem.L is None or not problem.L > 0:
        raise UsageError("reference solver needs a positive smoothness constant L")
    step = 1.0 / problem.L
    x = np.zeros(problem.dim) if x0 is None else np.asarray(x0, dtype=float).copy()
    y = x.copy()
    t = 1.0
    fx = problem.value(x)
    best_x, best_f = x.copy(), fx
    grad_norm = float(np.linalg.norm(problem.true_gradient(x)))

    k = 0
    floored = False
    while k < max_iter and grad_norm > tol:
        k += 1
        x_next = y - step * problem.true_gradient(y)
        f_next = problem.value(x_next)
        if f_next > fx:
            if t == 1.0:
                # a plain gradient step no longer decreases f: roundoff floor
                floored = True
                break
            # restart momentum from the current point
            t = 1.0
            y = x.copy()
            continue
        t_next = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
        y = x_next + ((t - 1.0) / t_next) * (x_next - x)
        x, fx, t = x_next, f_next, t_next
        if fx < best_f:
            best_x, best_f = x.copy(), fx
        grad_norm = float(np.linalg.norm(problem.true_gradient(x)))

    converged = grad_norm <= tol
    if not converged and floored:
        warn(f"reference solver hit the round-off floor after {k} iterations with |grad| = {grad_norm:.3e}")
    elif not converged:
        warn(f"reference solver stopped at the {max_iter}-iteration cap with |grad| = {grad_norm:.3e}")
    else:
        log(f"reference solution after {k} iterations: f* = {best_f:.12e}")
    best_grad = float(np.linalg.norm(problem.true_gradient(best_x)))
    return ReferenceSolution(best_x, float(best_f), best_grad, k, converged)


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def cached_reference(path: str, problem: ObjectiveFunction, tol: float = DEFAULT_TOL) -> ReferenceSolution:
    """``solve_reference`` cached as ``<path>.reference.json``, keyed by the dataset checksum."""
    cache = path + ".reference.json"
    checksum = _sha256(path)
    if os.path.exists(cache):
        try:
            with open(cache, "r", encoding="utf-8") as f:
                raw = json.load(f)
            if raw.get("sha256") == checksum and raw.get("tol") == tol and len(raw["solution"]["x"]) == problem.dim:
                log(f"using cached reference solution {cache}")
                return ReferenceSolution.from_dict(raw["solution"])
        except (OSError, ValueError, KeyError) as e:
            warn(f"ignoring unreadable reference cache {cache}: {e}")

    solution = solve_reference(problem, tol=tol)
    try:
        with open(cache, "w", encoding="utf-8") as f:
            json.dump({"sha256": checksum, "tol": tol, "solution": solution.to_dict()}, f, indent=2)
    except OSError as e:
        warn(f"could not write reference cache {cache}: {e}")
    return solution


def attach_reference(problem: ObjectiveFunction, solution: ReferenceSolution) -> ObjectiveFunction:
    problem.f_star = solution.f
    problem.x_star = solution.x
    return problem
