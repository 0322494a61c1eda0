"""Grid evaluation and coordinate-descent refinement shared by the density searches."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence

import numpy as np


def grid_values(lo: float, hi: float, step: float) -> np.ndarray:
    """Inclusive arithmetic grid lo, lo+step, ..., hi (hi kept when it lands on the grid)."""
    if not step > 0:
        raise ValueError(f"grid step must be positive, got {step}")
    if hi < lo:
        raise ValueError(f"empty grid: [{lo}, {hi}]")
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    # rounding keeps 0.79 from showing up as 0.7900000000000001
    return np.round(lo + step * np.arange(count), 12)


def evaluate_map(fn: Callable, items: Iterable, jobs: int = 1) -> list:
    """map(fn, items) in input order, optionally across processes."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def coordinate_descent(
    objective: Callable[[Sequence[float]], float],
    x0: Sequence[float],
    steps: Sequence[float],
    shrink: float = 0.5,
    floor: float = 1e-4,
    lower: Sequence[float] | None = None,
    max_rounds: int = 10_000,
) -> tuple[np.ndarray, float, list[tuple[tuple[float, ...], float]]]:
    """Minimise ``objective`` by axis moves of +-step, shrinking steps when stuck.

    Stops once every step is below ``floor``.  Returns the best point, its
    value and the trace of accepted points (starting with x0).  The value
    never increases along the trace.
    """
    x = np.array(x0, dtype=float)
    steps = np.array(steps, dtype=float)
    fx = objective(x)
    trace = [(tuple(x), fx)]
    for _ in range(max_rounds):
        if np.all(steps < floor):
            break
        improved = False
        for k in range(len(x)):
            for sign in (1.0, -1.0):
                cand = x.copy()
                cand[k] += sign * steps[k]
                if lower is not None and cand[k] <= lower[k]:
                    continue
                fc = objective(cand)
                if fc < fx:
                    x, fx = cand, fc
                    trace.append((tuple(x), fx))
                    improved = True
                    break
        if not improved:
            steps *= shrink
    return x, fx, trace
