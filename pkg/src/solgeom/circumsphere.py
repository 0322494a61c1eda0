"""Circumscribed translation spheres of tetrahedra."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .core import SolPoint, _pt, translation_distance
from .errors import ConvergenceError, DegenerateInputError

MIN_VOLUME = 1e-12
FD_STEP = 1e-7
F_TOL = 1e-12
MAX_ITER = 200
RESIDUAL_TOL = 1e-8
# a seed is abandoned after this many iterations without halving |F|
STALL_WINDOW = 15


class Tetrahedron(NamedTuple):
    a1: SolPoint
    a2: SolPoint
    a3: SolPoint
    a4: SolPoint

    @classmethod
    def of(cls, *points) -> "Tetrahedron":
        if len(points) == 1:
            points = tuple(points[0])
        if len(points) != 4:
            raise ValueError("a tetrahedron needs exactly four vertices")
        return cls(*(_pt(p) for p in points))

    def array(self) -> np.ndarray:
        return np.array(self, dtype=float)

    def euclidean_volume(self) -> float:
        v = self.array()
        return abs(np.linalg.det(v[1:] - v[0])) / 6.0

    def diameter(self) -> float:
        v = self.array()
        return max(np.linalg.norm(p - q) for p, q in itertools.combinations(v, 2))


@dataclass(frozen=True)
class CircumSphere:
    center: SolPoint
    radius: float
    residual: float  # max_{i<j} |d(A_i, C) - d(A_j, C)|


def euclidean_circumcenter(t: Tetrahedron) -> np.ndarray:
    """Circumcentre of the straight tetrahedron in the model coordinates."""
    v = t.array()
    lhs = 2.0 * (v[1:] - v[0])
    rhs = (v[1:] ** 2).sum(axis=1) - (v[0] ** 2).sum()
    return np.linalg.solve(lhs, rhs)


def _seeds(t: Tetrahedron) -> list[np.ndarray]:
    v = t.array()
    centroid = v.mean(axis=0)
    seeds = []
    try:
        seeds.append(euclidean_circumcenter(t))
    except np.linalg.LinAlgError:
        pass
    seeds.append(centroid)
    step = 0.1 * t.diameter() / math.sqrt(3.0)
    for signs in itertools.product((-1.0, 1.0), repeat=3):
        seeds.append(centroid + step * np.array(signs))
    return seeds


def _newton(residual, x0: np.ndarray, max_step: float = math.inf) -> tuple[np.ndarray, float]:
    """Damped Newton with a forward-difference Jacobian; returns (x, |F|_inf).

    Gives up early once the iterate drifts more than ``max_step`` from ``x0``
    or stops making progress, so a bad seed costs little.
    """
    raw = residual

    def residual(c):
        try:
            return raw(c)
        except OverflowError:
            return np.full(3, math.inf)

    x = np.array(x0, dtype=float)
    f = residual(x)
    fnorm = np.max(np.abs(f))
    history = [fnorm]
    for it in range(MAX_ITER):
        if fnorm <= F_TOL:
            break
        if it >= STALL_WINDOW and fnorm > 0.5 * history[it - STALL_WINDOW]:
            break
        if np.max(np.abs(x - x0)) > max_step:
            break
        jac = np.empty((3, 3))
        for k in range(3):
            xk = x.copy()
            xk[k] += FD_STEP
            jac[:, k] = (residual(xk) - f) / FD_STEP
        try:
            dx = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError:
            break
        lam = 1.0
        while True:
            x_new = x + lam * dx
            f_new = residual(x_new)
            n_new = np.max(np.abs(f_new))
            if not np.isfinite(n_new):  # nan from inf - inf
                n_new = math.inf
            if n_new < fnorm or lam < 1e-6:
                break
            lam *= 0.5
        if not n_new < fnorm:
            break
        x, f, fnorm = x_new, f_new, n_new
        history.append(fnorm)
    return x, fnorm


def circumcenter(t: Tetrahedron | Sequence) -> CircumSphere:
    """Solve d(A1, C) = d(A2, C) = d(A3, C) = d(A4, C) for the circumcentre C."""
    if not isinstance(t, Tetrahedron):
        t = Tetrahedron.of(t)
    vol = t.euclidean_volume()
    if not vol > MIN_VOLUME:
        raise DegenerateInputError(f"degenerate tetrahedron (Euclidean volume {vol:.3g})")

    def residual(c: np.ndarray) -> np.ndarray:
        c = SolPoint(*c)
        d1 = translation_distance(t.a1, c)
        return np.array([d1 - translation_distance(t.a2, c),
                         d1 - translation_distance(t.a3, c),
                         d1 - translation_distance(t.a4, c)])

    reach = 10.0 * max(1.0, t.diameter())
    best = None
    for seed in _seeds(t):
        x, fnorm = _newton(residual, seed, reach)
        if best is None or fnorm < best[1]:
            best = (x, fnorm)
        if fnorm <= F_TOL:
            break
    x, fnorm = best
    if not fnorm <= F_TOL:
        raise ConvergenceError(f"circumcentre solve stalled at |F|_inf = {fnorm:.3g}")
    center = SolPoint(*(float(c) for c in x))
    dists = [translation_distance(p, center) for p in t]
    return CircumSphere(center, dists[0], max(dists) - min(dists))


def circumradius_batch(ts: Sequence[Tetrahedron]) -> list[CircumSphere]:
    out = []
    for i, t in enumerate(ts):
        try:
            out.append(circumcenter(t))
        except (ConvergenceError, DegenerateInputError) as exc:
            raise type(exc)(f"tetrahedron {i}: {exc}") from exc
    return out
