"""Translation-like bisector (equidistant) surfaces of two points."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import SolPoint, _pt, relative_coordinates, translation_distance, translation_distances
from .errors import DegenerateInputError
from .mesh import Mesh, extract_isosurface

BRANCH_EPS = 1e-12


@dataclass(frozen=True)
class BisectorSpec:
    p1: SolPoint
    p2: SolPoint

    def __post_init__(self):
        object.__setattr__(self, "p1", _pt(self.p1))
        object.__setattr__(self, "p2", _pt(self.p2))
        if self.p1 == self.p2:
            raise DegenerateInputError("bisector of a point with itself")

    @property
    def offset(self) -> SolPoint:
        """Coordinates (a, b, c) of p2 once p1 is moved to the origin."""
        return relative_coordinates(self.p1, self.p2)


def bisector_residual_generic(spec: BisectorSpec, x) -> float:
    """d(p1, x) - d(p2, x); negative on the p1 side."""
    return translation_distance(spec.p1, x) - translation_distance(spec.p2, x)


def bisector_residuals(spec: BisectorSpec, xs) -> np.ndarray:
    """Vectorised ``bisector_residual_generic`` over an (n, 3) array."""
    xs = np.asarray(xs, dtype=float)
    p1 = np.asarray(spec.p1, dtype=float)
    p2 = np.asarray(spec.p2, dtype=float)
    return translation_distances(p1, xs) - translation_distances(p2, xs)


def _factor(z: float) -> float:
    return abs(z) / abs(math.expm1(z))


def bisector_residual_closed(spec: BisectorSpec, x) -> float:
    """Branch-wise implicit equation of the bisector, with p1 moved to the origin.

    Each branch is oriented so that its sign agrees with
    ``bisector_residual_generic``: the side equal to d(p1, x) comes first.
    """
    a, b, c = spec.offset
    x, y, z = relative_coordinates(spec.p1, x)
    if c != 0.0:
        if abs(z) < BRANCH_EPS:
            near = math.hypot(x, y)
            far = _factor(c) * math.sqrt((a - x) ** 2 * math.exp(2 * c) + math.expm1(c) ** 2 + (b - y) ** 2)
            return near - far
        near = _factor(z) * math.sqrt(x * x * math.exp(2 * z) + math.expm1(z) ** 2 + y * y)
        if abs(z - c) < BRANCH_EPS:
            far = math.sqrt((x - a) ** 2 * math.exp(2 * c) + (y - b) ** 2 * math.exp(-2 * c))
            return near - far
        dz = math.exp(c) - math.exp(z)
        far = abs(c - z) / abs(dz) * math.sqrt((a - x) ** 2 * math.exp(2 * (c + z)) + dz * dz + (b - y) ** 2)
        return near - far
    if abs(z) < BRANCH_EPS:
        return x * a + y * b - (a * a + b * b) / 2
    return -(math.exp(2 * z) * a * (a - 2 * x) + b * (b - 2 * y))


def sample_bisector_mesh(spec: BisectorSpec, lo, hi, resolution=32) -> Mesh:
    """Triangle mesh of the bisector surface inside the box [lo, hi].

    Returns an empty mesh when the surface misses the box.
    """
    return extract_isosurface(lambda pts: bisector_residuals(spec, pts), lo, hi, resolution)
