"""Lattice-like packings and coverings by translation cylinders.

Cylinders over base-plane circles meet the base plane in Euclidean circles,
and the base sublattice spanned by tau1, tau2 is an ordinary plane lattice,
so both problems reduce to circle packings and coverings of the base
parallelogram O, P, Q, P'.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Literal, NamedTuple, Sequence

import numpy as np

from .errors import DegenerateInputError
from .lattice import FundamentalLattice, make_lattice, volume
from .search import coordinate_descent, grid_values

Mode = Literal["packing", "covering"]

# best plane lattice circle packing / covering densities
HEX_PACKING_DENSITY = math.pi / math.sqrt(12)
HEX_COVERING_DENSITY = 2 * math.pi / math.sqrt(27)
BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class CylinderSpec:
    radius: float
    height: float

    def __post_init__(self):
        if not (self.radius > 0 and self.height > 0):
            raise ValueError("cylinder radius and height must be positive")


def cylinder_volume(c: CylinderSpec) -> float:
    return c.height * c.radius**2 * math.pi


class BaseParallelogram(NamedTuple):
    o: np.ndarray
    p: np.ndarray
    p_prime: np.ndarray
    q: np.ndarray

    @property
    def area(self) -> float:
        return abs(_cross(self.p, self.p_prime))

    @property
    def heights(self) -> tuple[float, float]:
        """Distances between opposite sides: area/|OP| and area/|OP'|."""
        a = self.area
        return a / np.linalg.norm(self.p), a / np.linalg.norm(self.p_prime)


def _cross(u, v) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


def base_parallelogram(lat: FundamentalLattice) -> BaseParallelogram:
    p = np.array([lat.t11, lat.t12])
    pp = np.array([lat.t21, lat.t22])
    return BaseParallelogram(np.zeros(2), p, pp, p + pp)


def euclidean_circumradius(a, b, c) -> float:
    a, b, c = (np.asarray(v, dtype=float) for v in (a, b, c))
    twice_area = abs(_cross(b - a, c - a))
    ab, bc, ca = np.linalg.norm(b - a), np.linalg.norm(c - b), np.linalg.norm(a - c)
    if twice_area <= 1e-15 * max(ab, bc, ca) ** 2:
        raise DegenerateInputError("collinear triangle has no circumcircle")
    return float(ab * bc * ca / (2.0 * twice_area))


def packing_radius(bp: BaseParallelogram) -> float:
    """Half the shortest of the two sides and two diagonals, capped by the smaller height."""
    n = np.linalg.norm
    r = 0.5 * min(n(bp.p), n(bp.p_prime), n(bp.q), n(bp.p - bp.p_prime))
    return float(min(r, *bp.heights))


def covering_radius_cyl(bp: BaseParallelogram) -> float:
    """Smallest circumradius that covers the parallelogram through one of its diagonals."""
    o, p, pp, q = bp
    split_oq = max(euclidean_circumradius(o, p, q), euclidean_circumradius(o, q, pp))
    split_ppp = max(euclidean_circumradius(o, p, pp), euclidean_circumradius(p, pp, q))
    r = min(split_oq, split_ppp)
    # halves of a parallelogram are congruent
    shortcut = min(euclidean_circumradius(o, p, q), euclidean_circumradius(o, p, pp))
    assert math.isclose(r, shortcut, rel_tol=1e-9), (r, shortcut)
    return r


@dataclass(frozen=True)
class DensityReport:
    t11: float
    t12: float
    n: int
    mode: str
    radius: float
    height: float
    base_area: float
    cell_volume: float
    cylinder_volume: float
    density: float

    def row(self) -> dict:
        return asdict(self)


def _report(lat: FundamentalLattice, mode: Mode, radius: float) -> DensityReport:
    bp = base_parallelogram(lat)
    h = lat.t33
    cvol = cylinder_volume(CylinderSpec(radius, h))
    cell = volume(lat)
    area_ratio = math.pi * radius**2 / bp.area
    assert math.isclose(cvol / cell, area_ratio, rel_tol=1e-12), (cvol / cell, area_ratio)
    return DensityReport(lat.t11, lat.t12, lat.n, mode, radius, h, bp.area, cell, cvol, area_ratio)


def packing_density(lat: FundamentalLattice) -> DensityReport:
    return _report(lat, "packing", packing_radius(base_parallelogram(lat)))


def covering_density_cyl(lat: FundamentalLattice) -> DensityReport:
    return _report(lat, "covering", covering_radius_cyl(base_parallelogram(lat)))


def check_bounds(report: DensityReport) -> bool:
    """Densities cannot beat the hexagonal plane lattice."""
    if report.mode == "packing":
        return report.density <= HEX_PACKING_DENSITY + BOUND_SLACK
    if report.mode == "covering":
        return report.density >= HEX_COVERING_DENSITY - BOUND_SLACK
    raise ValueError(f"unknown mode {report.mode!r}")


def density(lat: FundamentalLattice, mode: Mode) -> DensityReport:
    if mode == "packing":
        return packing_density(lat)
    if mode == "covering":
        return covering_density_cyl(lat)
    raise ValueError(f"mode must be 'packing' or 'covering', got {mode!r}")


@dataclass
class CylinderSearchResult:
    mode: str
    best: DensityReport
    grid_best: DensityReport
    per_n: dict[int, DensityReport] = field(default_factory=dict)
    grid: list[DensityReport] = field(default_factory=list)
    trace: list[tuple[tuple[float, float, int], float]] = field(default_factory=list)


def search_cylinder_optima(
    mode: Mode,
    t12_range: tuple[float, float, float] = (0.001, 3.0, 0.001),
    ns: Sequence[int] = (3,),
    t11: float = 1.0,
    floor: float = 1e-4,
) -> CylinderSearchResult:
    """Optimise the cylinder density over t12 with t11 fixed.

    Densities depend only on the ratio t12/t11, so fixing t11 loses nothing.
    Packing maximises, covering minimises.  Each N is refined separately and
    the best refined value over all N is returned.
    """
    sign = -1.0 if mode == "packing" else 1.0
    values = grid_values(*t12_range)
    grid = [density(make_lattice(t11, float(b), n), mode) for n in ns for b in values if b > 0]
    if not grid:
        raise ValueError("empty search grid")
    grid_best = min(grid, key=lambda r: sign * r.density)
    per_n: dict[int, DensityReport] = {}
    traces: dict[int, list] = {}
    for n in ns:
        start = min((r for r in grid if r.n == n), key=lambda r: sign * r.density)
        x, _, trace = coordinate_descent(
            lambda v: sign * density(make_lattice(t11, float(v[0]), n), mode).density,
            (start.t12,), (t12_range[2],), floor=floor, lower=(0.0,),
        )
        per_n[n] = density(make_lattice(t11, float(x[0]), n), mode)
        traces[n] = [((t11, p[0], n), sign * f) for p, f in trace]
    best_n = min(per_n, key=lambda k: sign * per_n[k].density)
    return CylinderSearchResult(mode, per_n[best_n], grid_best, per_n, grid, traces[best_n])
