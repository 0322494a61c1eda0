"""Lattice-like coverings of Sol space by congruent translation balls.

The covering radius of a fundamental lattice is bounded by the largest
circumradius among the six tetrahedra of its fundamental parallelepiped;
the density is the ball volume over the cell volume.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np

from . import ball
from .circumsphere import circumradius_batch
from .core import translation_distances
from .errors import ConvergenceError
from .lattice import FundamentalLattice, make_lattice, orbit_array, parallelepiped, tetra_decomposition, volume
from .search import coordinate_descent, evaluate_map, grid_values

log = logging.getLogger(__name__)


class NonConvexCoverWarning(UserWarning):
    """Covering radius exceeds the Euclidean-convexity limit pi/2."""


@dataclass(frozen=True)
class CoverReport:
    t11: float
    t12: float
    n: int
    radius: float
    cell_volume: float
    ball_volume: float
    density: float
    convex: bool
    per_tetra_radii: tuple[float, ...]

    def row(self) -> dict:
        d = asdict(self)
        d.pop("per_tetra_radii")
        return d


def covering_radius(lat: FundamentalLattice) -> tuple[float, tuple[float, ...]]:
    spheres = circumradius_batch(tetra_decomposition(parallelepiped(lat)))
    radii = tuple(s.radius for s in spheres)
    return max(radii), radii


def covering_density(lat: FundamentalLattice, tol: float = 1e-9) -> CoverReport:
    radius, radii = covering_radius(lat)
    convex = ball.is_convex_radius(radius)
    if not convex:
        warnings.warn(
            f"covering radius {radius:.6g} of lattice ({lat.t11}, {lat.t12}, {lat.n}) exceeds pi/2; "
            "balls are not Euclidean-convex and the covering is not guaranteed",
            NonConvexCoverWarning,
            stacklevel=2,
        )
    bvol = ball.ball_volume(radius, tol)
    cvol = volume(lat)
    return CoverReport(lat.t11, lat.t12, lat.n, radius, cvol, bvol, bvol / cvol, convex, radii)


# -- Monte-Carlo coverage oracle ---------------------------------------------

@dataclass
class CoverageResult:
    fraction: float
    samples: int
    worst_distance: float  # largest nearest-lattice-point distance seen
    boundary_hits: int  # nearest point found on the edge of the truncated orbit


def _inside_any(points: np.ndarray, tets: np.ndarray, eps: float = 1e-12) -> np.ndarray:
    inside = np.zeros(len(points), dtype=bool)
    for v in tets:
        m = (v[1:] - v[0]).T
        bary = np.linalg.solve(m, (points - v[0]).T).T
        inside |= (bary >= -eps).all(axis=1) & (bary.sum(axis=1) <= 1 + eps)
    return inside


def sample_cell(lat: FundamentalLattice, samples: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform samples from the union of the six straight tetrahedra, by rejection."""
    tets = np.array([t.array() for t in tetra_decomposition(parallelepiped(lat))])
    flat = tets.reshape(-1, 3)
    lo, hi = flat.min(axis=0), flat.max(axis=0)
    out = []
    have = 0
    while have < samples:
        cand = rng.uniform(lo, hi, size=(max(2 * (samples - have), 256), 3))
        cand = cand[_inside_any(cand, tets)]
        out.append(cand)
        have += len(cand)
    return np.concatenate(out)[:samples]


def coverage_details(
    lat: FundamentalLattice,
    radius: float,
    samples: int = 10_000,
    orbit_radius: int = 2,
    seed: int = 0,
    cell_only: bool = False,
    chunk: int = 4096,
) -> CoverageResult:
    """Monte-Carlo coverage of the cell by balls of ``radius`` at lattice points.

    With ``cell_only`` the balls sit only at the eight cell vertices
    (tau1^i tau2^j tau3^k, i, j, k in {0, 1}) instead of the whole truncated
    orbit; that is the arrangement the circumradius bound is built for.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    pts = sample_cell(lat, samples, rng)
    centres, words = orbit_array(lat, orbit_radius)
    if cell_only:
        keep = ((words == 0) | (words == 1)).all(axis=1)
        centres, words = centres[keep], words[keep]
    nearest = np.empty(len(pts))
    argmin = np.empty(len(pts), dtype=np.int64)
    for s in range(0, len(pts), chunk):
        d = translation_distances(centres[None, :, :], pts[s:s + chunk, None, :])
        nearest[s:s + chunk] = d.min(axis=1)
        argmin[s:s + chunk] = d.argmin(axis=1)
    covered = nearest <= radius * (1 + 1e-6)
    boundary = int((np.abs(words[argmin]).max(axis=1) == orbit_radius).sum())
    return CoverageResult(float(covered.mean()), len(pts), float(nearest.max()), boundary)


def verify_coverage(
    lat: FundamentalLattice,
    radius: float,
    samples: int = 10_000,
    orbit_radius: int = 2,
    seed: int = 0,
    cell_only: bool = False,
) -> float:
    """Fraction of sampled cell points within ``radius`` of some lattice point."""
    return coverage_details(lat, radius, samples, orbit_radius, seed, cell_only).fraction


# -- parameter search ---------------------------------------------------------

@dataclass
class CoverSearchResult:
    best: CoverReport
    grid_best: CoverReport
    grid: list[CoverReport] = field(default_factory=list)
    trace: list[tuple[tuple[float, float, int], float]] = field(default_factory=list)
    failures: list[tuple[float, float, int]] = field(default_factory=list)


def _try_density(params: tuple[float, float, int]) -> CoverReport | None:
    t11, t12, n = params
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NonConvexCoverWarning)
            return covering_density(make_lattice(t11, t12, n))
    except ConvergenceError as exc:
        log.warning("lattice (%g, %g, %d) skipped: %s", t11, t12, n, exc)
        return None


def search_min_density(
    t11_range: tuple[float, float, float] = (0.4, 1.0, 0.01),
    t12_range: tuple[float, float, float] = (0.1, 0.3, 0.01),
    ns=(3, 4, 5),
    floor: float = 1e-4,
    jobs: int = 1,
) -> CoverSearchResult:
    """Grid search for the thinnest covering, then coordinate descent in (t11, t12).

    Each range is (min, max, step).  N stays fixed at the grid winner's value
    during refinement.
    """
    params = [(float(a), float(b), int(n))
              for n in ns for a in grid_values(*t11_range) for b in grid_values(*t12_range)]
    if not params:
        raise ValueError("empty search grid")
    reports = evaluate_map(_try_density, params, jobs)
    grid = [r for r in reports if r is not None]
    failures = [p for p, r in zip(params, reports) if r is None]
    if not grid:
        raise ConvergenceError("no grid lattice could be evaluated")
    grid_best = min(grid, key=lambda r: r.density)
    n = grid_best.n
    cache: dict[tuple[float, float], CoverReport | None] = {}

    def objective(v) -> float:
        key = (round(float(v[0]), 12), round(float(v[1]), 12))
        if key not in cache:
            cache[key] = _try_density((key[0], key[1], n))
        rep = cache[key]
        return math.inf if rep is None else rep.density

    x, _, trace = coordinate_descent(
        objective, (grid_best.t11, grid_best.t12), (t11_range[2], t12_range[2]),
        floor=floor, lower=(0.0, 0.0),
    )
    best = cache[(round(float(x[0]), 12), round(float(x[1]), 12))]
    return CoverSearchResult(
        best=best,
        grid_best=grid_best,
        grid=grid,
        trace=[((p[0], p[1], n), d) for p, d in trace],
        failures=failures,
    )
