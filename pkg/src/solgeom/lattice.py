"""Fundamental Sol lattices and their fundamental parallelepipeds.

A fundamental lattice is fixed by tau1 = (t11, t12, 0) and the trace N of
the integer matrix conjugate to the hyperbolic rotation.  From those::

    t33 = log((N + sqrt(N^2 - 4)) / 2)      # 2 cosh(t33) = N
    tau2 = (t11 e^-t33, t12 e^t33, 0)
    tau3 = (0, 0, t33)
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .circumsphere import Tetrahedron
from .core import ORIGIN, SolPoint, invert, multiply

PRESENTATION_TOL = 1e-10


@dataclass(frozen=True)
class FundamentalLattice:
    t11: float
    t12: float
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise ValueError(f"trace N must be an integer >= 3, got {self.n}")
        if self.t11 == 0 or self.t12 == 0:
            raise ValueError("tau1 components t11, t12 must be nonzero")
        object.__setattr__(self, "n", int(self.n))

    @property
    def t33(self) -> float:
        n = self.n
        return math.log((n + math.sqrt(n * n - 4)) / 2)

    @property
    def eigenvalue(self) -> float:
        """e^t33, the expanding eigenvalue of the hyperbolic rotation."""
        n = self.n
        return (n + math.sqrt(n * n - 4)) / 2

    @property
    def t21(self) -> float:
        return self.t11 / self.eigenvalue

    @property
    def t22(self) -> float:
        return self.t12 * self.eigenvalue

    @property
    def tau1(self) -> SolPoint:
        return SolPoint(self.t11, self.t12, 0.0)

    @property
    def tau2(self) -> SolPoint:
        return SolPoint(self.t21, self.t22, 0.0)

    @property
    def tau3(self) -> SolPoint:
        return SolPoint(0.0, 0.0, self.t33)

    @property
    def base_area(self) -> float:
        return abs(self.t11 * self.t22 - self.t12 * self.t21)

    def rotate(self, p) -> SolPoint:
        """Apply the diagonal hyperbolic rotation diag(e^-t33, e^t33) to a base-plane vector."""
        lam = self.eigenvalue
        return SolPoint(p[0] / lam, p[1] * lam, 0.0)


def make_lattice(t11: float, t12: float, n: int) -> FundamentalLattice:
    return FundamentalLattice(float(t11), float(t12), n)


class Parallelepiped(NamedTuple):
    o: SolPoint
    p: SolPoint
    p_prime: SolPoint
    q: SolPoint
    p3: SolPoint
    p_tau3: SolPoint
    p_prime_tau3: SolPoint
    q_tau3: SolPoint

    @property
    def base(self) -> tuple[SolPoint, ...]:
        return (self.o, self.p, self.p_prime, self.q)

    @property
    def top(self) -> tuple[SolPoint, ...]:
        return (self.p3, self.p_tau3, self.p_prime_tau3, self.q_tau3)


def parallelepiped(lat: FundamentalLattice) -> Parallelepiped:
    h = lat.t33
    ex, ey = math.exp(-h), math.exp(h)
    t11, t12, t21, t22 = lat.t11, lat.t12, lat.t21, lat.t22
    return Parallelepiped(
        o=ORIGIN,
        p=SolPoint(t11, t12, 0.0),
        p_prime=SolPoint(t21, t22, 0.0),
        q=SolPoint(t11 + t21, t12 + t22, 0.0),
        p3=SolPoint(0.0, 0.0, h),
        p_tau3=SolPoint(t11 * ex, t12 * ey, h),
        p_prime_tau3=SolPoint(t21 * ex, t22 * ey, h),
        q_tau3=SolPoint((t11 + t21) * ex, (t12 + t22) * ey, h),
    )


def volume(lat: FundamentalLattice) -> float:
    """Volume of the fundamental parallelepiped, |det T| * t33."""
    return abs((lat.t11 * lat.t22 - lat.t12 * lat.t21) * lat.t33)


def _close(p, q, tol=PRESENTATION_TOL) -> bool:
    return all(abs(a - b) <= tol * max(1.0, abs(a), abs(b)) for a, b in zip(p, q))


def verify_presentation(lat: FundamentalLattice) -> bool:
    """Check the defining relations of the lattice by explicit group arithmetic.

    [tau1, tau2] = 1, tau3^-1 tau_i tau3 equals the rotated tau_i, and the
    rotated tau2 is again a lattice word, tau2^N tau1^-1.
    """
    t1, t2, t3 = lat.tau1, lat.tau2, lat.tau3
    comm = multiply(multiply(multiply(invert(t1), invert(t2)), t1), t2)
    if not _close(comm, ORIGIN):
        return False
    for tau in (t1, t2):
        conj = multiply(multiply(invert(t3), tau), t3)
        if not _close(conj, lat.rotate(tau)):
            return False
    word = invert(t1)
    for _ in range(lat.n):
        word = multiply(word, t2)
    conj2 = multiply(multiply(invert(t3), t2), t3)
    return _close(conj2, word)


def tetra_decomposition(pp: Parallelepiped) -> list[Tetrahedron]:
    """The six tetrahedra used to bound the covering radius, in fixed order."""
    o, p, pp_, q, p3, pt, ppt, qt = pp
    return [
        Tetrahedron(o, p3, pt, ppt),
        Tetrahedron(o, p, pt, pp_),
        Tetrahedron(o, pp_, pt, ppt),
        Tetrahedron(qt, pt, pp_, p),
        Tetrahedron(qt, q, pp_, p),
        Tetrahedron(qt, ppt, pp_, pt),
    ]


def decomposition_volume_gap(lat: FundamentalLattice) -> tuple[float, float, float]:
    """(sum of straight tetrahedron volumes, cell volume, difference).

    The cell has bent side faces, so the two need not agree.
    """
    straight = sum(t.euclidean_volume() for t in tetra_decomposition(parallelepiped(lat)))
    cell = volume(lat)
    return straight, cell, straight - cell


def orbit_array(lat: FundamentalLattice, radius_index: int) -> tuple[np.ndarray, np.ndarray]:
    """Orbit of the origin under words tau1^i tau2^j tau3^k, |i|,|j|,|k| <= radius_index.

    Returns (points, words) with shapes (m, 3) and (m, 3).
    """
    if radius_index < 1:
        raise ValueError("radius_index must be >= 1")
    rng = range(-radius_index, radius_index + 1)
    words = np.array(list(itertools.product(rng, rng, rng)), dtype=np.int64)
    i, j, k = words[:, 0], words[:, 1], words[:, 2]
    # tau1^i tau2^j is a plain vector sum (commuting base translations);
    # right-multiplying by tau3^k scales x by e^-k t33 and y by e^k t33.
    bx = i * lat.t11 + j * lat.t21
    by = i * lat.t12 + j * lat.t22
    kz = k * lat.t33
    pts = np.stack([bx * np.exp(-kz), by * np.exp(kz), kz], axis=1)
    return pts, words


def orbit_points(lat: FundamentalLattice, radius_index: int) -> list[SolPoint]:
    pts, _ = orbit_array(lat, radius_index)
    return [SolPoint(*map(float, p)) for p in pts]


def word_point(lat: FundamentalLattice, i: int, j: int, k: int) -> SolPoint:
    """tau1^i tau2^j tau3^k evaluated by repeated group multiplication."""
    p = ORIGIN
    for gen, power in ((lat.tau1, i), (lat.tau2, j), (lat.tau3, k)):
        g = gen if power >= 0 else invert(gen)
        for _ in range(abs(power)):
            p = multiply(p, g)
    return p


def read_parameter_file(path) -> list[FundamentalLattice]:
    """Parse lattice triples ``t11 t12 N`` (whitespace or comma separated), one per line."""
    lattices = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 3:
            raise ValueError(f"{path}:{lineno}: expected 't11 t12 N', got {line!r}")
        t11, t12, n = float(parts[0]), float(parts[1]), float(parts[2])
        if n != int(n):
            raise ValueError(f"{path}:{lineno}: N must be an integer, got {parts[2]}")
        lattices.append(make_lattice(t11, t12, int(n)))
    return lattices
