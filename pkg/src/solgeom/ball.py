"""Translation spheres and balls centred at the origin."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .core import CurveParams, SolPoint, curve_point, curve_points
from .errors import ConvergenceError, DegenerateInputError
from .mesh import Mesh

CONVEX_RADIUS_LIMIT = math.pi / 2


@dataclass(frozen=True)
class BallSpec:
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"ball radius must be positive, got {self.radius}")

    @property
    def volume(self) -> float:
        return ball_volume(self.radius)

    @property
    def convex(self) -> bool:
        return is_convex_radius(self.radius)


def sphere_point(r: float, phi: float, theta: float) -> SolPoint:
    return curve_point(CurveParams(phi, theta, r))


def _volume_integrand(theta: float, rho: float) -> float:
    # cos(theta)/sin^2(theta) * (cosh(rho sin theta) - 1), rewritten with
    # cosh(x) - 1 = 2 sinh^2(x/2) so the theta -> 0 limit rho^2/2 is exact.
    h = 0.5 * rho * math.sin(theta)
    if h == 0.0:
        return 0.5 * rho * rho * math.cos(theta)
    q = math.sinh(h) / h
    return 0.5 * rho * rho * math.cos(theta) * q * q


def ball_volume(r: float, tol: float = 1e-9) -> float:
    """Volume of the translation ball of radius ``r`` by nested adaptive quadrature.

    The integrand is even in theta, so only the upper half is integrated.
    Raises ConvergenceError if either quadrature level reports trouble.
    """
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    # total = 8 pi * int_0^r int_0^{pi/2}; split the budget between levels
    outer_tol = tol / (16 * math.pi)
    inner_tol = outer_tol / r

    def inner(rho: float) -> float:
        return integrate.quad(_volume_integrand, 0.0, math.pi / 2, args=(rho,),
                              epsabs=inner_tol, epsrel=0.0, limit=200)[0]

    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val = integrate.quad(inner, 0.0, r, epsabs=outer_tol, epsrel=0.0, limit=200)[0]
        except integrate.IntegrationWarning as exc:
            raise ConvergenceError(f"ball volume quadrature failed for r={r}: {exc}") from exc
    return 8.0 * math.pi * val


def is_convex_radius(r: float) -> bool:
    """Translation balls are Euclidean-convex for radii in (0, pi/2]."""
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    return r <= CONVEX_RADIUS_LIMIT


def plane_section_semiaxes(r: float, theta: float) -> tuple[float, float]:
    """Semi-axes (k1, k2) of the ellipse cut from the sphere at altitude ``theta``.

    The section lies in the plane z = r sin(theta).
    """
    if theta == 0.0:
        raise DegenerateInputError("equatorial section is the circle of radius r")
    if abs(theta) > math.pi / 2:
        raise ValueError(f"theta must lie in [-pi/2, pi/2], got {theta}")
    s = r * math.sin(theta)
    cot = math.cos(theta) / math.sin(theta)
    return abs(cot * math.expm1(-s)), abs(cot * math.expm1(s))


def sphere_mesh(r: float, n_phi: int = 48, n_theta: int = 24) -> Mesh:
    """Triangulated translation sphere from a (phi, theta) grid with single pole vertices."""
    if n_phi < 3 or n_theta < 2:
        raise ValueError("need n_phi >= 3 and n_theta >= 2")
    phis = -math.pi + 2 * math.pi * (np.arange(n_phi) + 1) / n_phi
    thetas = -math.pi / 2 + math.pi * np.arange(1, n_theta) / n_theta
    ring = curve_points(phis[None, :], thetas[:, None], r).reshape(-1, 3)
    south = curve_points(0.0, -math.pi / 2, r)[None, :]
    north = curve_points(0.0, math.pi / 2, r)[None, :]
    verts = np.vstack([south, ring, north])
    n_rings = n_theta - 1
    s_idx, n_idx = 0, len(verts) - 1

    def vid(i, j):
        return 1 + i * n_phi + (j % n_phi)

    faces = []
    for j in range(n_phi):
        faces.append((s_idx, vid(0, j + 1), vid(0, j)))
        faces.append((n_idx, vid(n_rings - 1, j), vid(n_rings - 1, j + 1)))
    for i in range(n_rings - 1):
        for j in range(n_phi):
            a, b = vid(i, j), vid(i, j + 1)
            c, d = vid(i + 1, j + 1), vid(i + 1, j)
            faces.append((a, b, c))
            faces.append((a, c, d))
    return Mesh(verts, np.asarray(faces, dtype=np.int64))
