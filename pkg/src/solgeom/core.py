"""Sol group law, translation curves and translation distance.

Points live in the affine model ``(1, x, y, z)``; the leading homogeneous
coordinate is implicit.  The group acts on itself by right translation::

    (a, b, c) * (x, y, z) = (x + a e^-z, y + b e^z, z + c)

so a point ``p`` is carried by the translation ``g`` to ``multiply(p, g)``.

Near the base plane ``z = 0`` every formula below is written in terms of
``expm1`` so that the planar limit is reached without cancellation.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import DegenerateInputError

# |t sin(theta)| below this switches curve_point to the planar branch
PLANAR_EPS = 1e-14


class SolPoint(NamedTuple):
    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


class CurveParams(NamedTuple):
    """Longitude ``phi``, altitude ``theta`` and arc length ``t`` of a translation curve."""

    phi: float
    theta: float
    t: float

    def direction(self) -> tuple[float, float, float]:
        """Unit initial tangent (u, v, w) at the origin."""
        c = math.cos(self.theta)
        return (c * math.cos(self.phi), c * math.sin(self.phi), math.sin(self.theta))


ORIGIN = SolPoint(0.0, 0.0, 0.0)


def _pt(p) -> SolPoint:
    if isinstance(p, SolPoint):
        return p
    x, y, z = p
    return SolPoint(float(x), float(y), float(z))


def multiply(a, b) -> SolPoint:
    """Group product ``a * b``: the image of ``a`` under the translation ``b``."""
    a, b = _pt(a), _pt(b)
    return SolPoint(b.x + a.x * math.exp(-b.z), b.y + a.y * math.exp(b.z), b.z + a.z)


def invert(p) -> SolPoint:
    p = _pt(p)
    return SolPoint(-p.x * math.exp(p.z), -p.y * math.exp(-p.z), -p.z)


def conjugate(p, by) -> SolPoint:
    """``by^-1 * p * by``.  Leaves the z-coordinate of ``p`` unchanged."""
    return multiply(multiply(invert(by), p), by)


# Stabilizer of the origin: the dihedral group D4 acting linearly on (x, y, z)
# as row vectors.  Index 1 is y -> -y, index 2 is x <-> y with z -> -z.
def _build_stabilizer() -> tuple[np.ndarray, ...]:
    g1 = np.diag([1.0, -1.0, 1.0])
    g2 = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, -1.0]])
    rot = g1 @ g2
    elems = [np.eye(3), g1, g2, rot, rot @ rot, rot @ rot @ rot, g2 @ g1 @ g2, rot @ g1]
    return tuple(elems)


STABILIZER = _build_stabilizer()
IDENTITY, REFLECT_Y, SWAP_XY_FLIP_Z = 0, 1, 2


def stabilizer_matrix(g: int) -> np.ndarray:
    if not 0 <= g < len(STABILIZER):
        raise ValueError(f"stabilizer index must be in 0..7, got {g}")
    return STABILIZER[g]


def apply_stabilizer(p, g: int) -> SolPoint:
    """Apply stabilizer element ``g`` (0..7) to a point."""
    v = _pt(p).as_array() @ stabilizer_matrix(g)
    return SolPoint(*(float(c) for c in v))


def _exprel(s: float) -> float:
    """(e^s - 1) / s, equal to 1 at s = 0 and +inf past the float range."""
    if s == 0.0:
        return 1.0
    if s > 700.0:
        return math.inf
    return math.expm1(s) / s


def curve_point(params: CurveParams) -> SolPoint:
    """Endpoint of the unit-speed translation curve from the origin."""
    phi, theta, t = params
    u, v, w = CurveParams(phi, theta, t).direction()
    s = t * w
    if abs(s) < PLANAR_EPS:
        return SolPoint(t * u, t * v, s)
    # -cot(theta) cos(phi) (e^-s - 1) == u t (1 - e^-s) / s
    return SolPoint(u * t * _exprel(-s), v * t * _exprel(s), s)


def _scaled_xy(x: float, y: float, c: float) -> tuple[float, float]:
    # c * x / (1 - e^-c) and c * y / (e^c - 1), both finite at c = 0
    return x / _exprel(-c), y / _exprel(c)


def curve_params(p) -> CurveParams:
    """Recover (phi, theta, t) of the translation curve from the origin to ``p``.

    With ``A = x/(1 - e^-c)`` and ``B = y/(e^c - 1)`` the curve satisfies
    ``A = cot(theta) cos(phi)``, ``B = cot(theta) sin(phi)`` and
    ``c = t sin(theta)``.  Multiplying through by ``c`` keeps everything
    finite on the base plane, where the formulas reduce to the planar case.
    """
    x, y, c = _pt(p)
    if x == 0.0 and y == 0.0 and c == 0.0:
        raise DegenerateInputError("zero-length translation curve: point is the origin")
    cx, cy = _scaled_xy(x, y, c)
    horiz = math.hypot(cx, cy)
    theta = math.atan2(c, horiz)
    phi = math.atan2(cy, cx)
    if phi <= -math.pi:
        phi += 2.0 * math.pi
    # equals c / sin(theta) without the division
    t = math.hypot(horiz, c)
    return CurveParams(phi, theta, t)


def relative_coordinates(a, c) -> SolPoint:
    """Image of ``c`` under the translation that carries ``a`` to the origin."""
    a, c = _pt(a), _pt(c)
    return SolPoint((c.x - a.x) * math.exp(a.z), (c.y - a.y) * math.exp(-a.z), c.z - a.z)


def translation_distance(a, b) -> float:
    """Arc length of the translation curve from ``a`` to ``b`` (0 for coincident points)."""
    r = relative_coordinates(a, b)
    if r.x == 0.0 and r.y == 0.0 and r.z == 0.0:
        return 0.0
    return curve_params(r).t


# -- vectorised versions ------------------------------------------------------

def _exprel_array(s: np.ndarray) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    small = s == 0.0
    safe = np.where(small, 1.0, s)
    with np.errstate(over="ignore"):
        return np.where(small, 1.0, np.expm1(safe) / safe)


def translation_distances(a, b) -> np.ndarray:
    """Broadcasting ``translation_distance`` over arrays of shape (..., 3)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    az = a[..., 2]
    rx = (b[..., 0] - a[..., 0]) * np.exp(az)
    ry = (b[..., 1] - a[..., 1]) * np.exp(-az)
    rz = b[..., 2] - az
    return np.sqrt((rx / _exprel_array(-rz)) ** 2 + (ry / _exprel_array(rz)) ** 2 + rz**2)


def curve_points(phi, theta, t) -> np.ndarray:
    """Broadcasting ``curve_point``; returns an array of shape (..., 3)."""
    phi, theta, t = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (phi, theta, t)))
    ct = np.cos(theta)
    s = t * np.sin(theta)
    x = ct * np.cos(phi) * t * _exprel_array(-s)
    y = ct * np.sin(phi) * t * _exprel_array(s)
    return np.stack([x, y, s], axis=-1)
