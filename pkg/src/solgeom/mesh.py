"""Triangle meshes, iso-surface extraction and Wavefront OBJ I/O."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np


@dataclass
class Mesh:
    vertices: np.ndarray  # (n, 3) float
    faces: np.ndarray  # (m, 3) int, 0-based

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        self.faces = np.asarray(self.faces, dtype=np.int64).reshape(-1, 3)

    @property
    def is_empty(self) -> bool:
        return len(self.faces) == 0


def write_obj(mesh: Mesh, path, comment: str | None = None) -> None:
    """Write ``mesh`` as ASCII OBJ with 1-based face indices."""
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.extend(f"v {x:.17g} {y:.17g} {z:.17g}" for x, y, z in mesh.vertices)
    lines.extend(f"f {a + 1} {b + 1} {c + 1}" for a, b, c in mesh.faces)
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def read_obj(path) -> Mesh:
    verts, faces = [], []
    for line in Path(path).read_text(encoding="ascii").splitlines():
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "v":
            verts.append([float(v) for v in parts[1:4]])
        elif parts[0] == "f":
            # accept "i", "i/j" and "i/j/k" references
            faces.append([int(p.split("/")[0]) - 1 for p in parts[1:4]])
    return Mesh(np.array(verts, dtype=float), np.array(faces, dtype=np.int64))


# cube corner k has offset bits (k & 1, k >> 1 & 1, k >> 2 & 1) in (i, j, l)
_CUBE_TETS = np.array([
    [0, 1, 3, 7],
    [0, 3, 2, 7],
    [0, 2, 6, 7],
    [0, 6, 4, 7],
    [0, 4, 5, 7],
    [0, 5, 1, 7],
])


def extract_isosurface(
    field: Callable[[np.ndarray], np.ndarray],
    lo,
    hi,
    resolution,
    polish_iterations: int = 60,
) -> Mesh:
    """Zero level set of ``field`` over the box [lo, hi] by marching tetrahedra.

    ``field`` maps an (n, 3) array of points to n values.  Each grid cell is
    split into six tetrahedra sharing the main diagonal.  Crossing points on
    grid edges are placed by bisection on ``field`` itself rather than by
    linear interpolation, so vertex residuals are limited by the iteration
    count, not the grid spacing.
    """
    res = np.broadcast_to(np.asarray(resolution, dtype=int), (3,))
    if np.any(res < 2):
        raise ValueError("resolution must be at least 2 per axis")
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    axes = [np.linspace(lo[k], hi[k], res[k]) for k in range(3)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 3)
    values = np.asarray(field(grid), dtype=float)
    nx, ny, nz = res

    def gid(i, j, l):
        return (i * ny + j) * nz + l

    ii, jj, ll = np.meshgrid(np.arange(nx - 1), np.arange(ny - 1), np.arange(nz - 1), indexing="ij")
    ii, jj, ll = ii.ravel(), jj.ravel(), ll.ravel()
    corners = np.stack(
        [gid(ii + (k & 1), jj + (k >> 1 & 1), ll + (k >> 2 & 1)) for k in range(8)], axis=1
    )
    tets = corners[:, _CUBE_TETS].reshape(-1, 4)
    neg = values[tets] < 0
    count = neg.sum(axis=1)
    tets, neg = tets[(count > 0) & (count < 4)], neg[(count > 0) & (count < 4)]
    if len(tets) == 0:
        return Mesh(np.empty((0, 3)), np.empty((0, 3), dtype=np.int64))

    edge_index: dict[tuple[int, int], int] = {}
    tris: list[tuple[int, int, int]] = []
    orient: list[int] = []  # a grid vertex on the positive side of each triangle

    def edge(a: int, b: int) -> int:
        key = (a, b) if a < b else (b, a)
        if key not in edge_index:
            edge_index[key] = len(edge_index)
        return edge_index[key]

    for tet, sgn in zip(tets.tolist(), neg.tolist()):
        inside = [v for v, s in zip(tet, sgn) if s]
        outside = [v for v, s in zip(tet, sgn) if not s]
        if len(inside) == 1 or len(outside) == 1:
            lone, rest = (inside[0], outside) if len(inside) == 1 else (outside[0], inside)
            tris.append(tuple(edge(lone, r) for r in rest))
            orient.append(outside[0])
        else:
            a, b = inside
            c, d = outside
            e_ac, e_ad, e_bc, e_bd = edge(a, c), edge(a, d), edge(b, c), edge(b, d)
            tris.append((e_ac, e_ad, e_bd))
            tris.append((e_ac, e_bd, e_bc))
            orient.extend([c, c])

    keys = np.array(list(edge_index.keys()), dtype=np.int64)
    p0, p1 = grid[keys[:, 0]], grid[keys[:, 1]]
    v0 = values[keys[:, 0]]
    # bisection keeping p_neg on the negative side
    p_neg = np.where((v0 < 0)[:, None], p0, p1)
    p_pos = np.where((v0 < 0)[:, None], p1, p0)
    for _ in range(polish_iterations):
        mid = 0.5 * (p_neg + p_pos)
        below = np.asarray(field(mid)) < 0
        p_neg = np.where(below[:, None], mid, p_neg)
        p_pos = np.where(below[:, None], p_pos, mid)
    verts = 0.5 * (p_neg + p_pos)

    faces = np.array(tris, dtype=np.int64)
    # orient normals towards the positive side
    a, b, c = verts[faces[:, 0]], verts[faces[:, 1]], verts[faces[:, 2]]
    normal = np.cross(b - a, c - a)
    towards = grid[np.array(orient)] - (a + b + c) / 3
    flip = np.einsum("ij,ij->i", normal, towards) < 0
    faces[flip] = faces[flip][:, [0, 2, 1]]
    return Mesh(verts, faces)
