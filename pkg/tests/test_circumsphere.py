import itertools

import numpy as np
import pytest

from solgeom.circumsphere import (
    Tetrahedron,
    circumcenter,
    circumradius_batch,
    euclidean_circumcenter,
)
from solgeom.core import apply_stabilizer, multiply, translation_distance
from solgeom.errors import ConvergenceError, DegenerateInputError
from solgeom.reference import SAMPLE_TETRAHEDRON

SAMPLE = Tetrahedron.of(*SAMPLE_TETRAHEDRON)


def test_sample_tetrahedron():
    sph = circumcenter(SAMPLE)
    assert sph.radius == pytest.approx(0.4592315, abs=1e-6)
    assert sph.center.x == pytest.approx(-0.25, abs=1e-9)
    assert sph.center.y == pytest.approx(0.25, abs=1e-9)
    for v in SAMPLE:
        assert translation_distance(v, sph.center) == pytest.approx(sph.radius, abs=1e-10)


def test_vertex_order_does_not_matter():
    r0 = circumcenter(SAMPLE).radius
    for perm in itertools.permutations(SAMPLE):
        assert circumcenter(Tetrahedron(*perm)).radius == pytest.approx(r0, abs=1e-10)


@pytest.mark.parametrize("g", range(8))
def test_stabilizer_moves_sphere(g):
    sph = circumcenter(SAMPLE)
    moved = circumcenter(Tetrahedron(*(apply_stabilizer(v, g) for v in SAMPLE)))
    assert moved.radius == pytest.approx(sph.radius, abs=1e-10)
    assert moved.center == pytest.approx(apply_stabilizer(sph.center, g), abs=1e-8)


def test_translation_moves_sphere():
    g = (0.3, -1.1, 0.8)
    sph = circumcenter(SAMPLE)
    moved = circumcenter(Tetrahedron(*(multiply(v, g) for v in SAMPLE)))
    assert moved.radius == pytest.approx(sph.radius, abs=1e-10)
    assert moved.center == pytest.approx(multiply(sph.center, g), abs=1e-8)


def test_small_tetrahedra_are_euclidean():
    regular = np.array([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)], dtype=float)
    g = np.random.default_rng(8)
    for _ in range(20):
        q, _ = np.linalg.qr(g.normal(size=(3, 3)))
        local = 1e-3 * regular @ q  # circumradius sqrt(3) * 1e-3
        base = g.uniform(-1, 1, 3)
        # translations are isometries, so the shape stays regular after the move
        v = [multiply(p, base) for p in local]
        assert circumcenter(Tetrahedron.of(*v)).radius == pytest.approx(np.sqrt(3) * 1e-3, rel=0.01)


def test_euclidean_circumcenter():
    c = euclidean_circumcenter(Tetrahedron.of((0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2)))
    assert c == pytest.approx((1, 1, 1))


def test_degenerate_rejected():
    flat = Tetrahedron.of((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0))
    with pytest.raises(DegenerateInputError):
        circumcenter(flat)
    with pytest.raises(DegenerateInputError):
        circumcenter([(0, 0, 0), (0, 0, 0), (0, 1, 0), (0, 0, 1)])


def test_needs_four_vertices():
    with pytest.raises(ValueError):
        Tetrahedron.of((0, 0, 0), (1, 0, 0), (0, 1, 0))


def test_batch_keeps_order_and_names_failures(monkeypatch):
    other = Tetrahedron.of((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))
    out = circumradius_batch([SAMPLE, other])
    assert out[0].radius == pytest.approx(circumcenter(SAMPLE).radius)
    assert out[1].radius == pytest.approx(circumcenter(other).radius)
    flat = Tetrahedron.of((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0))
    with pytest.raises(DegenerateInputError, match="tetrahedron 1"):
        circumradius_batch([SAMPLE, flat])

    import solgeom.circumsphere as cs
    monkeypatch.setattr(cs, "_newton", lambda residual, x0, reach=None: (x0, 1.0))
    with pytest.raises(ConvergenceError, match="tetrahedron 0"):
        circumradius_batch([SAMPLE])
