import math

import numpy as np
import pytest

from solgeom.core import multiply, translation_distances
from solgeom.lattice import (
    FundamentalLattice,
    decomposition_volume_gap,
    make_lattice,
    orbit_array,
    orbit_points,
    parallelepiped,
    read_parameter_file,
    tetra_decomposition,
    verify_presentation,
    volume,
    word_point,
)


def test_make_lattice_derived_entries():
    lat = make_lattice(0.79, 0.2, 3)
    lam = (3 + math.sqrt(5)) / 2
    assert lat.eigenvalue == pytest.approx(lam)
    assert lat.t33 == pytest.approx(math.log(lam))
    assert lat.t21 == pytest.approx(0.79 / lam)
    assert lat.t22 == pytest.approx(0.2 * lam)
    assert lat.tau3 == (0.0, 0.0, pytest.approx(math.log(lam)))


@pytest.mark.parametrize("bad", [(1.0, 1.0, 2), (1.0, 1.0, 3.5), (0.0, 1.0, 3), (1.0, 0.0, 4)])
def test_make_lattice_rejects(bad):
    with pytest.raises(ValueError):
        make_lattice(*bad)


def test_rotation_matrix_has_trace_n():
    for n in (3, 4, 7):
        lam = make_lattice(1.0, 1.0, n).eigenvalue
        assert lam + 1 / lam == pytest.approx(n)


def test_volume_values():
    assert volume(make_lattice(0.79, 0.2, 3)) == pytest.approx(0.34002306, abs=1e-8)
    for t11, t12, n in [(0.6, 0.1, 5), (1.3, -0.4, 4), (-2.0, 0.7, 3)]:
        lat = make_lattice(t11, t12, n)
        # det T = t11 t12 (lambda - 1/lambda) = t11 t12 sqrt(N^2 - 4)
        want = abs(t11 * t12) * math.sqrt(n * n - 4) * lat.t33
        assert volume(lat) == pytest.approx(want, rel=1e-12)


def test_parallelepiped_vertices_are_lattice_words():
    lat = make_lattice(0.7, 0.2, 4)
    pp = parallelepiped(lat)
    t1, t2, t3 = lat.tau1, lat.tau2, lat.tau3
    want = {
        "o": (0, 0, 0),
        "p": t1,
        "p_prime": t2,
        "q": multiply(t1, t2),
        "p3": t3,
        "p_tau3": multiply(t1, t3),
        "p_prime_tau3": multiply(t2, t3),
        "q_tau3": multiply(multiply(t1, t2), t3),
    }
    for name, w in want.items():
        assert getattr(pp, name) == pytest.approx(w, abs=1e-12)
    assert len(pp.base) == len(pp.top) == 4


def test_presentation_holds():
    g = np.random.default_rng(0)
    for _ in range(200):
        t11, t12 = g.uniform(-3, 3, 2)
        assert verify_presentation(make_lattice(float(t11), float(t12), int(g.integers(3, 10))))


def test_presentation_detects_wrong_rotation():
    class Skewed(FundamentalLattice):
        @property
        def t22(self):
            return 1.01 * self.t12 * self.eigenvalue

    assert not verify_presentation(Skewed(0.7, 0.2, 3))


def test_decomposition_shape():
    lat = make_lattice(0.79, 0.2, 3)
    pp = parallelepiped(lat)
    tets = tetra_decomposition(pp)
    assert len(tets) == 6
    assert all(t.euclidean_volume() > 1e-6 for t in tets)
    used = {tuple(v) for t in tets for v in t}
    assert used == {tuple(v) for v in pp}


def test_decomposition_interiors_disjoint():
    lat = make_lattice(0.79, 0.2, 3)
    tets = [t.array() for t in tetra_decomposition(parallelepiped(lat))]
    g = np.random.default_rng(1)
    for k, v in enumerate(tets):
        w = g.dirichlet(np.ones(4), 500)
        pts = w @ v
        for m, u in enumerate(tets):
            if m == k:
                continue
            bary = np.linalg.solve((u[1:] - u[0]).T, (pts - u[0]).T).T
            inside = (bary > 1e-9).all(axis=1) & (bary.sum(axis=1) < 1 - 1e-9)
            assert not inside.any()


def test_volume_gap_reported():
    straight, cell, gap = decomposition_volume_gap(make_lattice(0.79, 0.2, 3))
    assert cell == pytest.approx(0.34002306, abs=1e-8)
    assert gap == pytest.approx(straight - cell)
    assert straight > 0


def test_orbit_matches_word_products():
    lat = make_lattice(0.6, 0.1, 5)
    pts, words = orbit_array(lat, 2)
    assert len(pts) == 5**3
    for p, (i, j, k) in zip(pts, words):
        assert p == pytest.approx(word_point(lat, i, j, k), rel=1e-10, abs=1e-12)


def test_orbit_is_discrete_and_contains_origin():
    lat = make_lattice(0.79, 0.2, 3)
    pts = np.array(orbit_points(lat, 1))
    assert len(pts) == 27
    assert any(np.allclose(p, 0) for p in pts)
    d = translation_distances(pts[:, None, :], pts[None, :, :])
    d[np.diag_indices(len(pts))] = np.inf
    assert d.min() > 0.1
    with pytest.raises(ValueError):
        orbit_array(lat, 0)


def test_read_parameter_file(tmp_path):
    f = tmp_path / "lattices.txt"
    f.write_text("# t11 t12 N\n0.79 0.2 3\n\n0.5, 0.1, 4  # comma separated\n")
    lats = read_parameter_file(f)
    assert [(l.t11, l.t12, l.n) for l in lats] == [(0.79, 0.2, 3), (0.5, 0.1, 4)]


@pytest.mark.parametrize("text", ["0.79 0.2\n", "0.79 0.2 3.5\n", "a b c\n", "1 1 2\n"])
def test_read_parameter_file_errors(tmp_path, text):
    f = tmp_path / "bad.txt"
    f.write_text(text)
    with pytest.raises(ValueError):
        read_parameter_file(f)


def test_base_area_and_rotation():
    lat = make_lattice(0.8, 0.3, 4)
    assert lat.base_area == pytest.approx(abs(lat.t11 * lat.t22 - lat.t12 * lat.t21))
    assert lat.rotate(lat.tau1) == pytest.approx(
        (lat.t11 / lat.eigenvalue, lat.t12 * lat.eigenvalue, 0.0))
