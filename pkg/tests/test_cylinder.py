import itertools
import math

import numpy as np
import pytest

from solgeom import cylinder, reference
from solgeom.errors import DegenerateInputError
from solgeom.lattice import make_lattice, volume

LATTICES = [(1.6, 1.0, 3), (2.5, 1.5, 3), (1.0, 0.618, 3), (1.0, 0.3, 4), (0.7, 0.9, 5), (1.0, 2.0, 3)]


def plane_points(lat, k=2):
    p = np.array([lat.t11, lat.t12])
    pp = np.array([lat.t21, lat.t22])
    return np.array([i * p + j * pp for i, j in itertools.product(range(-k, k + 1), repeat=2)])


@pytest.mark.parametrize("params", LATTICES, ids=str)
def test_packing_circles_do_not_overlap(params):
    lat = make_lattice(*params)
    r = cylinder.packing_density(lat).radius
    pts = plane_points(lat, 1)  # the nine-circle neighbourhood
    d = np.linalg.norm(pts[:, None] - pts[None], axis=-1)
    d[np.diag_indices(len(pts))] = np.inf
    assert d.min() >= 2 * r - 1e-12


@pytest.mark.parametrize("params", LATTICES, ids=str)
def test_packing_radius_is_largest(params):
    # half the shortest lattice vector, found by brute force
    lat = make_lattice(*params)
    pts = plane_points(lat, 4)
    shortest = np.sort(np.linalg.norm(pts, axis=1))[1]
    assert cylinder.packing_density(lat).radius <= shortest / 2 + 1e-12


@pytest.mark.parametrize("params", LATTICES, ids=str)
def test_covering_circles_cover_base(params):
    lat = make_lattice(*params)
    r = cylinder.covering_density_cyl(lat).radius
    p = np.array([lat.t11, lat.t12])
    pp = np.array([lat.t21, lat.t22])
    w = np.random.default_rng(0).uniform(0, 1, (10_000, 2))
    samples = w[:, :1] * p + w[:, 1:] * pp
    pts = plane_points(lat, 2)
    nearest = np.linalg.norm(samples[:, None] - pts[None], axis=-1).min(axis=1)
    assert nearest.max() <= r + 1e-9


def test_golden_row_exact():
    lat = make_lattice(1.0, reference.PACKING_OPT_T12, 3)
    rep = cylinder.packing_density(lat)
    assert rep.radius == pytest.approx(reference.PACKING_OPT_RADIUS, abs=1e-14)
    assert rep.density == pytest.approx(math.pi / 4, abs=1e-14)
    assert reference.PACKING_OPT_DENSITY == pytest.approx(math.pi / 4, abs=1e-14)


def test_covering_exact_row():
    lat = make_lattice(1.0, reference.COVERING_OPT_T12, 3)
    rep = cylinder.covering_density_cyl(lat)
    assert rep.radius == pytest.approx(reference.COVERING_OPT_RADIUS, abs=1e-14)
    assert rep.density == pytest.approx(reference.COVERING_OPT_DENSITY, abs=1e-12)
    assert rep.density == pytest.approx(1.2644667, abs=1e-7)


def test_report_consistency():
    lat = make_lattice(1.6, 1.0, 3)
    rep = cylinder.packing_density(lat)
    assert rep.height == pytest.approx(lat.t33)
    assert rep.cell_volume == pytest.approx(volume(lat))
    assert rep.cylinder_volume == pytest.approx(math.pi * rep.radius**2 * rep.height)
    assert rep.density == pytest.approx(rep.cylinder_volume / rep.cell_volume)
    assert rep.row()["mode"] == "packing"


def test_density_depends_on_ratio_only():
    a = cylinder.covering_density_cyl(make_lattice(1.0, 0.4, 3)).density
    b = cylinder.covering_density_cyl(make_lattice(2.5, 1.0, 3)).density
    assert a == pytest.approx(b, rel=1e-12)


def test_bounds():
    for params in LATTICES:
        lat = make_lattice(*params)
        assert cylinder.check_bounds(cylinder.packing_density(lat))
        assert cylinder.check_bounds(cylinder.covering_density_cyl(lat))
    fake = cylinder.DensityReport(1, 1, 3, "packing", 1, 1, 1, 1, 1, 0.95)
    assert not cylinder.check_bounds(fake)
    with pytest.raises(ValueError):
        cylinder.check_bounds(cylinder.DensityReport(1, 1, 3, "other", 1, 1, 1, 1, 1, 1))


def test_hexagonal_lattice_reaches_bounds():
    # with N = 4 and t12 = 2 - sqrt(3) the base lattice is hexagonal
    lat = make_lattice(1.0, 2 - math.sqrt(3), 4)
    assert cylinder.packing_density(lat).density == pytest.approx(cylinder.HEX_PACKING_DENSITY, abs=1e-12)
    assert cylinder.covering_density_cyl(lat).density == pytest.approx(cylinder.HEX_COVERING_DENSITY, abs=1e-12)


def test_euclidean_circumradius():
    assert cylinder.euclidean_circumradius((0, 0), (2, 0), (0, 2)) == pytest.approx(math.sqrt(2))
    with pytest.raises(DegenerateInputError):
        cylinder.euclidean_circumradius((0, 0), (1, 1), (2, 2))


def test_cylinder_spec():
    assert cylinder.cylinder_volume(cylinder.CylinderSpec(2.0, 3.0)) == pytest.approx(12 * math.pi)
    with pytest.raises(ValueError):
        cylinder.CylinderSpec(0.0, 1.0)
    with pytest.raises(ValueError):
        cylinder.density(make_lattice(1, 1, 3), "both")


@pytest.mark.parametrize("mode, ratio", [("packing", (math.sqrt(5) - 1) / 2), ("covering", (3 - math.sqrt(5)) / 2)])
def test_search_n3(mode, ratio):
    res = cylinder.search_cylinder_optima(mode, (0.01, 2.0, 0.01))
    assert res.best.n == 3
    assert res.best.t12 == pytest.approx(ratio, abs=1e-3)
    assert all(cylinder.check_bounds(r) for r in res.grid)


def test_search_over_traces_finds_hexagonal():
    res = cylinder.search_cylinder_optima("packing", (0.01, 2.0, 0.01), ns=(3, 4, 5))
    assert res.best.n == 4
    assert res.best.density == pytest.approx(cylinder.HEX_PACKING_DENSITY, abs=1e-3)
    assert res.per_n[3].density == pytest.approx(math.pi / 4, abs=1e-4)
