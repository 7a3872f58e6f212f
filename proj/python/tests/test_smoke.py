import json
import math

import numpy as np
import pytest

import toric_kahler as tk


def test_fixtures_listed():
    assert set(tk.fixture_names()) == {"sphere-interval", "cp2-triangle", "cp2-blowup-4gon", "hexagon"}


def test_round_sphere_curvature():
    g = tk.Potential(tk.Polytope.fixture("sphere-interval"))
    for x in (-0.9, -0.2, 0.0, 0.5):
        assert abs(g.scalar_curvature(np.array([x])) - 1.0) <= 1e-10
        assert abs(g.scalar_curvature_alt(np.array([x])) - 1.0) <= 1e-10
        assert g.hessian(np.array([x]))[0, 0] == pytest.approx(1.0 / (1.0 - x * x))


def test_cp2_curvature_and_hessian():
    g = tk.Potential(tk.Polytope.fixture("cp2-triangle"))
    assert g.scalar_curvature(np.array([0.1, -0.3])) == pytest.approx(2.0, abs=1e-10)
    h = g.hessian(np.zeros(2))
    assert np.allclose(h, 0.5 * np.array([[2.0, 1.0], [1.0, 2.0]]))


def test_calabi_extremal():
    p = tk.Polytope.fixture("cp2-blowup-4gon")
    assert tk.Potential(p, "calabi-blowup").extremality()["is_extremal"]
    assert not tk.Potential(p).extremality()["is_extremal"]


def test_polytope_from_json_and_describe():
    text = json.dumps({"dim": 2, "facets": [
        {"normal": [1, 0], "offset": -1}, {"normal": [0, 1], "offset": "-1"}, {"normal": [-1, -1], "offset": -1}]})
    p = tk.Polytope.from_json(text)
    d = p.describe()
    assert d["h_numbers"] == [1, 1, 1]
    assert sorted(map(tuple, p.vertices())) == [(-1.0, -1.0), (-1.0, 2.0), (2.0, -1.0)]
    assert p.normal_sum() == [0, 0]


def test_invalid_polytope_raises():
    text = json.dumps({"dim": 1, "facets": [{"normal": [2], "offset": 0}, {"normal": [-1], "offset": -1}]})
    with pytest.raises(tk.ToricError, match="NonPrimitiveNormal"):
        tk.Polytope.from_json(text)
    with pytest.raises(ValueError):
        tk.Polytope.from_json("{")


def test_boundary_point_raises():
    g = tk.Potential(tk.Polytope.fixture("sphere-interval"))
    with pytest.raises(tk.ToricError, match="BoundaryPoint"):
        g.scalar_curvature(np.array([1.0]))


def test_sphere_spectrum_and_bessel_bound():
    g = tk.Potential(tk.Polytope.fixture("sphere-interval"))
    r = g.spectrum(3, method="fem", cells=512)
    assert r["eigenvalues"] == pytest.approx([2.0, 6.0, 12.0], rel=1e-5)
    bounds = tk.bessel_bounds(2)
    assert 2.88 <= bounds[0] <= 2.90
    assert r["eigenvalues"][0] < bounds[0]


def test_spectral_invariance():
    r = tk.spectral_invariance(tk.Polytope.fixture("cp2-triangle"), [[1, 1], [0, 1]], 2, 6)
    assert r["invariant"]
    assert r["max_relative_difference"] <= 1e-3


def test_cohomology():
    c = tk.cohomology(tk.Polytope.fixture("hexagon"))
    assert c["h2_dimension"] == 4
    p = tk.Polytope.fixture("sphere-interval")
    assert tk.generator_form(p, 0, np.zeros(1))[0, 0] == pytest.approx(1.0 / (4.0 * math.pi))
    g = tk.Potential(tk.Polytope.fixture("cp2-blowup-4gon"))
    assert np.allclose(tk.ddbar_legendre(g, np.array([0.1, 0.2])), np.eye(2), atol=1e-10)


def test_polynomial_correction_json():
    corr = json.dumps({"kind": "polynomial", "terms": [{"exponents": [2], "coeff": 0.5}]})
    g = tk.Potential(tk.Polytope.fixture("sphere-interval"), corr)
    assert g.hessian(np.array([0.0]))[0, 0] == pytest.approx(2.0)
    assert g.validate()["valid"]
