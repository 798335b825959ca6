import math

import numpy as np
import pytest

import twinsurf as ts


def catenoid_grid(nx=65, ny=33):
    return ts.GridDomain.span(1.5, -0.75, 3.0, 0.75, nx, ny)


def test_sample_matches_closed_form():
    d = catenoid_grid()
    f = ts.sample("catenoid", {"rho": 1.0}, d)
    assert f.shape == (1, d.ny, d.nx)
    x = d.x0 + d.dx * np.arange(d.nx)
    y = d.y0 + d.dy * np.arange(d.ny)
    X, Y = np.meshgrid(x, y)
    assert np.max(np.abs(f[0] - np.arccosh(np.hypot(X, Y)))) < 1e-14


def test_twin_round_trip():
    d = catenoid_grid(97, 49)
    f = ts.sample("catenoid", {}, d)
    g, diag = ts.twin_forward(d, f)
    assert diag["c3_residual"] < 5e-3
    assert ts.residual("maximal", d, g)["max_abs"] < 5e-3
    back, _ = ts.twin_backward(d, g)
    err = (back[0] - back[0, 0, 0]) - (f[0] - f[0, 0, 0])
    assert np.max(np.abs(err)) < 1e-3


def test_sl_lift_is_unimodular():
    d = ts.GridDomain.span(-0.6, -0.6, 0.6, 0.6, 65, 65)
    M, N, h, report = ts.sl_lift(d, ts.sample("scherk", {}, d))
    assert report["hessian_det_residual"] < 1e-2
    angle = ts.detect_angle(d, h)
    assert abs(angle["theta"] - math.pi / 2) < 1e-2


def test_gauss_quadric_and_jorgens():
    d = ts.GridDomain.span(-1, -1, 1, 1, 17, 17)
    rng = np.random.default_rng(1)
    f = rng.standard_normal((3, 17, 17))
    g = ts.gauss_map(d, f)
    assert g.shape == (5, 17, 17)
    assert ts.quadric_residual(d, g) < 1e-10
    x = np.linspace(-1, 1, 17)
    X, Y = np.meshgrid(x, x)
    field, eps = ts.jorgens_gauss(d, (X**2 + Y**2) / 2)
    assert eps == 1
    assert ts.planarity_score(d, field) <= 1e-12
    fit = ts.hyperplane_fit(d, field, 2, 3)
    assert abs(complex(fit["lambda"]["re"], fit["lambda"]["im"]) - 1j) < 1e-10


def test_rotation():
    d = ts.GridDomain(-1, -1, 0.5, 0.5, 5, 5)
    l1, l2 = ts.sl_params_from_theta(0.7, 1, "standard")
    x = np.arange(5) * 0.5 - 1
    X, Y = np.meshgrid(x, x)
    a, c = 0.3, -0.4
    b = -(l1 * a + l2 + l2 * c * c) / (l1 - l2 * a)
    h = ts.graph_rotate(d, 0.5 * a * X**2 + c * X * Y + 0.5 * b * Y**2, l1, l2)
    assert np.max(np.abs(ts.hessian_determinant(d, h) - 1)) < 1e-12


def test_chart_and_weierstrass():
    d = catenoid_grid(129, 65)
    f = ts.sample("catenoid", {}, d)
    chart = ts.build_chart(d, f)
    assert chart["J_psi"].min() > 2
    _, X, metric = ts.resample_to_chart(d, f)
    assert metric["max_abs_g12"] <= 0.02 * metric["max_g11"]
    assert ts.weierstrass(d, f)["max_residual"] <= 0.02


def test_solver():
    d = ts.GridDomain.span(-0.6, -0.6, 0.6, 0.6, 33, 33)
    exact = ts.sample("scherk", {}, d)
    boundary = exact.copy()
    boundary[:, 1:-1, 1:-1] = 0
    u, report = ts.solve_minimal(d, boundary)
    assert report["converged"]
    assert np.max(np.abs(u - exact)) < 1e-2


def test_errors_carry_the_enum_name():
    d = ts.GridDomain.span(0, 0, 1, 1, 33, 33)
    x = np.linspace(0, 1, 33)
    X, _ = np.meshgrid(x, x)
    with pytest.raises(ts.TwinsurfError) as err:
        ts.twin_forward(d, X**3)
    assert ts.error_code(err.value) == "NOT_CLOSED"
    with pytest.raises(ts.TwinsurfError) as err:
        ts.sample("catenoid", {"bogus": 1.0}, d)
    assert ts.error_code(err.value) == "INVALID_ARGUMENT"


def test_gfield_round_trip(tmp_path):
    d = ts.GridDomain(0.1, 0.2, 0.3, 0.7, 6, 5)
    a = np.random.default_rng(0).standard_normal((2, 5, 6)) * 1e-7
    path = str(tmp_path / "a.gf")
    ts.write_gfield(path, d, a)
    d2, b = ts.read_gfield(path)
    assert d2 == d
    assert np.array_equal(a, b)


def test_verify_all():
    r = ts.verify_all("helicoid", {"rho": 1.0}, ts.GridDomain.span(1, 1, 2, 2, 65, 65))
    assert r["pass"]
    assert all(c["pass"] for c in r["checks"])
