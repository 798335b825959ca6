"""Minimal graphs, their maximal twins, special Lagrangian lifts and Gauss maps on grids.

Height maps are numpy arrays of shape (n, ny, nx) (or (ny, nx) for one
component) on a GridDomain. Reports come back as dicts.
"""

import json

from ._core import (
    GridDomain,
    TwinsurfError,
    catalog_names,
    default_params,
    default_rectangle,
    gauss_map,
    graph_rotate,
    hessian_determinant,
    jorgens_gauss,
    known_lift,
    num_threads,
    planarity_score,
    quadric_residual,
    read_gfield,
    sample,
    set_num_threads,
    sl_params_from_theta,
    write_gfield,
)
from . import _core

__all__ = [
    "GridDomain", "TwinsurfError", "catalog_names", "default_params", "default_rectangle", "sample",
    "known_lift", "read_gfield", "write_gfield", "set_num_threads", "num_threads", "residual",
    "twin_forward", "twin_backward", "sl_lift", "graph_rotate", "sl_params_from_theta",
    "hessian_determinant", "sl_residual", "detect_angle", "gauss_map", "quadric_residual",
    "planarity_score", "hyperplane_fit", "jorgens_gauss", "build_chart", "resample_to_chart",
    "weierstrass", "solve_minimal", "solve_maximal", "verify_all", "error_code",
]


def error_code(err):
    """Enum name carried by a TwinsurfError, e.g. 'NOT_CLOSED'."""
    return err.args[0] if err.args else None


def residual(system, grid, f, signature="euclidean"):
    return json.loads(_core._residual(system, grid, f, signature))


def twin_forward(grid, f, basepoint=(0, 0), tol=None):
    g, diag = _core._twin(True, grid, f, basepoint, tol)
    return g, json.loads(diag)


def twin_backward(grid, g, basepoint=(0, 0), tol=None):
    f, diag = _core._twin(False, grid, g, basepoint, tol)
    return f, json.loads(diag)


def sl_lift(grid, f, basepoint=(0, 0), tol=None):
    M, N, h, report = _core._sl_lift(grid, f, basepoint, tol)
    return M, N, h, json.loads(report)


def sl_residual(grid, h, theta, split=False):
    return json.loads(_core._sl_residual(grid, h, theta, split))


def detect_angle(grid, h, mode="euclidean"):
    return json.loads(_core._detect_angle(grid, h, mode))


def hyperplane_fit(grid, g, i, j):
    return json.loads(_core._hyperplane_fit(grid, g, i, j))


def build_chart(grid, f, basepoint=(0, 0)):
    return _core._build_chart(grid, f, basepoint)


def resample_to_chart(grid, f, basepoint=(0, 0)):
    target, X, metric = _core._resample_to_chart(grid, f, basepoint)
    return target, X, json.loads(metric)


def weierstrass(grid, f, basepoint=(0, 0)):
    return json.loads(_core._weierstrass(grid, f, basepoint))


def solve_minimal(grid, boundary, **options):
    u, report = _core._solve(True, grid, boundary, options)
    return u, json.loads(report)


def solve_maximal(grid, boundary, **options):
    u, report = _core._solve(False, grid, boundary, options)
    return u, json.loads(report)


def verify_all(name, params=None, grid=None):
    if grid is None:
        r = default_rectangle(name)
        grid = GridDomain.span(r[0], r[1], r[2], r[3], 129, 129)
    return json.loads(_core._verify_all(name, params or {}, grid))
