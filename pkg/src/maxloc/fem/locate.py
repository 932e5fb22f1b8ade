"""Sub-grid maximum of a nodal field by a local quadratic fit."""
from __future__ import annotations

import numpy as np

from ..base import Bracket, MaxReport, Point
from ..errors import TooFewNeighborsError, UnsolvedFieldError
from .solvers import Field

MIN_FIT_POINTS = 6


def _patch(mesh, i):
    pts = np.concatenate([[i], mesh.vertex_neighbors(i)])
    if len(pts) < MIN_FIT_POINTS:
        ring2 = np.concatenate([mesh.vertex_neighbors(j) for j in pts])
        pts = np.unique(np.concatenate([pts, ring2]))
    return pts


def fit_quadratic(xy: np.ndarray, values: np.ndarray, center, scale: float):
    """Least-squares ``c0 + c1 X + c2 Y + c3 X² + c4 XY + c5 Y²`` with X = (x - cx)/scale."""
    X = (xy[:, 0] - center[0]) / scale
    Y = (xy[:, 1] - center[1]) / scale
    A = np.column_stack([np.ones_like(X), X, Y, X * X, X * Y, Y * Y])
    coef, *_ = np.linalg.lstsq(A, values, rcond=None)
    return coef


def locate_max(field: Field) -> MaxReport:
    """Largest interior vertex, refined by the critical point of a fitted quadratic.

    Falls back to the vertex itself when the fitted Hessian is not negative
    definite or the critical point lands more than ``2 h_max`` away.  FEM
    reports are never certified.
    """
    if field is None or field.values is None:
        raise UnsolvedFieldError("field has no values")
    mesh = field.mesh
    vals = np.where(mesh.is_boundary, -np.inf, field.values)
    i = int(np.argmax(vals))  # first index wins ties
    ties = int(np.count_nonzero(vals == vals[i]))
    pts = _patch(mesh, i)
    if len(pts) < MIN_FIT_POINTS:
        raise TooFewNeighborsError(f"vertex {i} has only {len(pts) - 1} neighbours")
    h = mesh.h_max
    center = mesh.vertices[i]
    c = fit_quadratic(mesh.vertices[pts], field.values[pts], center, h)
    H = np.array([[2 * c[3], c[4]], [c[4], 2 * c[5]]])
    method = "vertex"
    x, y, value = float(center[0]), float(center[1]), float(field.values[i])
    if np.all(np.linalg.eigvalsh(H) < 0):
        d = np.linalg.solve(H, -c[1:3])
        if np.hypot(*d) * h <= 2 * h:
            x, y = float(center[0] + d[0] * h), float(center[1] + d[1] * h)
            value = float(c[0] + c[1] * d[0] + c[2] * d[1]
                          + c[3] * d[0] ** 2 + c[4] * d[0] * d[1] + c[5] * d[1] ** 2)
            method = "quadratic_fit"
    return MaxReport(problem="fem_generic", location=Bracket(x - 0.5 * h, x + 0.5 * h),
                     location_point=Point(x, y), value=value, certified=False, evaluations=1,
                     method=method, extra={"vertex": i, "vertex_ties": ties, "h_max": h})
