"""Level-curve extraction by marching triangles, rendered as SVG."""
from __future__ import annotations

import math

import numpy as np

from . import closedform as cf
from .base import DomainSpec, Point
from .errors import UnsolvedFieldError, UnsupportedProblemError

LEVEL_FRACTIONS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99)
GRID_SIZE = 400
_PALETTE = ("#313695", "#4575b4", "#74add1", "#abd9e9", "#e0f3f8",
            "#fee090", "#fdae61", "#f46d43", "#d73027", "#a50026")


def contour_segments(tri_xy: np.ndarray, tri_vals: np.ndarray, level: float) -> np.ndarray:
    """Segments ``(k, 2, 2)`` where the piecewise-linear field crosses ``level``.

    ``tri_xy`` is ``(m, 3, 2)``, ``tri_vals`` is ``(m, 3)``.  A vertex counts
    as above when its value is ``>= level``, so each cut triangle yields
    exactly one segment.
    """
    above = tri_vals >= level
    n_above = above.sum(axis=1)
    cut = (n_above == 1) | (n_above == 2)
    xy, v, ab = tri_xy[cut], tri_vals[cut], above[cut]
    pts = []
    for i, j in ((0, 1), (1, 2), (2, 0)):
        crosses = ab[:, i] != ab[:, j]
        t = np.where(crosses, (level - v[:, i]) / np.where(crosses, v[:, j] - v[:, i], 1.0), 0.0)
        p = xy[:, i] + t[:, None] * (xy[:, j] - xy[:, i])
        pts.append((crosses, p))
    seg = np.empty((len(xy), 2, 2))
    filled = np.zeros(len(xy), dtype=int)
    for crosses, p in pts:
        for slot in (0, 1):
            take = crosses & (filled == slot)
            seg[take, slot] = p[take]
            filled[take] += 1
            crosses = crosses & ~take
    return seg


def grid_triangles(xmin, xmax, ymin, ymax, n=GRID_SIZE):
    """Split an ``n x n`` sample grid into triangles; returns ``(X, Y, tris)``."""
    xs = np.linspace(xmin, xmax, n)
    ys = np.linspace(ymin, ymax, n)
    X, Y = np.meshgrid(xs, ys)
    idx = np.arange(n * n).reshape(n, n)
    a, b = idx[:-1, :-1].ravel(), idx[:-1, 1:].ravel()
    c, d = idx[1:, 1:].ravel(), idx[1:, :-1].ravel()
    tris = np.concatenate([np.column_stack([a, b, c]), np.column_stack([a, c, d])])
    return X.ravel(), Y.ravel(), tris


def closed_form_samples(domain: str, problem: str, X, Y):
    """Closed-form values at original-domain points (0 outside the domain)."""
    if domain == "half_disk":
        if problem == "torsion":
            return cf.halfdisk_torsion_array(X, Y)
        if problem == "groundstate":
            return cf.halfdisk_groundstate_array(X, Y)
    elif domain == "right_isosceles":
        k = 0.5 * math.pi
        xt = k * (X + Y) + k
        yt = k * (Y - X) + k
        inside = (yt > 0) & (yt < xt) & (xt < math.pi)
        if problem == "torsion":
            return cf.TORSION_SCALE_T * cf.triangle_torsion_array(xt, yt, tol=1e-10)
        if problem == "groundstate":
            v = np.sin(xt) * np.sin(2 * yt) - np.sin(2 * xt) * np.sin(yt)
            return np.where(inside, v, 0.0)
    raise UnsupportedProblemError(f"no closed form for {problem!r} on {domain!r}")


def boundary_polyline(domain: DomainSpec, n_arc=256) -> np.ndarray:
    if domain.kind == "unit_disk":
        t = 2 * math.pi * np.arange(n_arc) / n_arc
        return np.column_stack([np.cos(t), np.sin(t)])
    if domain.kind == "half_disk":
        t = -0.5 * math.pi + math.pi * np.arange(n_arc + 1) / n_arc
        return np.column_stack([np.cos(t), np.sin(t)])
    return np.array([[p.x, p.y] for p in domain.corner_points()])


def _fmt(v):
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(domain: DomainSpec, tri_xy, tri_vals, max_point: Point, title: str = "",
               fractions=LEVEL_FRACTIONS) -> str:
    """SVG with one path per level, the domain outline and a dot at the maximum."""
    if tri_vals is None or not np.all(np.isfinite(tri_vals)):
        raise UnsolvedFieldError("no field values to contour")
    peak = float(np.max(tri_vals))
    if not peak > 0:
        raise UnsolvedFieldError("field has no positive values")
    xmin, xmax, ymin, ymax = domain.bounding_box()
    mx, my = 0.05 * (xmax - xmin), 0.05 * (ymax - ymin)
    vx, vy = xmin - mx, -(ymax + my)
    vw, vh = (xmax - xmin) + 2 * mx, (ymax - ymin) + 2 * my
    stroke = 0.004 * max(vw, vh)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(vx)} {_fmt(vy)} {_fmt(vw)} {_fmt(vh)}" '
        f'width="{_fmt(400 * vw / max(vw, vh))}" height="{_fmt(400 * vh / max(vw, vh))}">',
    ]
    if title:
        out.append(f"<title>{title}</title>")
    b = boundary_polyline(domain)
    pts = " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in b)
    out.append(f'<polygon class="boundary" points="{pts}" fill="none" stroke="black" '
               f'stroke-width="{_fmt(stroke)}"/>')
    for k, frac in enumerate(fractions):
        level = frac * peak
        seg = contour_segments(tri_xy, tri_vals, level)
        d = " ".join(f"M{_fmt(s[0, 0])} {_fmt(-s[0, 1])}L{_fmt(s[1, 0])} {_fmt(-s[1, 1])}" for s in seg)
        out.append(f'<path class="contour" data-level="{_fmt(frac)}" d="{d}" fill="none" '
                   f'stroke="{_PALETTE[k % len(_PALETTE)]}" stroke-width="{_fmt(0.6 * stroke)}"/>')
    out.append(f'<circle class="max" cx="{_fmt(max_point.x)}" cy="{_fmt(-max_point.y)}" '
               f'r="{_fmt(2.5 * stroke)}" fill="red"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def closed_form_svg(domain: DomainSpec, problem: str, max_point: Point, n=GRID_SIZE) -> str:
    xmin, xmax, ymin, ymax = domain.bounding_box()
    X, Y, tris = grid_triangles(xmin, xmax, ymin, ymax, n)
    vals = closed_form_samples(domain.kind, problem, X, Y)
    xy = np.column_stack([X, Y])
    return render_svg(domain, xy[tris], vals[tris], max_point, title=f"{domain.kind} {problem}")


def field_svg(domain: DomainSpec, field, max_point: Point, title: str = "") -> str:
    if field is None:
        raise UnsolvedFieldError("no solved field to plot")
    mesh = field.mesh
    return render_svg(domain, mesh.vertices[mesh.triangles], field.values[mesh.triangles],
                      max_point, title=title)
