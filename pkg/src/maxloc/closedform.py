"""Exact solutions on the right half-disk and on the right isosceles triangle.

The triangle is handled in the rotated and scaled copy
``T = {0 < y < x < pi}``; :func:`map_triangle_to_unit` and
:func:`map_unit_to_triangle` move points between ``T`` and the original
triangle ``{0 < x < 1, |y| < 1 - x}``.  Torsion values scale by ``2/pi**2``
under that map, eigenvalues by ``pi**2/2``.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .base import BoundedValue, Point
from .errors import DomainError, NearSingularityError, NonConvergenceError
from .special import bessel_j1, bessel_j1_array, j11

PI = math.pi
SQRT2 = math.sqrt(2.0)
TORSION_SCALE_T = 2.0 / PI ** 2
TRIANGLE_MARGIN = 0.01
MAX_TERMS = 10_000
MIN_DERIV_TERMS = 20
_CORNER_EXCLUSION = 1e-9


@lru_cache(maxsize=None)
def groundstate_frequency() -> float:
    """``j_{1,1}``; the half-disk ground state has eigenvalue its square."""
    return j11().value


# -- half-disk ---------------------------------------------------------------

def halfdisk_groundstate(p: Point) -> float:
    x, y = float(p[0]), float(p[1])
    r = math.hypot(x, y)
    if x < 0.0 or r > 1.0 + 1e-12:
        raise DomainError(f"({x}, {y}) is outside the closed right half-disk")
    if x <= 1e-12 or r >= 1.0 - 1e-12:
        return 0.0
    return bessel_j1(groundstate_frequency() * r) * (x / r)


def halfdisk_groundstate_array(x, y):
    """Vectorised ground state; points outside the half-disk give 0."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r = np.hypot(x, y)
    inside = (x > 0.0) & (r < 1.0)
    rr = np.where(inside, r, 1.0)
    out = bessel_j1_array(groundstate_frequency() * rr) * np.where(inside, x / rr, 0.0)
    return np.where(inside, out, 0.0)


def _check_open_halfdisk(x, y):
    r2 = x * x + y * y
    if not (x > 0.0 and r2 < 1.0):
        raise DomainError(f"({x}, {y}) is outside the open right half-disk")
    for cy in (0.0, 1.0, -1.0):
        if math.hypot(x, y - cy) < _CORNER_EXCLUSION:
            raise NearSingularityError(f"({x}, {y}) is within 1e-9 of the corner (0, {cy:g})")


def _halfdisk_torsion_raw(x, y, atan=math.atan, log=math.log):
    r2 = x * x + y * y
    inv2 = 1.0 / (r2 * r2)
    return (
        -2.0 * PI * x * x
        - 2.0 * x * (1.0 / r2 - 1.0)
        + (2.0 + (x * x - y * y) * (inv2 + 1.0)) * atan(2.0 * x / (1.0 - r2))
        + x * y * (inv2 - 1.0) * log((x * x + (1.0 + y) ** 2) / (x * x + (1.0 - y) ** 2))
    ) / (4.0 * PI)


def halfdisk_torsion(p: Point) -> float:
    """Torsion function of the right half-disk (solves -Δu = 1, u = 0 on the boundary)."""
    x, y = float(p[0]), float(p[1])
    _check_open_halfdisk(x, y)
    # the formula is even in y; evaluate at |y| so mirrored points agree bitwise
    return _halfdisk_torsion_raw(x, abs(y))


def halfdisk_torsion_array(x, y):
    """Vectorised torsion function; 0 outside the open half-disk and near corners."""
    x = np.asarray(x, dtype=float)
    y = np.abs(np.asarray(y, dtype=float))
    r2 = x * x + y * y
    ok = (x > 0.0) & (r2 < 1.0) & (r2 > 1e-12) & ((x * x + (1.0 - y) ** 2) > 1e-12)
    xs = np.where(ok, x, 0.5)
    ys = np.where(ok, y, 0.0)
    with np.errstate(all="ignore"):
        u = _halfdisk_torsion_raw(xs, ys, atan=np.arctan, log=np.log)
    return np.where(ok, u, 0.0)


def halfdisk_torsion_axis(x: float) -> float:
    """``u(x, 0)`` for 0 < x < 1."""
    if not (0.0 < x < 1.0):
        raise DomainError(f"x={x} outside (0, 1)")
    return (-2.0 * PI * x * x - 2.0 / x + 2.0 * x
            + (2.0 + x ** -2 + x * x) * math.atan(2.0 * x / (1.0 - x * x))) / (4.0 * PI)


def halfdisk_torsion_axis_deriv(x: float) -> float:
    """``d/dx u(x, 0)`` on [0.001, 0.999]."""
    x = float(x)
    if not (0.001 <= x <= 0.999):
        raise DomainError(f"x={x} outside [0.001, 0.999]")
    x3 = x ** 3
    x4 = x3 * x
    return (x + x3 - PI * x4 + 0.5 * (x4 - 1.0) * math.atan(2.0 * x / (1.0 - x * x))) / (PI * x3)


# -- right isosceles triangle, in T coordinates -------------------------------

def _check_closed_T(x, y, slack=1e-12):
    if not (-slack <= y <= x + slack and x <= PI + slack):
        raise DomainError(f"({x}, {y}) is outside T = {{0 <= y <= x <= pi}}")


def triangle_groundstate(p: Point) -> float:
    """Ground state ``sin x sin 2y - sin 2x sin y`` of T (eigenvalue 5)."""
    x, y = float(p[0]), float(p[1])
    _check_closed_T(x, y)
    return math.sin(x) * math.sin(2 * y) - math.sin(2 * x) * math.sin(y)


def triangle_groundstate_factored(p: Point) -> float:
    x, y = float(p[0]), float(p[1])
    return 2.0 * math.sin(x) * math.sin(y) * (math.cos(y) - math.cos(x))


def _T_margin(x, y):
    return min(x, PI - x, y, PI - y, (x - y) / SQRT2)


def _sinh_ratio(n, s):
    """sinh(n s) / sinh(n pi) without overflow, for 0 <= s <= pi."""
    return math.exp(n * (s - PI)) * (-math.expm1(-2.0 * n * s)) / (-math.expm1(-2.0 * n * PI))


def _cosh_ratio(n, s):
    return math.exp(n * (s - PI)) * (1.0 + math.exp(-2.0 * n * s)) / (-math.expm1(-2.0 * n * PI))


def _geometric_tail(ratio_exponents, n_next):
    """3π Σ_d e^{-n d}/(1 - e^{-d}) summed from ``n_next`` on, for each decay rate d."""
    return 3.0 * PI * sum(math.exp(-n_next * d) / -math.expm1(-d) for d in ratio_exponents)


def _coefficient_numerator(n):
    return n * n * PI * PI - 2.0 * (1 - (-1) ** n)


def triangle_torsion(p: Point, tol: float) -> BoundedValue:
    """Torsion function of T by its sinh/sin series, truncated once the tail is below ``tol``.

    Term ``n`` is at most π/(4n) · Σ_s sinh(n s)/sinh(nπ) over
    s ∈ {x, y, π-x, π-y}, and sinh(nπ) > e^{nπ}/3, so the tail past ``N`` is
    dominated by four geometric series in e^{-x}, e^{-y}, e^{-(π-x)}, e^{-(π-y)}.
    """
    x, y = float(p[0]), float(p[1])
    if not tol > 0:
        raise ValueError("tol must be positive")
    if _T_margin(x, y) < TRIANGLE_MARGIN:
        raise DomainError(f"({x}, {y}) is closer than {TRIANGLE_MARGIN} to the boundary of T")
    rates = (x, y, PI - x, PI - y)
    s = 0.0
    for n in range(1, MAX_TERMS + 1):
        c = _coefficient_numerator(n) / (2.0 * PI * n ** 3)
        s += c * (_sinh_ratio(n, x) * math.sin(n * y)
                  - math.sin(n * x) * _sinh_ratio(n, y)
                  + math.sin(n * (PI - x)) * _sinh_ratio(n, PI - y)
                  - _sinh_ratio(n, PI - x) * math.sin(n * (PI - y)))
        bound = 0.25 * _geometric_tail(rates, n + 1) / (n + 1)
        if bound <= tol:
            return BoundedValue(s - 0.25 * (x - y) ** 2, bound, n)
    raise NonConvergenceError(f"triangle torsion series did not reach tol={tol} in {MAX_TERMS} terms")


def triangle_torsion_array(x, y, tol=1e-10, margin=1e-3):
    """Vectorised torsion of T for plotting grids.

    Each point stops accumulating once its own tail bound drops below
    ``tol``; points closer than ``margin`` to the boundary are set to 0.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    shape = np.broadcast(x, y).shape
    x = np.broadcast_to(x, shape).ravel()
    y = np.broadcast_to(y, shape).ravel()
    out = np.zeros(x.size)
    d = np.minimum.reduce([x, y, PI - x, PI - y, (x - y) / SQRT2])
    inside = d >= margin
    idx = np.flatnonzero(inside)
    if idx.size == 0:
        return out.reshape(shape)
    # terms needed: 3π·Σ e^{-n d}/(1-e^{-d}) over four rates ≤ 12π e^{-n dmin}/(1-e^{-dmin})
    dmin = np.minimum.reduce([x[idx], y[idx], PI - x[idx], PI - y[idx]])
    need = np.ceil(np.log(3.0 * PI / (tol * -np.expm1(-dmin))) / dmin).astype(int)
    need = np.clip(need, 1, MAX_TERMS)
    order = np.argsort(-need, kind="stable")
    idx, need = idx[order], need[order]
    xs, ys = x[idx], y[idx]
    acc = np.zeros(idx.size)

    def ratio(n, s):
        return np.exp(n * (s - PI)) * -np.expm1(-2.0 * n * s) / -math.expm1(-2.0 * n * PI)

    for n in range(1, int(need[0]) + 1):
        m = int(np.searchsorted(-need, -n, side="right"))
        xa, ya = xs[:m], ys[:m]
        c = _coefficient_numerator(n) / (2.0 * PI * n ** 3)
        acc[:m] += c * (ratio(n, xa) * np.sin(n * ya) - np.sin(n * xa) * ratio(n, ya)
                        + np.sin(n * (PI - xa)) * ratio(n, PI - ya)
                        - ratio(n, PI - xa) * np.sin(n * (PI - ya)))
    out[idx] = acc - 0.25 * (xs - ys) ** 2
    return out.reshape(shape)


def triangle_torsion_symmetry_deriv(x: float, tol: float) -> BoundedValue:
    """``d/dx u(x, π - x)`` on T with a rigorous geometric tail bound.

    At least 20 terms are always summed.
    """
    x = float(x)
    if not tol > 0:
        raise ValueError("tol must be positive")
    if not (TRIANGLE_MARGIN <= x <= PI - TRIANGLE_MARGIN):
        raise DomainError(f"x={x} outside [{TRIANGLE_MARGIN}, pi - {TRIANGLE_MARGIN}]")
    rates = (PI - x, x)
    s = -2.0 * (x - 0.5 * PI)
    for n in range(1, MAX_TERMS + 1):
        sign = 1.0 if n % 2 else -1.0  # (-1)^(n+1)
        c = _coefficient_numerator(n) / (PI * n * n)
        s += c * ((sign * _cosh_ratio(n, x) + _cosh_ratio(n, PI - x)) * math.sin(n * x)
                  + (sign * _sinh_ratio(n, x) - _sinh_ratio(n, PI - x)) * math.cos(n * x))
        if n >= MIN_DERIV_TERMS:
            bound = _geometric_tail(rates, n + 1)
            if bound <= tol:
                return BoundedValue(s, bound, n)
    raise NonConvergenceError(f"derivative series did not reach tol={tol} in {MAX_TERMS} terms")


# -- coordinate maps ----------------------------------------------------------

def map_triangle_to_unit(p: Point) -> Point:
    """T → original triangle: shift by -π/2, scale by √2/π, rotate 45° counterclockwise."""
    x, y = float(p[0]) - 0.5 * PI, float(p[1]) - 0.5 * PI
    _check_closed_T(x + 0.5 * PI, y + 0.5 * PI)
    k = SQRT2 / PI / SQRT2  # scale, then cos 45° = sin 45° = 1/√2
    return Point(k * (x - y), k * (x + y))


def map_unit_to_triangle(p: Point) -> Point:
    """Original triangle → T: rotate 45° clockwise, scale by π/√2, shift by +π/2."""
    x, y = float(p[0]), float(p[1])
    k = PI / SQRT2 / SQRT2
    return Point(k * (x + y) + 0.5 * PI, k * (y - x) + 0.5 * PI)


def triangle_axis_to_T(x_orig: float) -> float:
    """x-coordinate in T of the point ``(x_orig, 0)`` on the symmetry axis."""
    return 0.5 * PI * x_orig + 0.5 * PI


def T_to_triangle_axis(x_T: float) -> float:
    return (2.0 / PI) * (x_T - 0.5 * PI)
