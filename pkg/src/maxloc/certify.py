"""Certified location of maxima along a symmetry axis.

A maximum is bracketed by bisection on the sign of the derivative, where a
sign only counts once the evaluation's error bound is smaller than its
magnitude.  Concavity of the profile (of ``u(x, 0)`` on the half-disk, of
``sqrt(u)`` on the triangle) makes the bracketed critical point the global
maximum; that fact, like the maximum lying on the symmetry axis at all, is
taken as given.
"""
from __future__ import annotations

import math
from typing import Callable

from . import closedform as cf
from .base import BoundedValue, Bracket, MaxReport, Point
from .errors import BadSeedError, UndecidableError, UnsupportedProblemError
from .special import bessel_j1, j11, j11_prime

POSITIVE = "positive"
NEGATIVE = "negative"
UNDECIDED = "undecided"
# internal: an error-free evaluation that is exactly zero
EXACT_ZERO = "zero"

DEFAULT_WIDTH = 1e-7
INITIAL_TOL = 1e-9
MAX_TIGHTENINGS = 8
# fixed rounding allowance for closed-form derivatives
CLOSED_FORM_BOUND = 1e-12
# |computed zero - true zero|: half the 1e-13 bisection width plus rounding
BESSEL_ZERO_ERROR = 1e-13

HALFDISK_SEED = Bracket(0.4, 0.6)
TRIANGLE_SEED_T = Bracket(2.0, 2.4)

BoundedDerivative = Callable[[float, float], BoundedValue]


def certified_sign(v: BoundedValue) -> str:
    if v.value - v.bound > 0:
        return POSITIVE
    if v.value + v.bound < 0:
        return NEGATIVE
    return UNDECIDED


def halve(tol: float) -> float:
    return 0.5 * tol


class _SignOracle:
    def __init__(self, deriv, tol, tol_schedule, max_tightenings):
        self.deriv = deriv
        self.tol = tol
        self.tol_schedule = tol_schedule
        self.max_tightenings = max_tightenings
        self.evaluations = 0

    def __call__(self, x):
        tol = self.tol
        for attempt in range(self.max_tightenings + 1):
            self.evaluations += 1
            v = self.deriv(x, tol)
            if v.value == 0.0 and v.bound == 0.0:
                return EXACT_ZERO
            sign = certified_sign(v)
            if sign != UNDECIDED:
                # keep the tightened tolerance; later points sit even closer to the root
                self.tol = tol
                return sign
            if attempt < self.max_tightenings:
                tol = self.tol_schedule(tol)
        raise UndecidableError(
            f"derivative sign at x={x!r} undecided after {self.max_tightenings} tightenings "
            f"(final tol {tol:.3e})")


def bisect_max(deriv: BoundedDerivative, seed: Bracket, width: float = DEFAULT_WIDTH,
               tol_schedule: Callable[[float], float] = halve, *,
               initial_tol: float = INITIAL_TOL, max_tightenings: int = MAX_TIGHTENINGS,
               problem: str = "fem_generic") -> MaxReport:
    """Bracket the zero of a bounded derivative that changes sign from + to -.

    ``deriv(x, tol)`` must return a :class:`BoundedValue` whose bound is at
    most ``tol``.  The returned report's ``location`` is in the same
    coordinate as ``seed``; ``value`` is left as NaN for the caller to fill.
    """
    if not width > 0:
        raise ValueError("width must be positive")
    sign_at = _SignOracle(deriv, initial_tol, tol_schedule, max_tightenings)
    lo, hi = float(seed.lo), float(seed.hi)
    try:
        s_lo, s_hi = sign_at(lo), sign_at(hi)
    except UndecidableError as exc:
        raise BadSeedError(str(exc)) from exc
    if s_lo != POSITIVE or s_hi != NEGATIVE:
        raise BadSeedError(f"seed [{lo}, {hi}] has derivative signs ({s_lo}, {s_hi}), need (+, -)")
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        s = sign_at(mid)
        if s == EXACT_ZERO:
            # root found exactly; shrink to a certified bracket around it
            a, b = max(lo, mid - 0.25 * width), min(hi, mid + 0.25 * width)
            if sign_at(a) == POSITIVE and sign_at(b) == NEGATIVE:
                lo, hi = a, b
                break
            raise UndecidableError(f"exact zero at {mid!r} but neighbours are not certified")
        if s == POSITIVE:
            lo = mid
        else:
            hi = mid
    loc = Bracket(lo, hi)
    return MaxReport(problem=problem, location=loc, location_point=Point(loc.mid, 0.0),
                     value=math.nan, certified=True, evaluations=sign_at.evaluations,
                     method="certified_bisection", extra={"final_tol": sign_at.tol})


def halfdisk_torsion_deriv_bounded(x: float, tol: float = 0.0) -> BoundedValue:
    return BoundedValue(cf.halfdisk_torsion_axis_deriv(x), CLOSED_FORM_BOUND, 0)


def torsion_max_halfdisk(width: float = DEFAULT_WIDTH, seed: Bracket = HALFDISK_SEED) -> MaxReport:
    rep = bisect_max(halfdisk_torsion_deriv_bounded, seed, width, problem="halfdisk_torsion")
    rep.value = cf.halfdisk_torsion(rep.location_point)
    return rep


def torsion_max_triangle(width: float = DEFAULT_WIDTH, seed_T: Bracket = TRIANGLE_SEED_T) -> MaxReport:
    """Torsion maximum of the original triangle, bisected in T coordinates.

    ``width`` applies in original coordinates (T is longer by π/2 along the axis).
    """
    rep = bisect_max(cf.triangle_torsion_symmetry_deriv, seed_T, width * 0.5 * math.pi,
                     problem="triangle_torsion")
    t_br = rep.location
    rep.mapped_location = t_br
    rep.location = Bracket(cf.T_to_triangle_axis(t_br.lo), cf.T_to_triangle_axis(t_br.hi))
    xt = t_br.mid
    rep.location_point = cf.map_triangle_to_unit(Point(xt, math.pi - xt))
    rep.value = cf.TORSION_SCALE_T * cf.triangle_torsion(Point(xt, math.pi - xt), 1e-12).value
    return rep


def groundstate_max_halfdisk() -> MaxReport:
    """Maximum of ``J1(j11 r) cos θ`` at ``r = j'11 / j11`` on the axis."""
    a, b = j11_prime(), j11()
    d = BESSEL_ZERO_ERROR
    loc = Bracket((a.value - d) / (b.value + d), (a.value + d) / (b.value - d))
    r = a.value / b.value
    return MaxReport(problem="halfdisk_groundstate", location=loc, location_point=Point(r, 0.0),
                     value=bessel_j1(a.value), certified=True, evaluations=0,
                     method="bessel_zero_ratio",
                     extra={"j11": b.value, "j11_prime": a.value})


def groundstate_max_triangle() -> MaxReport:
    """Maximum of the triangle ground state, at ``(2/π) arcsin(1/√3)`` on the axis."""
    x = (2.0 / math.pi) * math.asin(1.0 / math.sqrt(3.0))
    xt = math.asin(1.0 / math.sqrt(3.0)) + 0.5 * math.pi
    return MaxReport(problem="triangle_groundstate", location=Bracket.around(x),
                     location_point=Point(x, 0.0),
                     value=cf.triangle_groundstate(Point(xt, math.pi - xt)), certified=True,
                     evaluations=0, method="closed_form",
                     mapped_location=Bracket.around(xt))


def certified_max(domain: str, problem: str, width: float = DEFAULT_WIDTH) -> MaxReport:
    """Dispatch on ``domain`` in {half_disk, right_isosceles} and ``problem`` in {torsion, groundstate}."""
    table = {
        ("half_disk", "torsion"): lambda: torsion_max_halfdisk(width),
        ("half_disk", "groundstate"): groundstate_max_halfdisk,
        ("right_isosceles", "torsion"): lambda: torsion_max_triangle(width),
        ("right_isosceles", "groundstate"): groundstate_max_triangle,
    }
    try:
        return table[(domain, problem)]()
    except KeyError:
        raise UnsupportedProblemError(
            f"no certified closed form for problem {problem!r} on domain {domain!r}") from None
