"""Bessel function J1, its derivative, and their first positive zeros.

Everything is summed from the Maclaurin series

    J1(z) = sum_k (-1)^k (z/2)^(2k+1) / (k! (k+1)!)

which converges fast on the short range of arguments needed here.  Below
z = 4 the partial sums are accumulated in double precision (the largest
term is under 4, so cancellation costs at most a few ulps).  Above that the
terms grow to ~1e5 near z = 16 and the sum is carried in 40-digit decimal
arithmetic instead.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext

import numpy as np

from .base import Bracket
from .errors import DomainError, NoSignChangeError

Z_MAX = 16.0
TERM_CUTOFF = 1e-17
_FLOAT_LIMIT = 4.0

ZERO_OF_J1 = "zero_of_J1"
ZERO_OF_J1_PRIME = "zero_of_J1_prime"


def _check(z):
    if not (0.0 <= z <= Z_MAX):
        raise DomainError(f"argument {z!r} outside [0, {Z_MAX}]")


def _series(z, prime):
    # k-th coefficient multiplier: (2k+1)/2 for the derivative, z/2 otherwise
    if z <= _FLOAT_LIMIT:
        q = 0.25 * z * z
        t = 1.0
        s = 0.5 if prime else 0.5 * z
        k = 0
        while True:
            k += 1
            t *= -q / (k * (k + 1))
            term = 0.5 * (2 * k + 1) * t if prime else 0.5 * z * t
            if abs(term) < TERM_CUTOFF:
                return s
            s += term
    with localcontext() as ctx:
        ctx.prec = 40
        zd = Decimal(z)
        q = zd * zd / 4
        t = Decimal(1)
        half = Decimal(1) / 2
        s = half if prime else half * zd
        cutoff = Decimal(TERM_CUTOFF)
        k = 0
        while True:
            k += 1
            t *= -q / (k * (k + 1))
            term = half * (2 * k + 1) * t if prime else half * zd * t
            # alternating remainder is only bounded once terms decrease
            if abs(term) < cutoff and k > z:
                return float(s)
            s += term


def bessel_j1(z: float) -> float:
    """J1(z) for 0 <= z <= 16, absolute error below 1e-14."""
    z = float(z)
    _check(z)
    return _series(z, prime=False)


def bessel_j1_prime(z: float) -> float:
    """J1'(z) for 0 <= z <= 16 from the term-wise differentiated series."""
    z = float(z)
    _check(z)
    return _series(z, prime=True)


def bessel_j1_array(z):
    """Vectorised J1 for arrays with entries in [0, 4] (plot grids)."""
    z = np.asarray(z, dtype=float)
    if z.size and (z.min() < 0.0 or z.max() > _FLOAT_LIMIT):
        raise DomainError("bessel_j1_array only accepts arguments in [0, 4]")
    q = 0.25 * z * z
    t = np.ones_like(z)
    s = 0.5 * z
    # 4^(2k+1)/(k!(k+1)!) < 1e-17 for k >= 23
    for k in range(1, 24):
        t = t * (-q / (k * (k + 1)))
        s = s + 0.5 * z * t
    return s


@dataclass(frozen=True)
class BesselZero:
    value: float
    kind: str
    residual: float


_TARGETS = {ZERO_OF_J1: bessel_j1, ZERO_OF_J1_PRIME: bessel_j1_prime}


def find_zero(kind: str, seed_interval: Bracket, width: float = 1e-13) -> BesselZero:
    """Bisect ``J1`` or ``J1'`` on a sign-changing seed down to ``width``."""
    try:
        f = _TARGETS[kind]
    except KeyError:
        raise ValueError(f"unknown zero kind {kind!r}") from None
    lo, hi = float(seed_interval.lo), float(seed_interval.hi)
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return BesselZero(lo, kind, 0.0)
    if fhi == 0.0:
        return BesselZero(hi, kind, 0.0)
    if (flo > 0) == (fhi > 0):
        raise NoSignChangeError(
            f"{kind}: no sign change on [{lo}, {hi}] (values {flo:.3e}, {fhi:.3e})")
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            lo = hi = mid
            break
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    return BesselZero(root, kind, abs(f(root)))


J1_ZERO_SEED = Bracket(3.8, 3.9)
J1_PRIME_ZERO_SEED = Bracket(1.8, 1.9)


def j11() -> BesselZero:
    """First positive zero of J1."""
    return find_zero(ZERO_OF_J1, J1_ZERO_SEED)


def j11_prime() -> BesselZero:
    """First positive zero of J1'."""
    return find_zero(ZERO_OF_J1_PRIME, J1_PRIME_ZERO_SEED)
