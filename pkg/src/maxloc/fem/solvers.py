"""Torsion, ground-state and shifted (affine forcing) solves on a P1 system."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import NonConvergenceError, ShiftTooLargeError, DomainError
from .assembly import SparseSystem
from .mesh import Mesh

CG_RTOL = 1e-10
EIG_RTOL = 1e-10
EIG_MAXITER = 500
SHIFT_CAP = 0.99


@dataclass
class Field:
    """Nodal values on ``mesh`` (zero at boundary vertices)."""

    mesh: Mesh
    values: np.ndarray
    label: str = ""


@dataclass(frozen=True)
class AffineProblem:
    """Forcing ``f(z) = a + b z``."""

    a: float = 1.0
    b: float = 0.0

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"a must be positive, got {self.a}")
        if not self.b >= 0:
            raise DomainError(f"b must be non-negative, got {self.b}")


def pcg(matvec, rhs, diag, rtol=CG_RTOL, x0=None, maxiter=None):
    """Jacobi-preconditioned conjugate gradients; stops at ``|r| <= rtol |rhs|``.

    Returns ``(x, iterations)``.
    """
    n = len(rhs)
    maxiter = 10 * n if maxiter is None else maxiter
    inv_d = 1.0 / diag
    x = np.zeros(n) if x0 is None else np.array(x0, dtype=float)
    r = rhs - matvec(x) if x0 is not None else rhs.copy()
    target = rtol * np.linalg.norm(rhs)
    if np.linalg.norm(r) <= target:
        return x, 0
    z = inv_d * r
    p = z.copy()
    rz = r @ z
    for it in range(1, maxiter + 1):
        q = matvec(p)
        alpha = rz / (p @ q)
        x += alpha * p
        r -= alpha * q
        if np.linalg.norm(r) <= target:
            return x, it
        z = inv_d * r
        rz_new = r @ z
        p *= rz_new / rz
        p += z
        rz = rz_new
    raise NonConvergenceError(f"CG did not reach relative residual {rtol} in {maxiter} iterations")


def _shifted(sys: SparseSystem, b: float):
    K, M = sys.stiffness, sys.mass
    if b == 0.0:
        return K.dot, K.diagonal()
    return (lambda v: K @ v - b * (M @ v)), K.diagonal() - b * M.diagonal()


def solve_torsion(sys: SparseSystem) -> Field:
    """Discrete ``-Δu = 1`` with zero boundary values."""
    u, _ = pcg(sys.stiffness.dot, sys.load, sys.stiffness.diagonal())
    return Field(sys.mesh, sys.to_vertices(u), "torsion")


def solve_groundstate(sys: SparseSystem):
    """First Dirichlet eigenpair by inverse power iteration.

    Returns ``(field, lam)`` with the field scaled to a maximum of 1.
    """
    if "groundstate" in sys.cache:
        v, lam = sys.cache["groundstate"]
        return Field(sys.mesh, v.copy(), "groundstate"), lam
    K, M = sys.stiffness, sys.mass
    diag = K.diagonal()
    v = sys.load / math.sqrt(sys.load @ (M @ sys.load))
    w = None
    lam_old = math.inf
    for _ in range(EIG_MAXITER):
        w, _ = pcg(K.dot, M @ v, diag, x0=w)
        Kw, Mw = K @ w, M @ w
        lam = (w @ Kw) / (w @ Mw)
        nrm = math.sqrt(w @ Mw)
        v = w / nrm
        w = v / lam  # warm start: next solution is close to v / lam
        if abs(lam - lam_old) < EIG_RTOL * lam:
            break
        lam_old = lam
    else:
        raise NonConvergenceError(f"inverse iteration did not converge in {EIG_MAXITER} steps")
    if v.sum() < 0:
        v = -v
    v = v / v.max()
    # obtuse fan triangles can leave ~1e-6 negative values next to the boundary
    np.maximum(v, 0.0, out=v)
    full = sys.to_vertices(v)
    sys.cache["groundstate"] = (full, float(lam))
    sys.cache["lambda1"] = float(lam)
    return Field(sys.mesh, full.copy(), "groundstate"), float(lam)


def first_eigenvalue(sys: SparseSystem) -> float:
    if "lambda1" not in sys.cache:
        solve_groundstate(sys)
    return sys.cache["lambda1"]


def solve_affine(sys: SparseSystem, prob: AffineProblem) -> Field:
    """Discrete ``-Δu = a + b u``, requiring ``b <= 0.99 λ1``.

    The unit-forcing problem is solved once per ``b`` and scaled by ``a``, so
    the argmax cannot depend on ``a``.  ``b = 0`` goes through exactly the
    same arithmetic as :func:`solve_torsion`.
    """
    if prob.b > 0.0:
        lam = first_eigenvalue(sys)
        if prob.b > SHIFT_CAP * lam:
            raise ShiftTooLargeError(
                f"b={prob.b} exceeds {SHIFT_CAP} * lambda1 = {SHIFT_CAP * lam}")
    key = ("affine_unit", float(prob.b))
    if key not in sys.cache:
        matvec, diag = _shifted(sys, float(prob.b))
        sys.cache[key], _ = pcg(matvec, sys.load, diag)
    u = sys.cache[key] if prob.a == 1.0 else prob.a * sys.cache[key]
    return Field(sys.mesh, sys.to_vertices(u), f"affine(a={prob.a!r}, b={prob.b!r})")
