"""Piecewise-linear stiffness and mass matrices."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from ..errors import DegenerateTriangleError
from .mesh import Mesh

MIN_AREA = 1e-14
_MASS_PATTERN = (np.ones((3, 3)) + np.eye(3)) / 12.0


def element_stiffness(coords) -> np.ndarray:
    """3x3 matrix of ∫ ∇φ_i·∇φ_j over one triangle."""
    p = np.asarray(coords, dtype=float)
    return _stiffness_batch(p[None])[0]


def element_mass(coords) -> np.ndarray:
    """3x3 matrix of ∫ φ_i φ_j over one triangle (area/6 diagonal, area/12 off)."""
    p = np.asarray(coords, dtype=float)
    return _area_batch(p[None])[0] * _MASS_PATTERN


def _area_batch(p):
    e1 = p[:, 1] - p[:, 0]
    e2 = p[:, 2] - p[:, 0]
    return 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])


def _stiffness_batch(p):
    area = _area_batch(p)
    # gradient of φ_i is the rotated opposite edge over 2·area
    d = np.stack([p[:, 2] - p[:, 1], p[:, 0] - p[:, 2], p[:, 1] - p[:, 0]], axis=1)
    return np.einsum("eik,ejk->eij", d, d) / (4.0 * area)[:, None, None]


@dataclass
class SparseSystem:
    """Interior-vertex Galerkin matrices.

    ``stiffness`` and ``mass`` act on interior unknowns only; ``load`` holds
    ``∫ φ_i`` (the row sums of the full mass matrix restricted to interior
    rows); ``interior`` lists the mesh vertex of every system row.
    """

    mesh: Mesh
    stiffness: sp.csr_matrix
    mass: sp.csr_matrix
    load: np.ndarray
    interior: np.ndarray
    full_mass: sp.csr_matrix
    cache: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return len(self.interior)

    @property
    def interior_index(self) -> dict:
        return {int(v): i for i, v in enumerate(self.interior)}

    def to_vertices(self, u: np.ndarray) -> np.ndarray:
        full = np.zeros(self.mesh.n_vertices)
        full[self.interior] = u
        return full


def _global(mesh, local, n):
    t = mesh.triangles
    rows = np.repeat(t, 3, axis=1).ravel()
    cols = np.tile(t, (1, 3)).ravel()
    return sp.coo_matrix((local.ravel(), (rows, cols)), shape=(n, n)).tocsr()


def assemble_full(mesh: Mesh):
    """Full (boundary included) stiffness and mass matrices."""
    p = mesh.vertices[mesh.triangles]
    area = _area_batch(p)
    bad = np.flatnonzero(area < MIN_AREA)
    if bad.size:
        raise DegenerateTriangleError(f"{bad.size} triangles with area < {MIN_AREA} (first: {bad[0]})")
    n = mesh.n_vertices
    K = _global(mesh, _stiffness_batch(p), n)
    M = _global(mesh, area[:, None, None] * _MASS_PATTERN, n)
    return K, M


def assemble(mesh: Mesh) -> SparseSystem:
    K, M = assemble_full(mesh)
    interior = np.flatnonzero(~mesh.is_boundary)
    Kii = K[interior][:, interior].tocsr()
    Mii = M[interior][:, interior].tocsr()
    load = np.asarray(M[interior].sum(axis=1)).ravel()
    return SparseSystem(mesh, Kii, Mii, load, interior, M)
