"""Fan triangulation of convex domains and uniform 4-way refinement."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..base import DomainSpec, check_convex_ccw, Point
from ..errors import DomainError

MAX_LEVEL = 8
BASE_CURVED_SEGMENTS = 32
# share of the 32 starting boundary segments given to the half-disk arc
_HALFDISK_ARC_SEGMENTS = 20
_ON_CIRCLE = 1e-12


@dataclass
class Mesh:
    """Triangulation: ``vertices`` (n, 2), ``triangles`` (m, 3) counterclockwise."""

    vertices: np.ndarray
    triangles: np.ndarray
    is_boundary: np.ndarray
    domain: DomainSpec | None = None
    level: int = 0
    # vertices lying on a curved arc (midpoints of edges between two of these get projected)
    on_arc: np.ndarray | None = field(default=None, repr=False)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    def signed_areas(self) -> np.ndarray:
        p = self.vertices[self.triangles]
        e1 = p[:, 1] - p[:, 0]
        e2 = p[:, 2] - p[:, 0]
        return 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])

    @property
    def area(self) -> float:
        return float(self.signed_areas().sum())

    @cached_property
    def h_max(self) -> float:
        p = self.vertices[self.triangles]
        lengths = np.linalg.norm(p - np.roll(p, -1, axis=1), axis=2)
        return float(lengths.max())

    def directed_edges(self) -> np.ndarray:
        t = self.triangles
        return np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])

    def boundary_edges(self) -> np.ndarray:
        """Edges belonging to exactly one triangle, in their triangle's orientation."""
        e = self.directed_edges()
        key = np.sort(e, axis=1)
        _, inv, counts = np.unique(key, axis=0, return_inverse=True, return_counts=True)
        return e[counts[inv.ravel()] == 1]

    @cached_property
    def neighbors(self):
        """CSR-style ``(indptr, indices)`` vertex adjacency."""
        e = self.directed_edges()
        both = np.unique(np.concatenate([e, e[:, ::-1]]), axis=0)
        indptr = np.searchsorted(both[:, 0], np.arange(self.n_vertices + 1))
        return indptr, both[:, 1]

    def vertex_neighbors(self, i: int) -> np.ndarray:
        indptr, idx = self.neighbors
        return idx[indptr[i]:indptr[i + 1]]

    def check(self) -> None:
        """Raise ``AssertionError`` if any structural invariant is violated."""
        assert np.all(self.signed_areas() > 0), "non-positive triangle area"
        e = self.directed_edges()
        key = np.sort(e, axis=1)
        uniq, inv, counts = np.unique(key, axis=0, return_inverse=True, return_counts=True)
        assert counts.max() <= 2, "edge shared by more than two triangles"
        # interior edges: the two copies must run in opposite directions
        fwd = (e[:, 0] < e[:, 1]).astype(int)
        per_edge = np.bincount(inv.ravel(), weights=fwd, minlength=len(uniq))
        assert np.all(per_edge[counts == 2] == 1), "shared edge with equal orientation"
        bverts = np.unique(self.boundary_edges())
        flagged = np.flatnonzero(self.is_boundary)
        assert np.array_equal(bverts, flagged), "boundary flags disagree with boundary edges"


def _fan(points: np.ndarray, center: np.ndarray, on_arc: np.ndarray) -> tuple:
    n = len(points)
    verts = np.vstack([points, center[None, :]])
    c = n
    tris = np.array([[i, (i + 1) % n, c] for i in range(n)], dtype=np.int64)
    is_b = np.ones(n + 1, dtype=bool)
    is_b[c] = False
    return verts, tris, is_b, np.append(on_arc, False)


def _initial(domain: DomainSpec):
    if domain.kind == "unit_disk":
        t = 2 * math.pi * np.arange(BASE_CURVED_SEGMENTS) / BASE_CURVED_SEGMENTS
        pts = np.column_stack([np.cos(t), np.sin(t)])
        return _fan(pts, np.zeros(2), np.ones(len(pts), dtype=bool))
    if domain.kind == "half_disk":
        na = _HALFDISK_ARC_SEGMENTS
        nf = BASE_CURVED_SEGMENTS - na
        t = -0.5 * math.pi + math.pi * np.arange(na + 1) / na
        arc = np.column_stack([np.cos(t), np.sin(t)])
        arc[0] = (0.0, -1.0)
        arc[-1] = (0.0, 1.0)
        ys = 1.0 - 2.0 * np.arange(1, nf) / nf
        flat = np.column_stack([np.zeros_like(ys), ys])
        pts = np.vstack([arc, flat])
        on_arc = np.r_[np.ones(na + 1, dtype=bool), np.zeros(nf - 1, dtype=bool)]
        return _fan(pts, _polygon_centroid(pts), on_arc)
    pts = np.array([[p.x, p.y] for p in domain.corner_points()], dtype=float)
    return _fan(pts, _polygon_centroid(pts), np.zeros(len(pts), dtype=bool))


def _polygon_centroid(pts: np.ndarray) -> np.ndarray:
    x, y = pts[:, 0], pts[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    cross = x * yn - xn * y
    a = cross.sum() / 2.0
    return np.array([((x + xn) * cross).sum(), ((y + yn) * cross).sum()]) / (6.0 * a)


def refine(mesh: Mesh) -> Mesh:
    """Split every triangle into four through its edge midpoints."""
    t = mesh.triangles
    m = len(t)
    e = np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
    key = np.sort(e, axis=1)
    uniq, inv, counts = np.unique(key, axis=0, return_inverse=True, return_counts=True)
    inv = inv.ravel()
    nv = mesh.n_vertices
    mids = 0.5 * (mesh.vertices[uniq[:, 0]] + mesh.vertices[uniq[:, 1]])
    edge_boundary = counts == 1
    on_arc = mesh.on_arc if mesh.on_arc is not None else np.zeros(nv, dtype=bool)
    curved = edge_boundary & on_arc[uniq[:, 0]] & on_arc[uniq[:, 1]]
    if mesh.domain is not None and mesh.domain.kind == "half_disk":
        flat = (np.abs(mesh.vertices[uniq[:, 0], 0]) < _ON_CIRCLE) & \
               (np.abs(mesh.vertices[uniq[:, 1], 0]) < _ON_CIRCLE)
        curved &= ~flat
    if curved.any():
        mids[curved] /= np.linalg.norm(mids[curved], axis=1)[:, None]
    mid_id = nv + inv
    a, b, c = t[:, 0], t[:, 1], t[:, 2]
    ab, bc, ca = mid_id[:m], mid_id[m:2 * m], mid_id[2 * m:]
    tris = np.concatenate([
        np.column_stack([a, ab, ca]),
        np.column_stack([ab, b, bc]),
        np.column_stack([ca, bc, c]),
        np.column_stack([ab, bc, ca]),
    ])
    return Mesh(
        vertices=np.vstack([mesh.vertices, mids]),
        triangles=tris,
        is_boundary=np.concatenate([mesh.is_boundary, edge_boundary]),
        domain=mesh.domain,
        level=mesh.level + 1,
        on_arc=np.concatenate([on_arc, curved]),
    )


def mesh_polygon(domain: DomainSpec, refinement_level: int) -> Mesh:
    """Fan-triangulate ``domain`` from its centroid and refine uniformly.

    Curved domains start from an inscribed 32-gon (the half-disk splits it
    20 arc / 12 flat), so after ``L`` levels the boundary has ``2**(L+5)``
    segments with every arc vertex on the true circle.
    """
    if not (isinstance(refinement_level, (int, np.integer)) and 0 <= refinement_level <= MAX_LEVEL):
        raise DomainError(f"refinement level must be an integer in [0, {MAX_LEVEL}]")
    if domain.kind == "polygon":
        check_convex_ccw(domain.vertices)
    verts, tris, is_b, on_arc = _initial(domain)
    mesh = Mesh(verts, tris, is_b, domain=domain, level=0, on_arc=on_arc)
    for _ in range(refinement_level):
        mesh = refine(mesh)
    return mesh


def read_polygon_file(path) -> DomainSpec:
    """Read whitespace-separated ``x y`` lines (``#`` comments) into a polygon domain."""
    pts = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            parts = s.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected two numbers, got {s!r}")
            pts.append(Point(float(parts[0]), float(parts[1])))
    return DomainSpec.polygon(pts)
