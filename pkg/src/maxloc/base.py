"""Small value types shared across modules."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .errors import DomainError, NonconvexPolygonError


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError(f"non-finite point ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y

    def __getitem__(self, i):
        return (self.x, self.y)[i]


@dataclass(frozen=True)
class Bracket:
    """Closed interval ``[lo, hi]`` with ``lo < hi``."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("bracket endpoints must be finite")
        if not self.lo < self.hi:
            raise ValueError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")

    @classmethod
    def around(cls, x: float) -> "Bracket":
        """The narrowest bracket strictly containing ``x``: one ulp each side."""
        return cls(math.nextafter(x, -math.inf), math.nextafter(x, math.inf))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class BoundedValue:
    """A partial-sum value with a rigorous absolute truncation bound.

    The exact quantity lies in ``[value - bound, value + bound]``.
    """

    value: float
    bound: float = 0.0
    terms_used: int = 0

    def __post_init__(self):
        if not (self.bound >= 0.0 and math.isfinite(self.bound)):
            raise ValueError(f"bound must be finite and >= 0, got {self.bound}")

    @property
    def lo(self) -> float:
        return self.value - self.bound

    @property
    def hi(self) -> float:
        return self.value + self.bound


DOMAIN_KINDS = ("half_disk", "right_isosceles", "unit_disk", "polygon")


@dataclass(frozen=True)
class DomainSpec:
    kind: str
    vertices: tuple = ()

    def __post_init__(self):
        if self.kind not in DOMAIN_KINDS:
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.kind == "polygon":
            verts = tuple(p if isinstance(p, Point) else Point(*p) for p in self.vertices)
            object.__setattr__(self, "vertices", verts)
            check_convex_ccw(verts)
        elif self.vertices:
            raise ValueError("vertices are only accepted for polygon domains")

    @classmethod
    def polygon(cls, vertices: Sequence) -> "DomainSpec":
        return cls("polygon", tuple(vertices))

    @property
    def curved(self) -> bool:
        return self.kind in ("half_disk", "unit_disk")

    def bounding_box(self):
        """Return ``(xmin, xmax, ymin, ymax)``."""
        if self.kind == "half_disk":
            return 0.0, 1.0, -1.0, 1.0
        if self.kind == "unit_disk":
            return -1.0, 1.0, -1.0, 1.0
        verts = self.corner_points()
        xs = [p.x for p in verts]
        ys = [p.y for p in verts]
        return min(xs), max(xs), min(ys), max(ys)

    def corner_points(self) -> List[Point]:
        if self.kind == "right_isosceles":
            return [Point(0.0, -1.0), Point(1.0, 0.0), Point(0.0, 1.0)]
        if self.kind == "polygon":
            return list(self.vertices)
        raise ValueError(f"{self.kind} has a curved boundary")


def mapped_triangle() -> DomainSpec:
    """The triangle ``{0 < y < x < pi}`` as a polygon domain."""
    return DomainSpec.polygon([(0.0, 0.0), (math.pi, 0.0), (math.pi, math.pi)])


def check_convex_ccw(vertices: Sequence[Point]) -> None:
    n = len(vertices)
    if n < 3:
        raise NonconvexPolygonError("a polygon needs at least 3 vertices")
    strict = 0
    for i in range(n):
        a, b, c = vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]
        cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x)
        if cross < 0:
            raise NonconvexPolygonError(
                f"polygon is not convex and counterclockwise at vertex {(i + 1) % n}")
        if cross > 0:
            strict += 1
    if strict < 3:
        raise NonconvexPolygonError("polygon is degenerate (fewer than 3 strict turns)")


@dataclass
class MaxReport:
    """Where a maximum sits and how sure we are about it.

    ``location`` is the x-range along the symmetry axis in original-domain
    coordinates (for FEM results, a heuristic window of width ``h_max``).
    """

    problem: str
    location: Bracket
    location_point: Point
    value: float
    certified: bool
    evaluations: int = 0
    method: str = ""
    mapped_location: Optional[Bracket] = None
    extra: dict = field(default_factory=dict)
