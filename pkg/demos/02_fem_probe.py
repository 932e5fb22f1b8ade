"""Finite-element torsion and ground-state maxima on convex polygons.

Checks the FEM against the certified values on the two canonical domains,
then looks at a few triangles where no closed form exists.
"""
import math
import time

from maxloc import DomainSpec, certify, fem

LEVEL = 5


def maxima(domain, level=LEVEL):
    system = fem.assemble(fem.mesh_polygon(domain, level))
    t = fem.locate_max(fem.solve_torsion(system)).location_point
    g_field, lam = fem.solve_groundstate(system)
    g = fem.locate_max(g_field).location_point
    return t, g, lam


for kind in ("half_disk", "right_isosceles"):
    t0 = time.perf_counter()
    t, g, lam = maxima(DomainSpec(kind))
    exact_t = certify.certified_max(kind, "torsion").location_point.x
    exact_g = certify.certified_max(kind, "groundstate").location_point.x
    print(f"{kind:16s} torsion {t.x:.5f} (exact {exact_t:.5f})  "
          f"ground state {g.x:.5f} (exact {exact_g:.5f})  lambda1 {lam:.4f}  "
          f"[{time.perf_counter() - t0:.1f}s]")

# triangles with apex (p, q); the base is [0, 1] on the x-axis
print("\napex          torsion max           ground-state max      distance")
for apex in [(0.5, 0.866), (0.35, 0.75), (0.2, 0.5), (0.8, 0.3), (0.0, 1.0)]:
    dom = DomainSpec.polygon([(0, 0), (1, 0), apex])
    t, g, _ = maxima(dom)
    print(f"{apex!s:12s}  ({t.x:.4f}, {t.y:.4f})      ({g.x:.4f}, {g.y:.4f})      "
          f"{math.hypot(t.x - g.x, t.y - g.y):.1e}")
