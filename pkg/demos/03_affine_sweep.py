"""The family -Δu = a + b u, 0 <= b < lambda1.

Scaling out ``a`` leaves the maximum point unchanged; moving ``b`` towards
the first eigenvalue slides it from the torsion maximum to the ground
state maximum.
"""
from maxloc import DomainSpec, fem

mesh = fem.mesh_polygon(DomainSpec("half_disk"), 5)
system = fem.assemble(mesh)
g_field, lam = fem.solve_groundstate(system)
g = fem.locate_max(g_field).location_point
print(f"lambda1 = {lam:.5f}, ground-state max x = {g.x:.5f}")

print("\n b/lambda1    max x      vertex (a=1)  vertex (a=10)")
for frac in (0.0, 0.25, 0.5, 0.75, 0.9, 0.98):
    reps = [fem.locate_max(fem.solve_affine(system, fem.AffineProblem(a, frac * lam)))
            for a in (1.0, 10.0)]
    print(f"  {frac:5.2f}    {reps[0].location_point.x:.5f}    "
          f"{reps[0].extra['vertex']:8d}      {reps[1].extra['vertex']:8d}")
