"""Certified maximum points on the half-disk and the right isosceles triangle.

Run with ``python demos/01_certified_maxima.py``.
"""
import math

from maxloc import certify
from maxloc import closedform as cf
from maxloc.special import j11, j11_prime

# Bessel zeros behind the half-disk ground state J1(j11 r) cos(theta)
a, b = j11_prime(), j11()
print(f"j'11 = {a.value:.13f}   (residual {a.residual:.1e})")
print(f"j11  = {b.value:.13f}   (residual {b.residual:.1e})")

# the four maxima, each bracketed along the symmetry axis
for domain in ("half_disk", "right_isosceles"):
    for problem in ("torsion", "groundstate"):
        rep = certify.certified_max(domain, problem)
        print(f"{domain:16s} {problem:12s} x = {rep.location_point.x:.5f}  "
              f"bracket width {rep.location.width:.1e}  certified={rep.certified}")

# the sign checks that pin the torsion maxima down
print()
for x in (0.480219, 0.480220):
    print(f"half-disk  u_x({x:.6f}, 0) = {cf.halfdisk_torsion_axis_deriv(x):+.3e}")
for x in (2.1860525, 2.1860530):
    d = cf.triangle_torsion_symmetry_deriv(x, 1e-9)
    print(f"triangle T d/dx u(x, pi-x) at {x:.7f}: {d.value:+.3e} +/- {d.bound:.1e} "
          f"({d.terms_used} terms)")

# torsion maxima sit slightly left of the ground state maxima
gap_hd = certify.torsion_max_halfdisk().location.mid - certify.groundstate_max_halfdisk().location.mid
gap_tr = certify.torsion_max_triangle().location.mid - certify.groundstate_max_triangle().location.mid
print(f"\ngap on the half-disk: {gap_hd:.3e}, on the triangle: {gap_tr:.3e}")
print(f"ground state on T: x = asin(1/sqrt 3) + pi/2 = {math.asin(1 / math.sqrt(3)) + math.pi / 2:.7f}")
