"""Exit criteria, one test per criterion (``test_criterion_NN_*``).

A PASS/FAIL line per criterion is printed in the terminal summary.
"""
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from maxloc import certify, fem
from maxloc import closedform as cf
from maxloc.base import Point
from maxloc.certify import NEGATIVE, POSITIVE, certified_sign
from maxloc.cli import RunConfig, cmd_sweep
from maxloc.base import DomainSpec

J11_SQ = 3.8317059702075123 ** 2
rng = np.random.default_rng(7)


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_criterion_01_halfdisk_torsion():
    rep, dt = timed(lambda: certify.torsion_max_halfdisk(1e-7))
    assert rep.certified
    assert rep.location.width <= 1e-7
    assert f"{rep.location.mid:.5f}" == "0.48022"
    assert rep.location_point.y == 0.0
    assert dt < 5.0


def test_criterion_02_halfdisk_groundstate():
    rep, dt = timed(certify.groundstate_max_halfdisk)
    assert rep.certified and rep.location.width <= 1e-12
    assert f"{rep.location_point.x:.5f}" == "0.48051"
    assert dt < 1.0


def test_criterion_03_triangle_torsion():
    rep, dt = timed(lambda: certify.torsion_max_triangle(1e-7))
    assert rep.certified
    assert f"{rep.mapped_location.mid:.6f}" == "2.186053"
    assert f"{rep.location.mid:.5f}" == "0.39168"
    assert dt < 30.0


def test_criterion_04_triangle_groundstate():
    rep, dt = timed(certify.groundstate_max_triangle)
    assert f"{rep.location_point.x:.5f}" == "0.39183"
    assert dt < 1.0


def test_criterion_05_sign_checks():
    plus = cf.triangle_torsion_symmetry_deriv(2.1860525, 1e-9)
    minus = cf.triangle_torsion_symmetry_deriv(2.1860530, 1e-9)
    assert plus.terms_used >= 20 and minus.terms_used >= 20
    assert certified_sign(plus) == POSITIVE
    assert certified_sign(minus) == NEGATIVE
    assert certified_sign(certify.halfdisk_torsion_deriv_bounded(0.480219)) == POSITIVE
    assert certified_sign(certify.halfdisk_torsion_deriv_bounded(0.480220)) == NEGATIVE


def test_criterion_06_ordering_gap():
    hd = certify.torsion_max_halfdisk().location.mid - certify.groundstate_max_halfdisk().location.mid
    tr = certify.torsion_max_triangle().location.mid - certify.groundstate_max_triangle().location.mid
    assert hd < 0 and 2.0e-4 <= abs(hd) <= 4.0e-4
    assert tr < 0 and 1.0e-4 <= abs(tr) <= 2.0e-4


def _lap(f, x, y, h):
    return (f(x + h, y) + f(x - h, y) + f(x, y + h) + f(x, y - h) - 4 * f(x, y)) / h ** 2


def test_criterion_07_pde_residuals():
    hd = []
    while len(hd) < 200:
        x, y = rng.uniform(0, 1), rng.uniform(-1, 1)
        if x > 0.05 and math.hypot(x, y) < 0.95:
            hd.append((x, y))
    T = []
    while len(T) < 200:
        x, y = rng.uniform(0, math.pi, 2)
        if min(x, math.pi - x, y, (x - y) / math.sqrt(2)) > 1e-3:
            T.append((x, y))
    u = lambda x, y: cf.halfdisk_torsion(Point(x, y))
    v = lambda x, y: cf.halfdisk_groundstate(Point(x, y))
    lam = cf.groundstate_frequency() ** 2
    w = lambda x, y: cf.triangle_groundstate(Point(x, y))
    ut = lambda x, y: cf.triangle_torsion(Point(x, y), 1e-12).value
    for x, y in hd:
        assert abs(_lap(u, x, y, 1e-4) + 1) <= 1e-4
        assert abs(_lap(v, x, y, 1e-4) + lam * v(x, y)) <= 1e-3
    for x, y in T:
        assert abs(_lap(w, x, y, 1e-4) + 5 * w(x, y)) <= 1e-6
    for x, y in [p for p in T if min(p[0], math.pi - p[0], p[1], (p[0] - p[1]) / math.sqrt(2)) > 0.3][:40]:
        assert abs(_lap(ut, x, y, 1e-3) + 1) <= 1e-3
    # boundary vanishing, away from corner neighbourhoods of radius 1e-3
    d = 1e-8
    for t in rng.uniform(-math.pi / 2 + 2e-3, math.pi / 2 - 2e-3, 100):
        p = Point((1 - d) * math.cos(t), (1 - d) * math.sin(t))
        assert abs(cf.halfdisk_torsion(p)) <= 1e-6 and abs(cf.halfdisk_groundstate(p)) <= 1e-6
    for y in rng.uniform(1e-3, 1 - 1e-3, 100) * rng.choice([-1, 1], 100):
        p = Point(d, y)
        assert abs(cf.halfdisk_torsion(p)) <= 1e-6 and abs(cf.halfdisk_groundstate(p)) <= 1e-6
    for s in rng.uniform(1e-3, math.pi - 1e-3, 100):
        for p in (Point(s, d), Point(math.pi - d, s), Point(s, s - d)):
            assert abs(cf.triangle_groundstate(p)) <= 1e-6


@pytest.mark.slow
def test_criterion_08_fem_consistency(solved):
    checks = [
        ("half_disk", "torsion", certify.torsion_max_halfdisk()),
        ("half_disk", "groundstate", certify.groundstate_max_halfdisk()),
        ("right_isosceles", "torsion", certify.torsion_max_triangle()),
        ("right_isosceles", "groundstate", certify.groundstate_max_triangle()),
    ]
    for kind, problem, exact in checks:
        s, dt = timed(lambda: solved(kind))
        field, dt2 = timed(lambda: s.torsion if problem == "torsion" else s.groundstate[0])
        assert dt + dt2 < 180
        p = fem.locate_max(field).location_point
        assert math.hypot(p.x - exact.location_point.x, p.y) < 2e-3, (kind, problem, p)
    disk = solved("unit_disk")
    rep = fem.locate_max(disk.torsion)
    assert abs(rep.value - 0.25) <= 0.01 * 0.25
    assert math.hypot(*rep.location_point) < 1e-3


@pytest.mark.slow
def test_criterion_09_eigenvalues(solved):
    assert abs(solved("mapped_triangle").groundstate[1] - 5) <= 0.05
    assert abs(solved("half_disk").groundstate[1] - J11_SQ) <= 0.01 * J11_SQ


@pytest.mark.slow
@pytest.mark.parametrize("kind", ["half_disk", "right_isosceles"])
def test_criterion_10_affine_invariance(solved, kind):
    s = solved(kind)
    lam = s.groundstate[1]
    for frac in (0.25, 0.5, 0.75):
        reps = [fem.locate_max(fem.solve_affine(s.system, fem.AffineProblem(a, frac * lam)))
                for a in (1.0, 2.0, 10.0)]
        assert len({r.extra["vertex"] for r in reps}) == 1
        for r in reps[1:]:
            assert abs(r.location_point.x - reps[0].location_point.x) <= 1e-10
            assert abs(r.location_point.y - reps[0].location_point.y) <= 1e-10


@pytest.mark.slow
@pytest.mark.parametrize("kind", ["half_disk", "right_isosceles"])
def test_criterion_11_sweep_endpoints(solved, kind):
    s = solved(kind)
    rows = cmd_sweep(RunConfig("sweep", DomainSpec(kind), problem="affine", a=1.0,
                               b_values=[0.0, 0.98], refinement_level=6, output_path=None,
                               format="json"), stdout=open("/dev/null", "w"))
    t = fem.locate_max(s.torsion)
    assert (rows[0]["x"], rows[0]["y"], rows[0]["value"]) == \
        (t.location_point.x, t.location_point.y, t.value)
    lam = s.groundstate[1]
    b0 = fem.solve_affine(s.system, fem.AffineProblem(1.0, 0.0))
    assert np.array_equal(b0.values, s.torsion.values)
    near = fem.locate_max(fem.solve_affine(s.system, fem.AffineProblem(1.0, 0.98 * lam))).location_point
    g = fem.locate_max(s.groundstate[0]).location_point
    assert math.hypot(near.x - g.x, near.y - g.y) < 5e-3


COMMANDS = [
    ["maxima", "--domain", "right-isosceles", "--problem", "torsion"],
    ["fem", "--domain", "half-disk", "--problem", "groundstate", "--level", "4"],
    ["sweep", "--domain", "half-disk", "--a", "2", "--b-fracs", "0,0.5,0.98", "--level", "4",
     "--format", "csv"],
    ["plot", "--domain", "right-isosceles", "--problem", "torsion"],
]


@pytest.mark.parametrize("args", COMMANDS, ids=[c[0] for c in COMMANDS])
def test_criterion_12_determinism(tmp_path, args):
    outs = []
    for i in range(2):
        path = tmp_path / f"out{i}"
        proc = subprocess.run([sys.executable, "-m", "maxloc", *args, "--out", str(path)],
                              capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] and len(outs[0]) > 0
