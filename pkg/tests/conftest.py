import pytest

from maxloc import DomainSpec, mapped_triangle
from maxloc import fem


class Solved:
    """Level-6 mesh, system and solutions for one domain, computed once per session."""

    def __init__(self, domain, level=6):
        self.mesh = fem.mesh_polygon(domain, level)
        self.system = fem.assemble(self.mesh)
        self._torsion = None
        self._gs = None

    @property
    def torsion(self):
        if self._torsion is None:
            self._torsion = fem.solve_torsion(self.system)
        return self._torsion

    @property
    def groundstate(self):
        if self._gs is None:
            self._gs = fem.solve_groundstate(self.system)
        return self._gs


@pytest.fixture(scope="session")
def solved():
    cache = {}

    def get(kind, level=6):
        key = (kind, level)
        if key not in cache:
            domain = mapped_triangle() if kind == "mapped_triangle" else DomainSpec(kind)
            cache[key] = Solved(domain, level)
        return cache[key]

    return get


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome
    elif "test_acceptance.py::test_criterion_" in report.nodeid and report.failed:
        _acceptance.setdefault(report.nodeid.split("::")[-1], "error")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        status = "PASS" if _acceptance[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
