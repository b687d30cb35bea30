import pytest

from srquotient.arrangement import RE_A, ArrangementSpec
from srquotient.corpus import decoupled_join
from srquotient.poset import FinitePoset, SimplicialComplexData


def twin_triangles_poset() -> FinitePoset:
    """Three vertices, four edges (two of them parallel between b and c) and
    two triangles sharing the same three edges."""
    cov = [("0", "a"), ("0", "b"), ("0", "c"),
           ("a", "l1"), ("b", "l1"), ("b", "l2"), ("c", "l2"),
           ("a", "l3"), ("c", "l3"), ("b", "l4"), ("c", "l4")]
    for T in ("T1", "T2"):
        cov += [("l1", T), ("l2", T), ("l3", T)]
    return FinitePoset(["0", "a", "b", "c", "l1", "l2", "l3", "l4", "T1", "T2"], cov)


# six-vertex triangulation of the real projective plane
RP2_FACETS = [["1", "2", "3"], ["1", "3", "4"], ["1", "4", "5"], ["1", "5", "6"], ["1", "2", "6"],
              ["2", "3", "5"], ["2", "4", "5"], ["2", "4", "6"], ["3", "4", "6"], ["3", "5", "6"]]


@pytest.fixture
def re_a() -> ArrangementSpec:
    return RE_A


@pytest.fixture
def twin() -> FinitePoset:
    return twin_triangles_poset()


@pytest.fixture
def rp2() -> SimplicialComplexData:
    return SimplicialComplexData.from_facets(RP2_FACETS)


@pytest.fixture
def k33():
    # join of two free Z/3-orbits of 3 points each: the complete bipartite graph
    return decoupled_join([[3], [3]])


# -- acceptance reporting ------------------------------------------------------
# Tests marked ``criterion(label, title)`` get one PASS/FAIL/XFAIL line each in
# the terminal summary.

_CRITERIA: dict[str, list] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    label, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        if hasattr(rep, "wasxfail"):
            status = "XFAIL" if rep.skipped else "XPASS"
        else:
            status = "PASS" if rep.passed else "FAIL"
        _CRITERIA[label] = [status, title, rep.duration]


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_CRITERIA, key=lambda s: (int(s.rstrip("*")), s)):
        status, title, dur = _CRITERIA[label]
        terminalreporter.write_line(f"criterion {label:<3} {status:<5} {title} ({dur:.1f}s)")
