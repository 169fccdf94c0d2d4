import pytest

from cubapprox.catalog import SURFACES, THREEFOLDS
from cubapprox.search import enumerate_points

CRITERIA = {
    1: "exact curve exponents on the corpus, with sequence deltas",
    2: "surface/threefold classification table with certificates",
    3: "nodal projection cubic soundness and the inversion identity",
    4: "residual conic on the Fermat surface certifies alpha <= 2",
    5: "Liouville floor positive with flat trend across the catalog",
    6: "sieved enumeration equals the oracle; reports are reproducible",
    7: "end-to-end verdicts Consistent for every catalog entry",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes = {}
    for cat in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(cat, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in nodeid:
                num = int(nodeid.rsplit("_", 1)[1].split("[")[0])
                ok = outcomes.get(num, True) and cat == "passed"
                outcomes[num] = ok
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        if num not in outcomes:
            continue
        word = "PASS" if outcomes[num] else "FAIL"
        terminalreporter.write_line(
            f"criterion {num}: {word} - {CRITERIA[num]}")


@pytest.fixture(scope="session")
def surface_streams():
    """Height-100 point streams for the surface catalog, computed once.

    These back the heavy acceptance criteria (Liouville floors and the
    end-to-end verdicts); enumeration dominates the suite runtime.
    """
    return {e.name: enumerate_points(e.hypersurface(), 100)
            for e in SURFACES}


@pytest.fixture(scope="session")
def threefold_streams():
    return {e.name: enumerate_points(e.hypersurface(), 25)
            for e in THREEFOLDS}
