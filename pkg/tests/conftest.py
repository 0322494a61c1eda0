from collections import defaultdict

import pytest

# Acceptance criteria, in order.  A criterion passes only if every test
# tagged with it passed; expected failures count against it.
CRITERIA = {
    "circumradius": "sample tetrahedron circumradius, residual and runtime",
    "ball_table": "ball-covering table: 16 rows, radius and density",
    "cyl_packing_table": "cylinder packing table and exact golden-ratio row",
    "cyl_covering_table": "cylinder covering table and exact row",
    "plane_bounds": "hexagonal plane-lattice bounds over full search grids",
    "properties": "property suites (symmetry, roundtrip, limit, coverage, bisector, presentation)",
    "search": "search recovers the reported local optima",
}

_outcomes = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion this test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        if hasattr(rep, "wasxfail"):
            status = "xpassed" if rep.passed else "xfailed"
        else:
            status = rep.outcome
        _outcomes[mark.args[0]].append((item.name, status, getattr(rep, "wasxfail", "")))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for i, (key, desc) in enumerate(CRITERIA.items(), start=1):
        results = _outcomes.get(key)
        if not results:
            tr.write_line(f"{i}. NOT RUN  {key}: {desc}")
            continue
        ok = all(s == "passed" for _, s, _ in results)
        tr.write_line(f"{i}. {'PASS' if ok else 'FAIL'}     {key}: {desc} ({len(results)} checks)")
        for name, status, why in results:
            if status != "passed":
                tr.write_line(f"       {status}: {name}" + (f" -- {why}" if why else ""))
