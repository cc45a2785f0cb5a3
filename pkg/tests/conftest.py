"""Terminal reporting for the acceptance suite.

Each acceptance criterion lives in one test function named
``test_cN_...``; after the run a one-line PASS/FAIL verdict per criterion
is printed so the suite's outcome can be read at a glance.
"""

CRITERIA = {
    "test_c1": "intrinsic-dimension sanity on seeded point clouds",
    "test_c2": "iris redundancy gate (DRR 0.75 +/- 0.15, verdict simple)",
    "test_c3": "rank parity on high-DRR benchmarks, dehb alone on low-DRR",
    "test_c4": "optimizers beat the baseline; exhaustive budgets hit 0",
    "test_c5": "metric formula suite",
    "test_c6": "statistics suite (cliff's delta, rank clustering)",
    "test_c7": "bench determinism apart from wall time",
    "test_c8": "oracle-boundary tripwire (no optimizer peeks)",
    "test_c9": "single-goal ranking equals a plain sort",
}

_outcomes: dict[str, str] = {}


def _criterion_of(nodeid: str):
    name = nodeid.rsplit("::", 1)[-1]
    for prefix in CRITERIA:
        if name.startswith(prefix):
            return prefix
    return None


def pytest_runtest_logreport(report):
    key = _criterion_of(report.nodeid)
    if key is None:
        return
    if report.when == "call":
        _outcomes[key] = "PASS" if report.passed else "FAIL"
    elif report.when == "setup" and (report.failed or report.skipped):
        _outcomes[key] = "FAIL" if report.failed else "SKIP"


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for prefix in sorted(CRITERIA, key=lambda p: int(p[6:])):
        desc = CRITERIA[prefix]
        verdict = _outcomes.get(prefix, "NOT RUN")
        num = prefix[6:]
        terminalreporter.write_line(f"criterion {num} ({desc}): {verdict}")
