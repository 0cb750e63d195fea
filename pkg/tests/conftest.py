import pytest

_RESULTS: dict[int, tuple[bool, str, str]] = {}
CRITERIA = {
    1: "BLCS/BLCSR exact value",
    2: "metric kernels match brute-force oracles",
    3: "beta threshold sanity",
    4: "Louvain near-optimal modularity",
    5: "end-to-end recovery on the noisy fixture",
    6: "release family clustered together",
    7: "invariant suite",
    8: "skip-gram gradient check",
}


@pytest.fixture
def criterion():
    """``report(number, ok, detail)`` records an acceptance result and asserts it."""
    def report(number: int, ok: bool, detail: str):
        _RESULTS[number] = (bool(ok), CRITERIA[number], detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {CRITERIA[number]} ({detail})")
        assert ok, detail
    return report


def pytest_terminal_summary(terminalreporter):
    ran = [item for item in terminalreporter.stats.get("passed", []) + terminalreporter.stats.get("failed", [])
           if "test_acceptance" in item.nodeid]
    if not ran and not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, name in CRITERIA.items():
        ok, _, detail = _RESULTS.get(n, (False, name, "not reached"))
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {name}  [{detail}]")
