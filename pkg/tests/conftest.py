import pytest

CRITERIA = {
    1: "Chevalley axiom suite on all required types",
    2: "sl3 matrix-realization equivalence",
    3: "delta pairing vanishes exactly on compact roots",
    4: "generation by noncompact root vectors iff effective",
    5: "torsion action homomorphism and normalization round trip",
    6: "resonance enumeration matches brute-force oracle",
    7: "canonical contracting element is positive on noncompact roots",
    8: "additive relations discriminate the projective model",
    9: "CLI verify determinism and runtime",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion exercised by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or report.failed:
        _outcomes.setdefault(marker.args[0], []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(CRITERIA):
        results = _outcomes.get(n)
        if results is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {CRITERIA[n]}")
