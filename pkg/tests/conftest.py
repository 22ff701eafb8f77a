import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")
_outcomes: dict[int, list] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m or not (report.when == "call" or report.failed):
        return
    entry = _outcomes.setdefault(int(m.group(1)), [m.group(2), True])
    # a parametrized criterion passes only if every case passes
    entry[1] = entry[1] and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        name, ok = _outcomes[n]
        terminalreporter.write_line(f"criterion {n} {'PASS' if ok else 'FAIL'}: {name.replace('_', ' ')}")
