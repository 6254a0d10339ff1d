import re

_AC = re.compile(r"test_acceptance\.py::test_ac(\d+)_(\w+)")
_results = {}


def pytest_runtest_logreport(report):
    m = _AC.search(report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2).replace("_", " "))
    if report.when == "call" or report.failed or report.skipped:
        prev = _results.get(key)
        if prev != "FAIL":
            _results[key] = "FAIL" if report.failed else ("SKIP" if report.skipped else "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for (num, label), verdict in sorted(_results.items()):
        terminalreporter.write_line(f"AC{num:<2} {verdict}  {label}")
