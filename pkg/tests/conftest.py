_criterion_results = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    if "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.rsplit("::", 1)[-1].split("[")[0]
    if not name.startswith("test_criterion_"):
        return
    ok = _criterion_results.get(name, True) and report.passed
    _criterion_results[name] = ok


def pytest_terminal_summary(terminalreporter):
    if not _criterion_results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name in sorted(_criterion_results):
        status = "PASS" if _criterion_results[name] else "FAIL"
        label = name.removeprefix("test_").replace("_", " ")
        terminalreporter.write_line(f"{label}: {status}")
