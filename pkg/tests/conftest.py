from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_criteria: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid or report.when != "call" and report.passed:
        return
    name = report.nodeid.split("::")[-1].split("[")[0]
    if not name.startswith("test_criterion_"):
        return
    num = int(name.split("_")[2])
    title = name.split("_", 3)[3].replace("_", " ")
    if report.when == "call" or report.failed:
        # a setup failure also counts against the criterion
        prev = _criteria.get(num, (title, "PASS"))[1]
        status = "FAIL" if report.failed or prev == "FAIL" else "PASS"
        _criteria[num] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, status = _criteria[num]
        terminalreporter.write_line(f"criterion {num:2d} {status}  {title}")
