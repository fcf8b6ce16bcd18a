import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "repo",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")

_CRITERIA: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        outcome = "PASS" if report.outcome == "passed" else "FAIL"
        detail = ""
        if report.outcome == "failed" and report.longrepr is not None:
            lines = [ln for ln in str(report.longrepr).splitlines() if ln.startswith("E ")]
            detail = lines[0][1:].strip() if lines else ""
        _CRITERIA[name] = (outcome, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda n: int(n.split("_")[2])):
        outcome, detail = _CRITERIA[name]
        number = name.split("_")[2]
        label = " ".join(name.split("_")[3:])
        line = f"criterion {number} ({label}): {outcome}"
        if detail:
            line += f" - {detail}"
        terminalreporter.write_line(line)
