"""Pytest wiring: print one line per acceptance criterion after the run."""

_acceptance_lines: list[str] = []


def record_acceptance(line: str) -> None:
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    failed = [
        report
        for report in terminalreporter.stats.get("failed", [])
        if "test_acceptance" in str(getattr(report, "nodeid", ""))
    ]
    if not _acceptance_lines and not failed:
        return
    terminalreporter.section("acceptance criteria")
    for line in _acceptance_lines:
        terminalreporter.write_line(line)
    for report in failed:
        terminalreporter.write_line(f"ACCEPTANCE FAIL: {report.nodeid}")
