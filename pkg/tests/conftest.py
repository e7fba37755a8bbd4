"""Collects acceptance-criterion result lines and prints them in the
terminal summary, so every criterion shows one pass/fail line even when
stdout capture hides the in-test prints."""

ACCEPTANCE_LINES: list = []


def record_criterion(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
