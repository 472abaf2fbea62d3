from flagweyl.diagrams import Diagram

ACCEPTANCE_LINES = []


def make(n, *cols):
    return Diagram(n, cols)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
