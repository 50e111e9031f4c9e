"""Shared pytest hooks: surface acceptance verdict lines in the summary.

The acceptance tests record one "ACCEPTANCE <n> <PASS|FAIL> - <title>"
line each; stdout capture would hide them on passing runs, so they are
replayed in the terminal summary.
"""

acceptance_lines = []


def pytest_terminal_summary(terminalreporter):
    if not acceptance_lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance_lines:
        terminalreporter.write_line(line)
