from math import gcd

from artinres.combinatorics import GroupParams

ACCEPTANCE_LINES: list[str] = []


def coprime_groups(max_r, min_r=2):
    return [GroupParams(r, a) for r in range(min_r, max_r + 1) for a in range(1, r) if gcd(r, a) == 1]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
