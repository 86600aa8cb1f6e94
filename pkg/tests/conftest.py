import pytest

# Filled by tests/test_acceptance.py; printed once at the end of the run.
ACCEPTANCE_LINES = {}


def record(number, title, passed, detail=""):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])


@pytest.fixture(scope="session")
def small_band():
    """Band construction at W=10, Lambda=1e3, lambda1=lambda2=1."""
    from qineq import EnergyDensityModel

    return EnergyDensityModel.tuned(1.0, 1.0, 10.0, 1e3)
