from fractions import Fraction

import pytest

from qmacdo.ring import Ring

Q0, T0 = Fraction(2, 3), Fraction(5, 2)


@pytest.fixture
def S():
    """Symbolic scalars."""
    return Ring()


@pytest.fixture
def E():
    """Scalars at a fixed non-special point."""
    return Ring(q=Q0, t=T0)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance criteria (slow)")


def pytest_terminal_summary(terminalreporter):
    import sys

    module = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    found = [module.RESULTS[k] for k in sorted(module.RESULTS)] if module else []
    if found:
        terminalreporter.section("acceptance criteria")
        for line in found:
            terminalreporter.write_line(line)
