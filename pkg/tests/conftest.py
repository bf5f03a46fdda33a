import cmath
import math

import pytest
from hypothesis import HealthCheck, settings

from k3audit.exactfield import Cyclo

settings.register_profile(
    "k3audit",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("k3audit")


def to_complex(a: Cyclo) -> complex:
    """Floating-point image of a cyclotomic number (zeta_n -> exp(2 pi i / n))."""
    return sum(
        (float(c) * cmath.exp(2j * math.pi * k / a.order) for k, c in enumerate(a.coeffs)),
        0j,
    )


def close(a: complex, b: complex, tol: float = 1e-7) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


@pytest.fixture(scope="session")
def l27():
    from k3audit.matgroup import catalogue

    return catalogue("l27")


@pytest.fixture(scope="session")
def valentiner():
    from k3audit.matgroup import catalogue

    return catalogue("valentiner")


@pytest.fixture(scope="session")
def case_reports():
    from k3audit.casebook import CASE_IDS, verify_case

    return {c: verify_case(c) for c in CASE_IDS}


# -- acceptance summary -----------------------------------------------------

ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
