from fractions import Fraction

import pytest

from mahler import QQ, FpFunctionField, MahlerEquation, build_companion, parse_expression


def equation(p, coeffs, field=QQ):
    return MahlerEquation(p, [parse_expression(c, field) for c in coeffs], field)


RS_COEFFS = ["1", "z-1", "-2*z"]
CARLITZ_COEFFS = ["(z^3-theta)*(z^9-theta)", "-(z^3-theta-1)*(z^9-theta)", "-(z^3-theta)"]


@pytest.fixture
def rs_eq():
    return equation(2, RS_COEFFS)


@pytest.fixture
def rs_sys(rs_eq):
    return build_companion(rs_eq)


@pytest.fixture
def f3():
    return FpFunctionField(3)


@pytest.fixture
def carlitz_eq(f3):
    return equation(3, CARLITZ_COEFFS, f3)


@pytest.fixture
def carlitz_sys(carlitz_eq):
    return build_companion(carlitz_eq)


def q(x):
    return Fraction(x)


def pytest_terminal_summary(terminalreporter):
    import acceptance_log
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acceptance_log.RESULTS):
        ok, detail = acceptance_log.RESULTS[n]
        terminalreporter.write_line(acceptance_log.line(n, ok, detail))
