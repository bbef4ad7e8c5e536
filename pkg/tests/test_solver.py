import random
from fractions import Fraction

import pytest

from mahler import (QQ, MahlerSystem, admissible_pair, basis_from_pair,
                    build_companion, check_admissible, entry_equation, extend_P, solve_equation,
                    verify_basis)
from mahler.constants import ConstElem
from mahler.errors import InputError
from mahler.hahn import ExpPolySeq, HahnExpression
from mahler.linalg import det, mat_inv, mat_mul
from mahler.series import RationalFunctionField, Series
from mahler.solver import ramification_guard

from conftest import CARLITZ_COEFFS, RS_COEFFS, equation

F = Fraction
HALF = F(-1, 2)
XI = ((F(1),), (0,), (F(-2),))

# first row of the published RS gauge matrix, truncated at order 9
F1 = {0: 1, 1: 1, 2: 1, 3: -1, 4: 1, 5: 1, 6: -1, 7: 1, 8: 1, 9: 1}
G = {1: 1, 2: F(-5, 2), 3: F(3, 2), 4: F(5, 4), 5: F(-7, 4), 6: F(5, 4), 7: F(-1, 4),
     8: F(-5, 8), 9: F(3, 8)}


def ser(coeffs, order=9):
    return Series(QQ, {k: F(v) for k, v in coeffs.items()}, order)


def key(c, a=(), alpha=(), lam=(), j=0):
    return (F(c), j, tuple(a), tuple(alpha), tuple(lam))


@pytest.fixture(scope="module")
def rs_basis():
    return solve_equation(equation(2, RS_COEFFS), 9)


def test_rs_basis_shape(rs_basis):
    assert (rs_basis.d, rs_basis.v) == (1, 1)
    assert rs_basis.K0 == {F(1), HALF}
    assert rs_basis.j0 == 0
    assert rs_basis.Omega1 == {((), (), ()), XI}


def test_rs_first_solution(rs_basis):
    y1 = rs_basis.solutions[0]
    assert y1.support() == [key(1)]
    assert y1.terms[key(1)] == ser(F1)


def test_rs_second_solution(rs_basis):
    f1, g = ser(F1), ser(G)
    y2 = rs_basis.solutions[1]
    assert y2.terms[key(1)] == f1.scale(F(-2, 3))
    assert y2.terms[key(HALF)] == f1.scale(F(2, 3)) + g
    assert y2.terms[key(HALF, *XI)] == f1
    assert len(y2.support()) == 3


def test_rs_provenance(rs_basis):
    prov = rs_basis.provenance
    H = prov["H"]
    assert H[0][1] == HahnExpression.from_terms(QQ, 2, [(0, (1,), ExpPolySeq.geometric(QQ, -2))])
    assert prov["C"] == [[1, -1], [0, HALF]]
    assert prov["eC"][0][1] == ConstElem(QQ, {(HALF, 0): F(2, 3), (F(1), 0): F(-2, 3)})


def test_rs_verify(rs_basis):
    rep = verify_basis(equation(2, RS_COEFFS), rs_basis)
    assert rep.ok and str(rep) == "residual 0 through order 9"


def test_corrupted_basis_fails(rs_basis):
    bad = solve_equation(equation(2, RS_COEFFS), 9)
    y2 = bad.solutions[1]
    y2.terms[key(HALF)] = y2.terms[key(HALF)] + Series(QQ, {4: F(1)}, 9)
    rep = verify_basis(equation(2, RS_COEFFS), bad)
    assert not rep.ok
    assert "solution 2" in str(rep) and "c=-1/2" in str(rep)


# -- Carlitz ---------------------------------------------------------------------

@pytest.fixture(scope="module")
def carlitz_basis():
    from mahler import FpFunctionField
    F3 = FpFunctionField(3)
    return F3, solve_equation(equation(3, CARLITZ_COEFFS, F3), 12)


def test_carlitz_pipeline(carlitz_basis):
    F3, res = carlitz_basis
    th = F3.gen
    prov = res.provenance
    assert [[t.constant_term() for t in row] for row in prov["theta"]] == [[1, 0], [0, th]]
    assert all(t.support() in ([], [0]) for row in prov["theta"] for t in row)
    assert all(h == (1 if i == j else 0) for i, row in enumerate(prov["H"]) for j, h in enumerate(row))
    assert prov["eC"] == [[ConstElem.const(F3, 1), ConstElem(F3)], [ConstElem(F3), ConstElem.e(F3, th)]]
    assert [[f.coefficient(0) for f in row] for row in prov["P"]] == [[1, 1], [1, th]]
    assert res.K0 == {F3.one, th} and res.v == 0 and res.d == 1


def test_carlitz_verify(carlitz_basis):
    F3, res = carlitz_basis
    rep = verify_basis(equation(3, CARLITZ_COEFFS, F3), res, order=5)
    assert rep.ok and str(rep) == "residual 0 through order 5"
    assert verify_basis(equation(3, CARLITZ_COEFFS, F3), res).verified_order == 12


def test_carlitz_g_equation(carlitz_basis):
    """The e_theta component satisfies the second displayed equation."""
    F3, res = carlitz_basis
    g = res.solutions[1].terms[(F3.gen, 0, (), (), ())]
    geq = equation(3, ["(z^3-theta)*(z^9-theta)", "-theta*(z^3-theta-1)*(z^9-theta)",
                       "-theta^2*(z^3-theta)"], F3)
    r = geq.apply(g, 12)
    assert not r.truncate(12).coeffs


def test_carlitz_zeta_function(carlitz_basis):
    """f with f(z^3) + (z^3 - theta) f = -(z^3 - theta) is a multiple of y1."""
    F3, res = carlitz_basis
    th, p, N = F3.gen, 3, 12
    f = {}
    for n in range(N + 1):
        acc = F3.zero
        if n == p:
            acc += 1
        if n == 0:
            acc -= th
        if n % p == 0 and n // p in f and n:
            acc += f[n // p]
        if n - p in f:
            acc += f[n - p]
        if n == 0:
            f[0] = th / (th - 1) * -1          # theta f_0 = -theta + f_0
            continue
        f[n] = acc / th
    y1 = res.solutions[0].terms[(F3.one, 0, (), (), ())]
    assert all(f[n] == f[0] * y1.coefficient(n) for n in range(N + 1))


# -- smaller systems -------------------------------------------------------------

def test_order_one_equation():
    eq = equation(2, ["1", "-1/2"])            # y(z^2) = 2 y(z)
    res = solve_equation(eq, 6)
    (y,) = res.solutions
    assert y.support() == [key(2)]
    assert verify_basis(eq, res).ok


def test_gaussian_constants():
    eq = equation(2, ["1", "0", "1"])          # y(z^4) = -y(z)
    res = solve_equation(eq, 8)
    assert res.field.degree == 2
    i = res.field.gen
    assert res.K0 == {i, -i}
    assert verify_basis(eq, res).ok


def test_ramified_equation():
    eq = equation(2, ["1", "z^5", "z"])
    res = solve_equation(eq, 4)
    assert res.d == 3
    for y in res.solutions:
        for f in y.terms.values():
            assert 3 % f.simplify_d().d == 0
            v = f.valuation()
            assert v is None or v >= -res.v
    assert verify_basis(eq, res).ok


def test_ramification_guard():
    assert ramification_guard(3, 2, 2)         # 3 | 2^2 - 1
    assert not ramification_guard(5, 2, 2)


def test_zero_leading_coefficient_rejected():
    with pytest.raises(InputError, match="a_0 = 0"):
        equation(2, ["0", "1", "1"])


def test_json_round_trip(rs_basis):
    from mahler import BasisResult
    back = BasisResult.from_json(rs_basis.to_json())
    assert [s.terms for s in back.solutions] == [s.terms for s in rs_basis.solutions]
    assert back.to_json() == rs_basis.to_json()


# -- gauge invariance ------------------------------------------------------------

@pytest.mark.parametrize("seed", [0, 1, 2])
def test_gauge_invariance(seed):
    rng = random.Random(seed)
    eq = equation(2, RS_COEFFS)
    sys = build_companion(eq)
    Kz = RationalFunctionField(QQ)
    while True:
        S = [[F(rng.randint(-2, 2)) for _ in range(2)] for _ in range(2)]
        if det(QQ, S):
            break
    Sinv = mat_inv(QQ, S)
    A2 = mat_mul(Kz, mat_mul(Kz, [[Kz(x) for x in r] for r in Sinv], sys.A), [[Kz(x) for x in r] for r in S])
    sys2 = MahlerSystem(2, A2, QQ)
    pair2 = admissible_pair(sys2)
    # (S P', Theta') is admissible for the original system
    P2 = extend_P(pair2, sys2, 9).P
    SP = [[sum((P2[k][b].scale(S[a][k]) for k in range(2)), Series.zero(QQ, None))
           for b in range(2)] for a in range(2)]
    assert check_admissible(sys, SP, pair2.theta).ok
    # the solutions read off the first row of S P' H' e_C' solve the equation
    res = basis_from_pair(pair2, sys2, 9, row=S[0])
    assert verify_basis(eq, res, order=8).ok
    cross = solve_equation(eq, 9)
    assert res.K0 == cross.K0


# -- entry equations -------------------------------------------------------------

PUBLISHED_ENTRY = ["-2*z^10-6*z^9-8*z^8-8*z^7-4*z^6+4*z^5+8*z^4+8*z^3+6*z^2+2*z",
               "-z^11-z^9-2*z^8+2*z^7+2*z^5+4*z^4-z^3-z-2",
               "z^13+z^12+z^11+3*z^10+5*z^9+5*z^8-2*z^7-6*z^6-z^5-z^4-3*z^3-z^2-z-1",
               "-z^13-z^12+3*z^11+3*z^10-4*z^7-4*z^6+z^5+z^4+z^3+z^2",
               "-2*z^13-2*z^12+2*z^11+2*z^10"]


def test_entry_equation_top_right(rs_sys):
    pair = admissible_pair(rs_sys)
    eq = entry_equation(pair, rs_sys, 0, 1)
    assert eq.order == 4
    h = extend_P(pair, rs_sys, 30).P[0][1]
    assert not eq.apply(h, 14).truncate(14).coeffs
    published = equation(2, PUBLISHED_ENTRY)
    assert not published.apply(h, 14).truncate(14).coeffs
    # the two equations differ by the factor -2(z^3 + z^2 - z - 1)
    factor = RationalFunctionField(QQ)(equation(2, ["-2*(z^3+z^2-z-1)", "1"]).coeffs[0])
    assert [c * factor for c in eq.coeffs] == published.coeffs


def test_entry_equation_top_left(rs_sys, rs_eq):
    pair = admissible_pair(rs_sys)
    eq = entry_equation(pair, rs_sys, 0, 0)
    lead = eq.coeffs[0]
    assert [c / lead for c in eq.coeffs] == [c / rs_eq.coeffs[0] for c in rs_eq.coeffs]
    h1 = extend_P(pair, rs_sys, 20).P[0][0]
    assert not rs_eq.apply(h1, 16).truncate(16).coeffs


def test_entry_equation_order_one():
    Kz = RationalFunctionField(QQ)
    a = equation(2, ["z+2", "1"]).coeffs[0]
    sys = MahlerSystem(2, [[a]], QQ)
    pair = admissible_pair(sys)
    eq = entry_equation(pair, sys, 0, 0)
    # y(z^2) - a y = 0 up to normalization
    assert eq.order == 1
    assert eq.coeffs[0] / eq.coeffs[1] == -Kz(a) / Kz(pair.theta[0][0].to_rational())
