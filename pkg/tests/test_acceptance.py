"""Acceptance criteria 1-11, exact arithmetic throughout.

Each check returns (ok, detail); the pytest wrappers record one PASS/FAIL
line per criterion, printed in the terminal summary.  Run this file
directly to print the lines without pytest.
"""

import io
import json
import random
import sys
import time
from fractions import Fraction

import pytest

from mahler import (QQ, FpFunctionField, admissible_pair, build_Ml, build_companion,
                    check_admissible, coefficient_at, compute_H, entry_equation, exp_constant,
                    extend_P, newton_slopes, normalize_xi, parse_expression, ramification_index,
                    solve_basic, solve_equation, verify_basis, window_params, xi_phi)
from mahler.cli import main as cli_main
from mahler.constants import ConstElem, check_exp
from mahler.errors import InputError
from mahler.hahn import ExpPolySeq, HahnExpression
from mahler.linalg import Subspace
from mahler.series import LaurentPoly, Series
from mahler.solver import ramification_guard

import acceptance_log
from conftest import CARLITZ_COEFFS, RS_COEFFS, equation
from e2e_support import accepted_runs, check_run
from hahn_oracle import (brute_coefficient, random_basic_instance, random_expression,
                         support_sample)
from rs_support import (E1, M0_LAYOUT, M_MINUS1_LAYOUT, block_layout, window_identity_failures)

F = Fraction


def _rs():
    return build_companion(equation(2, RS_COEFFS))


def _laurent(text, field=QQ):
    return parse_expression(text, field).to_laurent()


def _as_laurent(f):
    return LaurentPoly(f.field, {Fraction(n, f.d): c for n, c in f.coeffs.items()})


# ---------------------------------------------------------------------------

def check_1():
    t = time.perf_counter()
    got = window_params(_rs()).as_tuple()
    dt = time.perf_counter() - t
    return got == (-1, -1, -3, 1) and dt < 1, "params %s in %.3fs" % (got, dt)


def check_2():
    sys_ = _rs()
    params = window_params(sys_)
    l0 = block_layout(build_Ml(sys_, params, 0)) == M0_LAYOUT
    l1 = block_layout(build_Ml(sys_, params, -1)) == M_MINUS1_LAYOUT
    bad = window_identity_failures(sys_, count=20)
    return l0 and l1 and bad == 0, "M_0 layout %s, M_-1 layout %s, identity failures %d/40" % (l0, l1, bad)


PUBLISHED_P = [["1+z", "z"], ["1", "z^-1-1+z"]]
PUBLISHED_THETA = [["1", "z^-1-1"], ["0", "-1/2"]]


def check_3():
    t = time.perf_counter()
    sys_ = _rs()
    pair = admissible_pair(sys_)
    dt = time.perf_counter() - t
    x1 = pair.trace["X"][1] == Subspace.span(QQ, 10, [E1])
    x2 = pair.trace["X"][2].dim == 2
    strip = lambda s: s.replace(" ", "")
    P = [[strip(_as_laurent(f).format()) for f in row] for row in pair.P]
    T = [[strip(t.format()) for t in row] for row in pair.theta]
    pubP = [[_laurent(x) for x in row] for row in PUBLISHED_P]
    pubT = [[_laurent(x) for x in row] for row in PUBLISHED_THETA]
    ok_strings = P == PUBLISHED_P and T == PUBLISHED_THETA
    Pser = [[Series(QQ, dict(x.terms), 1) for x in row] for row in pubP]
    adm = check_admissible(sys_, Pser, pubT).ok
    ok = x1 and x2 and ok_strings and adm and dt < 5
    return ok, "X1 ok %s, dim X2 = 2 %s, P %s, Theta %s, published pair admissible %s, %.2fs" % (
        x1, x2, P, T, adm, dt)


PUBLISHED_P9 = [["1+z+z^2-z^3+z^4+z^5-z^6+z^7+z^8+z^9",
             "z-5/2*z^2+3/2*z^3+5/4*z^4-7/4*z^5+5/4*z^6-1/4*z^7-5/8*z^8+3/8*z^9"],
            ["1+z^2+z^4-z^6+z^7+z^9",
             "z^-1-1+z-3/2*z^2+z^3+1/4*z^4-z^5+1/4*z^6+z^7-13/8*z^8+z^9"]]


def check_4():
    sys_ = _rs()
    pair = extend_P(admissible_pair(sys_), sys_, 9)
    mismatches = []
    for a in range(2):
        for b in range(2):
            got = _as_laurent(pair.P[a][b])
            want = _laurent(PUBLISHED_P9[a][b])
            if got != want:
                mismatches.append("(%d,%d): computed %s, printed %s"
                                  % (a + 1, b + 1, got.format(), want.format()))
    return not mismatches, ("all 4 entries match" if not mismatches
                            else "%d/4 entries match; %s" % (4 - len(mismatches), "; ".join(mismatches)))


def check_5():
    theta = [[_laurent("1"), _laurent("z^-1-1")], [_laurent("0"), _laurent("-1/2")]]
    H = compute_H(theta, QQ, 2)
    xi = HahnExpression.from_terms(QQ, 2, [(0, (1,), ExpPolySeq.geometric(QQ, -2))])
    h_ok = H[0][1] == xi and all(coefficient_at(H[0][1], F(-1, 2 ** k)) == (-2) ** k for k in range(1, 8))
    C = [[F(1), F(-1)], [F(0), F(-1, 2)]]
    E, _ = exp_constant(C, QQ)
    half = F(-1, 2)
    expect = [[ConstElem.const(QQ, 1), ConstElem(QQ, {(half, 0): F(2, 3), (F(1), 0): F(-2, 3)})],
              [ConstElem(QQ), ConstElem.e(QQ, half)]]
    e_ok = E == expect
    phi_ok = check_exp(C, E)
    return h_ok and e_ok and phi_ok, "h12 = %s (%s), e_C match %s, phi(e_C) = C e_C %s" % (
        H[0][1].format(), h_ok, e_ok, phi_ok)


def check_6():
    C = [[0, 1], [-1, 0]]
    E, K = exp_constant(C, QQ)
    i = K.gen
    half = K(F(1, 2))
    c = ConstElem(K, {(i, 0): half, (-i, 0): half})
    s_top = ConstElem(K, {(-i, 0): i * half, (i, 0): -i * half})      # (i/2)(e_{-i} - e_i)
    s_bot = ConstElem(K, {(i, 0): i * half, (-i, 0): -i * half})      # (i/2)(e_i - e_{-i})
    ok = K.degree == 2 and i * i == -1 and E == [[c, s_top], [s_bot, c]] and check_exp(C, E)
    return ok, "e_C = %s" % [[x.format() for x in row] for row in E]


def check_7():
    F3 = FpFunctionField(3)
    th = F3.gen
    eq = equation(3, CARLITZ_COEFFS, F3)
    res = solve_equation(eq, 5)
    prov = res.provenance
    P0 = [[f.coefficient(0) for f in row] for row in prov["P"]]
    T = [[t for t in row] for row in prov["theta"]]
    theta_ok = (all(t.support() in ([], [0]) for row in T for t in row)
                and [[t.constant_term() for t in row] for row in T] == [[1, 0], [0, th]])
    H_ok = all(h == (1 if i == j else 0) for i, row in enumerate(prov["H"]) for j, h in enumerate(row))
    e_ok = prov["eC"] == [[ConstElem.const(F3, 1), ConstElem(F3)], [ConstElem(F3), ConstElem.e(F3, th)]]
    rep = verify_basis(eq, res, order=5)
    ok = P0 == [[1, 1], [1, th]] and theta_ok and H_ok and e_ok and str(rep) == "residual 0 through order 5"
    return ok, "P(0) = [[1,1],[1,theta]] %s, Theta diag %s, H = I %s, e_C %s, verify: %s" % (
        P0 == [[1, 1], [1, th]], theta_ok, H_ok, e_ok, rep)


PUBLISHED_ENTRY = ["-2*z^10-6*z^9-8*z^8-8*z^7-4*z^6+4*z^5+8*z^4+8*z^3+6*z^2+2*z",
               "-z^11-z^9-2*z^8+2*z^7+2*z^5+4*z^4-z^3-z-2",
               "z^13+z^12+z^11+3*z^10+5*z^9+5*z^8-2*z^7-6*z^6-z^5-z^4-3*z^3-z^2-z-1",
               "-z^13-z^12+3*z^11+3*z^10-4*z^7-4*z^6+z^5+z^4+z^3+z^2",
               "-2*z^13-2*z^12+2*z^11+2*z^10"]


def check_8():
    sys_ = _rs()
    pair = admissible_pair(sys_)
    eq = entry_equation(pair, sys_, 0, 1)
    powers = [2 ** k for k, c in enumerate(eq.coeffs) if c]
    h = extend_P(pair, sys_, 30).P[0][1]
    r_ours = eq.apply(h, 14).truncate(14)
    r_published = equation(2, PUBLISHED_ENTRY).apply(h, 14).truncate(14)
    ok = powers == [1, 2, 4, 8, 16] and not r_ours.coeffs and not r_published.coeffs
    return ok, "phi-powers %s, residual through order 14: computed %s, printed %s" % (
        powers, "0" if not r_ours.coeffs else "nonzero", "0" if not r_published.coeffs else "nonzero")


def check_9():
    t = time.perf_counter()
    rng = random.Random(909)
    bad = 0
    for n in range(100):
        p = rng.choice([2, 3])
        kappa, eta, rhs = random_basic_instance(rng, n % 3, p)
        h = solve_basic(kappa, eta, rhs, QQ, p)
        r = HahnExpression.from_terms(QQ, p, [(rhs.gamma, rhs.a, rhs.seq)])
        for g in support_sample(r + h, 25, rng):
            lhs = kappa * coefficient_at(h, g / p) - eta * coefficient_at(h, g)
            if lhs != coefficient_at(r, g) or lhs != (kappa * brute_coefficient(h, g / p)
                                                      - eta * brute_coefficient(h, g)):
                bad += 1
    bad2 = 0
    for _ in range(50):
        p = rng.choice([2, 3])
        e = random_expression(rng, p, standard=False)
        n_e, ph = normalize_xi(e), xi_phi(e)
        for g in support_sample(e, 10, rng):
            c = coefficient_at(e, g)
            if coefficient_at(n_e, g) != c or coefficient_at(ph, p * g) != c:
                bad2 += 1
    dt = time.perf_counter() - t
    return bad == 0 and bad2 == 0 and dt < 60, \
        "solve_basic failures %d/2500, xi_phi/normalize failures %d, %.1fs" % (bad, bad2, dt)


def check_10():
    t = time.perf_counter()
    orders = []
    for eq, res in accepted_runs(seed=1010, count=30):
        orders.append(check_run(eq, res))
    dt = time.perf_counter() - t
    return len(orders) == 30 and min(orders) >= 10 and dt < 300, \
        "30 equations, min verified order %s, %.1fs" % (min(orders), dt)


def check_11():
    eq = equation(2, ["1", "z^5", "z"])
    slopes = newton_slopes(eq)
    d = ramification_index(slopes, 2)
    guard = ramification_guard(d, 2, eq.order)
    try:
        equation(2, ["0", "1", "1"])
        a0 = False
    except InputError as exc:
        a0 = "a_0 = 0" in str(exc)
    job = {"p": 2, "coeffs": ["-2", "0", "0", "1"], "order": 4}
    code = cli_main(["solve", "--input", json.dumps(job)], io.StringIO(), io.StringIO())
    ok = slopes == [F(1, 3)] and d == 3 and guard and a0 and code == 2
    return ok, "slopes %s, d = %d, d | p^m - 1 %s, a_0 = 0 rejected %s, cubic exit code %d" % (
        [str(s) for s in slopes], d, guard, a0, code)


CHECKS = {n: globals()["check_%d" % n] for n in range(1, 12)}


# ---------------------------------------------------------------------------

def _run(n):
    ok, detail = CHECKS[n]()
    acceptance_log.record(n, ok, detail)
    return ok, detail


@pytest.mark.parametrize("n", [1, 2, 3, 5, 6, 7, 8, 9, 10, 11])
def test_criterion(n):
    ok, detail = _run(n)
    assert ok, detail


@pytest.mark.xfail(strict=True, reason="printed entry (2,1) contradicts P21(z) = P11(z^2); "
                                       "see notes on the extension display")
def test_criterion_4():
    ok, detail = _run(4)
    assert ok, detail


def test_extension_table_consistent_entries():
    sys_ = _rs()
    P = extend_P(admissible_pair(sys_), sys_, 9).P
    for a, b in [(0, 0), (0, 1), (1, 1)]:
        assert _as_laurent(P[a][b]) == _laurent(PUBLISHED_P9[a][b])
    # first row of A P is the second row of P, and equals phi(P) Theta in column 1
    assert P[1][0].truncate(9) == P[0][0].substitute_power(2).truncate(9)


if __name__ == "__main__":
    failed = 0
    for n in CHECKS:
        ok, detail = CHECKS[n]()
        print(acceptance_log.line(n, ok, detail))
        failed += not ok
    sys.exit(1 if failed else 0)
