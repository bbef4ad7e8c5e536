"""Independent brute-force oracle for xi expressions and random generators.

The oracle enumerates index tuples directly from the defining sum and does
not use any enumeration code from the library.
"""

import itertools
from fractions import Fraction

from mahler import QQ
from mahler.hahn import ExpPolySeq, HahnExpression, XiTerm

LAMBDAS = [Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(1, 2), Fraction(3)]


def vp(x, p):
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    v, n, d = 0, x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def brute_coefficient(e, gamma, slack=8):
    """Coefficient of z^gamma in e, by summing over all index tuples whose
    last cumulative index is at most -v_p(target) + slack."""
    gamma = Fraction(gamma)
    p = e.p
    total = e.field.zero
    for (g, a), u in e.terms.items():
        t = g - gamma
        if not a:
            if t == 0:
                total += u.constant_value()
            continue
        if t <= 0:
            continue
        depth = max(0, -vp(t, p)) + slack
        s = len(a)
        for ks in itertools.product(range(1, depth + 1), repeat=s):
            if sum(ks) > depth:
                continue
            K, acc = 0, Fraction(0)
            for ai, k in zip(a, ks):
                K += k
                acc += ai / Fraction(p) ** K
            if acc == t:
                total += u(*ks)
    return total


def support_sample(e, count, rng, depth=5):
    """Exponents reached by shallow index tuples, plus a few arbitrary ones."""
    p = e.p
    pts = set()
    for (g, a), _ in e.terms.items():
        if not a:
            pts.add(g)
            continue
        for ks in itertools.product(range(1, depth + 1), repeat=len(a)):
            if sum(ks) > depth + len(a):
                continue
            K, acc = 0, Fraction(0)
            for ai, k in zip(a, ks):
                K += k
                acc += ai / Fraction(p) ** K
            pts.add(g - acc)
    pts = sorted(x for x in pts if x <= 0)
    rng.shuffle(pts)
    out = pts[:count]
    while len(out) < count:
        out.append(-Fraction(rng.randint(1, 40), rng.choice([1, 3, p, p * p, p ** 3])))
    return out


def standard_rational(rng, p):
    while True:
        num = rng.randint(1, 5)
        den = rng.choice([1, 3, 5, 7])
        if num % p and den % p:
            return Fraction(num, den)


def random_seq(rng, arity, extra_lambda=None):
    lams = LAMBDAS + ([extra_lambda] if extra_lambda is not None else [])
    terms = {}
    for _ in range(rng.randint(1, 2)):
        alpha = tuple(rng.randint(0, 2) for _ in range(arity))
        lam = tuple(rng.choice(lams) for _ in range(arity))
        terms[(alpha, lam)] = Fraction(rng.randint(-4, 4) or 1, rng.randint(1, 3))
    return ExpPolySeq(QQ, arity, terms)


def random_basic_instance(rng, case, p):
    """(kappa, eta, rhs) for one of the three right-hand-side shapes."""
    kappa = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 2))
    eta = Fraction(rng.choice([-2, -1, 1, 2, 3]), rng.randint(1, 2))
    theta = eta / kappa
    if case == 0:
        rhs = XiTerm(-standard_rational(rng, p), (), ExpPolySeq.constant(QQ, rng.randint(1, 5)))
    else:
        s = rng.randint(1, 2)
        a = tuple(standard_rational(rng, p) for _ in range(s))
        g = -standard_rational(rng, p) if case == 1 else Fraction(0)
        rhs = XiTerm(g, a, random_seq(rng, s, extra_lambda=theta))
    return kappa, eta, rhs


def random_expression(rng, p, standard=True):
    items = []
    for _ in range(rng.randint(1, 3)):
        s = rng.randint(0, 2)
        a = []
        for _ in range(s):
            x = standard_rational(rng, p)
            if not standard:
                x *= rng.choice([1, p, Fraction(1, p)])
            a.append(x)
        g = -Fraction(rng.randint(0, 6), rng.choice([1, 3]))
        seq = random_seq(rng, s) if s else ExpPolySeq.constant(QQ, rng.randint(1, 4))
        items.append((g, tuple(a), seq))
    return HahnExpression.from_terms(QQ, p, items)
