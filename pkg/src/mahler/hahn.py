"""Hahn-series expressions built from xi terms.

A term is z^e * xi_(u, a) with

    xi_(u, a) = sum over k_1, ..., k_s >= 1 of u(k) z^(-a_1/p^K_1 - ... - a_s/p^K_s),
    K_i = k_1 + ... + k_i,

where u is a multi-sequence given in the exponential-polynomial basis
c * k_1^alpha_1 ... k_s^alpha_s * lambda_1^k_1 ... lambda_s^k_s.  For s = 0,
xi is 1 and the sequence is a constant.
"""

from fractions import Fraction
from math import comb

from .errors import UnsupportedCharacteristic


class ExpPolySeq:
    """Multi-sequence sum c * prod k_i^alpha_i lambda_i^k_i."""

    __slots__ = ("field", "arity", "terms")

    def __init__(self, field, arity, terms=None):
        self.field = field
        self.arity = arity
        out = {}
        for (alpha, lam), c in (terms or {}).items():
            if len(alpha) != arity or len(lam) != arity:
                raise ValueError("term arity does not match %d" % arity)
            key = (tuple(alpha), tuple(field(x) for x in lam))
            if any(not x for x in key[1]):
                raise ValueError("lambda must be nonzero")
            out[key] = out[key] + c if key in out else c
        self.terms = {k: c for k, c in out.items() if c}

    @classmethod
    def constant(cls, field, c):
        return cls(field, 0, {((), ()): field(c)})

    @classmethod
    def geometric(cls, field, lam, c=1):
        """c * lam^k (arity 1)."""
        return cls(field, 1, {((0,), (lam,)): field(c)})

    @classmethod
    def _raw(cls, field, arity, terms):
        s = cls.__new__(cls)
        s.field, s.arity = field, arity
        s.terms = {k: c for k, c in terms.items() if c}
        return s

    def __call__(self, *ks):
        if len(ks) != self.arity:
            raise ValueError("expected %d indices" % self.arity)
        total = self.field.zero
        for (alpha, lam), c in self.terms.items():
            v = c
            for k, a, l in zip(ks, alpha, lam):
                v = v * (k ** a) * (l ** k)
            total = total + v
        return total

    def _check(self, other):
        if self.arity != other.arity:
            raise ValueError("arity mismatch %d vs %d" % (self.arity, other.arity))

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return ExpPolySeq._raw(self.field, self.arity, out)

    def __neg__(self):
        return ExpPolySeq._raw(self.field, self.arity, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return ExpPolySeq._raw(self.field, self.arity, {k: x * c for k, x in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, ExpPolySeq) and self.arity == other.arity
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def over(self, field):
        return ExpPolySeq(field, self.arity,
                          {(a, tuple(field(x) for x in l)): field(c) for (a, l), c in self.terms.items()})

    def constant_value(self):
        if self.arity:
            raise ValueError("sequence has positive arity")
        return self.terms.get(((), ()), self.field.zero)

    # -- structural operations ----------------------------------------------

    def slice(self, i, value):
        """Fix index i (0-based) to ``value``; arity drops by one."""
        out = {}
        for (alpha, lam), c in self.terms.items():
            f = c * (value ** alpha[i]) * (lam[i] ** value)
            key = (alpha[:i] + alpha[i + 1:], lam[:i] + lam[i + 1:])
            out[key] = out[key] + f if key in out else f
        return ExpPolySeq._raw(self.field, self.arity - 1, out)

    def shift(self, i, t):
        """k_i -> k_i + t."""
        out = {}
        for (alpha, lam), c in self.terms.items():
            a = alpha[i]
            base = c * (lam[i] ** t)
            for j in range(a + 1):
                f = base * comb(a, j) * (t ** (a - j))
                if not f:
                    continue
                key = (alpha[:i] + (j,) + alpha[i + 1:], lam)
                out[key] = out[key] + f if key in out else f
        return ExpPolySeq._raw(self.field, self.arity, out)

    def prepend(self, lam):
        """v(k_0, k) = lam^k_0 * u(k)."""
        lam = self.field(lam)
        return ExpPolySeq._raw(self.field, self.arity + 1,
                               {((0,) + a, (lam,) + l): c for (a, l), c in self.terms.items()})

    def partial_sum(self, theta):
        return seq_partial_sum(self, theta)

    def format(self):
        if not self.terms:
            return "0"
        fmt = self.field.format
        parts = []
        for (alpha, lam), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0], repr(kv[0][1]))):
            factors = []
            for idx, (a, l) in enumerate(zip(alpha, lam)):
                var = "k%d" % (idx + 1)
                if a:
                    factors.append(var if a == 1 else "%s^%d" % (var, a))
                if l != self.field.one:
                    factors.append("(%s)^%s" % (fmt(l), var))
            cs = fmt(c)
            if factors:
                if cs == "1":
                    parts.append("*".join(factors))
                elif cs == "-1":
                    parts.append("-" + "*".join(factors))
                else:
                    parts.append("(%s)*%s" % (cs, "*".join(factors)))
            else:
                parts.append(cs)
        out = parts[0]
        for s in parts[1:]:
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out

    def __repr__(self):
        return "ExpPolySeq(%s)" % self.format()

    def to_json(self):
        el = self.field.elem_to_json
        return [{"c": el(c), "alpha": list(a), "lambda": [el(x) for x in l]}
                for (a, l), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0], repr(kv[0][1])))]

    @classmethod
    def from_json(cls, field, arity, obj):
        ef = field.elem_from_json
        return cls(field, arity, {(tuple(int(x) for x in t["alpha"]),
                                   tuple(ef(x) for x in t["lambda"])): ef(t["c"]) for t in obj})


def _difference_poly(field, alpha, rho):
    """Coefficients P_0..P_deg of a polynomial with rho*P(l+1) - P(l) = l^alpha.

    For rho = 1 the degree is alpha + 1 (Faulhaber); otherwise alpha.
    """
    one = field.one
    if rho == one:
        deg = alpha + 1
        P = [field.zero] * (deg + 1)
        # coefficient of l^i: sum_{j>i} P_j binom(j, i) = [i == alpha]
        for i in range(alpha, -1, -1):
            rhs = one if i == alpha else field.zero
            for j in range(i + 2, deg + 1):
                if P[j]:
                    rhs = rhs - P[j] * comb(j, i)
            den = field(i + 1)
            if not den:
                raise UnsupportedCharacteristic(
                    "partial sum unsupported in characteristic p (division by %d)" % (i + 1))
            P[i + 1] = rhs / den
        return P
    P = [field.zero] * (alpha + 1)
    # coefficient of l^i: (rho - 1) P_i + rho sum_{j>i} P_j binom(j, i) = [i == alpha]
    for i in range(alpha, -1, -1):
        rhs = one if i == alpha else field.zero
        for j in range(i + 1, alpha + 1):
            if P[j]:
                rhs = rhs - rho * P[j] * comb(j, i)
        P[i] = rhs / (rho - one)
    return P


def seq_partial_sum(u, theta):
    """u^[theta](l, k_2, ...) = sum_{k=1}^{l-1} u(k, k_2, ...) theta^(l-k)."""
    field = u.field
    theta = field(theta)
    if not theta:
        raise ValueError("theta must be nonzero")
    if u.arity < 1:
        raise ValueError("partial sum needs arity >= 1")
    out = {}

    def add(key, c):
        if c:
            out[key] = out[key] + c if key in out else c

    for (alpha, lam), c in u.terms.items():
        a, l = alpha[0], lam[0]
        rest_a, rest_l = alpha[1:], lam[1:]
        rho = l / theta
        P = _difference_poly(field, a, rho)
        # theta^l * sum_{k<l} k^a rho^k = P(l) lam^l - P(1) rho theta^l
        for j, pj in enumerate(P):
            add(((j,) + rest_a, (l,) + rest_l), c * pj)
        p1 = sum(P, field.zero)
        add(((0,) + rest_a, (theta,) + rest_l), -c * p1 * rho)
    return ExpPolySeq._raw(field, u.arity, out)


# ---------------------------------------------------------------------------
# xi terms and expressions

class XiTerm:
    """z^gamma * xi_(seq, a); the coefficient lives inside ``seq``."""

    __slots__ = ("gamma", "a", "seq")

    def __init__(self, gamma, a, seq):
        self.gamma = Fraction(gamma)
        self.a = tuple(Fraction(x) for x in a)
        self.seq = seq
        if len(self.a) != seq.arity:
            raise ValueError("a-tuple length %d does not match arity %d" % (len(self.a), seq.arity))
        if any(x <= 0 for x in self.a):
            raise ValueError("a-tuple entries must be positive")

    @property
    def arity(self):
        return len(self.a)

    def __repr__(self):
        return "XiTerm(%s, %s, %s)" % (self.gamma, self.a, self.seq.format())


def _fmt_q(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


class HahnExpression:
    """Finite sum of XiTerms, keyed by (gamma, a)."""

    __slots__ = ("field", "p", "terms")

    def __init__(self, field, p, terms=None):
        self.field = field
        self.p = p
        self.terms = {}
        for t in terms or ():
            self._add_term(t.gamma, t.a, t.seq)

    def _add_term(self, gamma, a, seq):
        key = (Fraction(gamma), tuple(Fraction(x) for x in a))
        cur = self.terms.get(key)
        new = seq if cur is None else cur + seq
        if new:
            self.terms[key] = new
        elif key in self.terms:
            del self.terms[key]

    @classmethod
    def zero(cls, field, p):
        return cls(field, p)

    @classmethod
    def const(cls, field, p, c):
        out = cls(field, p)
        if field(c):
            out._add_term(0, (), ExpPolySeq.constant(field, c))
        return out

    @classmethod
    def from_terms(cls, field, p, items):
        """items: iterable of (gamma, a, seq)."""
        out = cls(field, p)
        for g, a, s in items:
            out._add_term(g, a, s)
        return out

    def xi_terms(self):
        return [XiTerm(g, a, s) for (g, a), s in sorted(self.terms.items(), key=_key_order)]

    def copy(self):
        out = HahnExpression(self.field, self.p)
        out.terms = dict(self.terms)
        return out

    def __add__(self, other):
        if not isinstance(other, HahnExpression):
            other = HahnExpression.const(self.field, self.p, other)
        out = self.copy()
        for (g, a), s in other.terms.items():
            out._add_term(g, a, s)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = HahnExpression(self.field, self.p)
        out.terms = {k: -s for k, s in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, HahnExpression):
            other = HahnExpression.const(self.field, self.p, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = self.field(c)
        out = HahnExpression(self.field, self.p)
        if c:
            out.terms = {k: s.scale(c) for k, s in self.terms.items()}
        return out

    def mul_laurent(self, lp):
        """Product with a Laurent polynomial (or a constant)."""
        if not hasattr(lp, "terms") or isinstance(lp, HahnExpression):
            return self.scale(lp)
        out = HahnExpression(self.field, self.p)
        for e, c in lp.terms.items():
            for (g, a), s in self.terms.items():
                out._add_term(g + e, a, s.scale(c))
        return out

    def __mul__(self, other):
        return self.mul_laurent(other)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, HahnExpression):
            other = HahnExpression.const(self.field, self.p, other)
        return (self - other).terms == {}

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_one(self):
        return self == 1

    def over(self, field):
        out = HahnExpression(field, self.p)
        out.terms = {k: s.over(field) for k, s in self.terms.items()}
        return out

    def ramify(self, d):
        """z -> z^(1/d): exponents and a-tuples divided by d (not normalized)."""
        out = HahnExpression(self.field, self.p)
        for (g, a), s in self.terms.items():
            out._add_term(g / d, tuple(x / d for x in a), s)
        return out

    def max_exponent(self):
        return max((g for g, a in self.terms), default=None)

    def format(self):
        if not self.terms:
            return "0"
        parts = []
        for (g, a), s in sorted(self.terms.items(), key=_key_order):
            mono = "" if g == 0 else ("z" if g == 1 else "z^%s" % (_fmt_q(g) if g > 0 and g.denominator == 1
                                                                     else "(%s)" % _fmt_q(g)))
            if not a:
                c = self.field.format(s.constant_value())
                body = (c if not mono else (mono if c == "1" else ("-" + mono if c == "-1"
                                                                   else "(%s)*%s" % (c, mono))))
            else:
                xi = "xi[%s; a=(%s)]" % (s.format(), ", ".join(_fmt_q(x) for x in a))
                body = xi if not mono else "%s*%s" % (mono, xi)
            parts.append(body)
        out = parts[0]
        for s in parts[1:]:
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out

    def __repr__(self):
        return self.format()

    def to_json(self):
        return [{"gamma": _fmt_q(g), "a": [_fmt_q(x) for x in a], "seq": s.to_json()}
                for (g, a), s in sorted(self.terms.items(), key=_key_order)]

    @classmethod
    def from_json(cls, field, p, obj):
        out = cls(field, p)
        for t in obj:
            a = tuple(Fraction(x) for x in t["a"])
            out._add_term(Fraction(t["gamma"]), a, ExpPolySeq.from_json(field, len(a), t["seq"]))
        return out


def _key_order(kv):
    (g, a), _ = kv
    return (len(a), -g, a)


# ---------------------------------------------------------------------------
# Lemma-style closed-form solutions

def solve_basic(kappa, eta, rhs, field, p):
    """h with kappa*h(z^p) - eta*h(z) = rhs for a single XiTerm rhs.

    The rhs must be z^gamma * xi with gamma <= 0, and not a bare constant.
    """
    kappa, eta = field(kappa), field(eta)
    if not kappa or not eta:
        raise ValueError("kappa and eta must be nonzero")
    g, a, u = rhs.gamma, rhs.a, rhs.seq
    theta = eta / kappa
    inv = field.one / eta
    if g > 0:
        raise ValueError("right-hand side has positive exponent %s" % g)
    if g < 0 and not a:
        seq = ExpPolySeq.geometric(field, theta, u.constant_value() * inv)
        return HahnExpression.from_terms(field, p, [(0, (-g,), seq)])
    if g < 0:
        return HahnExpression.from_terms(field, p, [(0, (-g,) + a, u.prepend(theta).scale(inv))])
    if not a:
        raise ValueError("a nonzero constant right-hand side has no solution of this shape")
    return HahnExpression.from_terms(field, p, [(0, a, seq_partial_sum(u, theta).scale(inv))])


def xi_phi(e):
    """z -> z^p applied to every term."""
    p = e.p
    out = HahnExpression(e.field, p)
    for (g, a), u in e.terms.items():
        if not a:
            out._add_term(p * g, a, u)
            continue
        out._add_term(p * g - a[0], a[1:], u.slice(0, 1))
        out._add_term(p * g, a, u.shift(0, 1))
    return out


def _is_standard(x, p):
    return x.denominator % p != 0 and x.numerator % p != 0


def _slice_term(g, a, u, i, p):
    """Key and sequence of the k_i = 1 boundary term of z^g xi_(u, a)."""
    if i == 0:
        ga = g - a[0] / p
        na = tuple(x / p for x in a[1:])
    else:
        na = a[:i - 1] + (a[i - 1] + a[i] / p,) + tuple(x / p for x in a[i + 1:])
        ga = g
    return ga, na, u.slice(i, 1)


def _standardize(g, a, u, p, out):
    for i in range(len(a)):
        if _is_standard(a[i], p):
            continue
        if a[i].denominator % p == 0:
            # k_i -> k_i + 1: scale a_i.. by p, subtract the new k_i = 1 boundary
            w = u.shift(i, -1)
            b = a[:i] + tuple(x * p for x in a[i:])
            sg, sa, su = _slice_term(g, b, w, i, p)
            _standardize(sg, sa, -su, p, out)
            _standardize(g, b, w, p, out)
            return
        # p divides the numerator: peel off the k_i = 1 term
        sg, sa, su = _slice_term(g, a, u, i, p)
        _standardize(sg, sa, su, p, out)
        b = a[:i] + tuple(x / p for x in a[i:])
        _standardize(g, b, u.shift(i, 1), p, out)
        return
    out._add_term(g, a, u)


def normalize_xi(e):
    """Bring every a-tuple to the standard form (characteristic 0) and merge."""
    out = HahnExpression(e.field, e.p)
    if getattr(e.field, "char", 0):
        for (g, a), u in e.terms.items():
            out._add_term(g, a, u)
        return out
    for (g, a), u in e.terms.items():
        _standardize(g, a, u, e.p, out)
    return out


def is_standard_expression(e):
    return all(_is_standard(x, e.p) for (g, a) in e.terms for x in a)


def coefficient_at(e, gamma):
    """Coefficient of z^gamma, by enumeration of the index tuples."""
    gamma = Fraction(gamma)
    p = e.p
    total = e.field.zero
    for (g, a), u in e.terms.items():
        target = g - gamma          # sum a_i/p^K_i must equal this
        if not a:
            if target == 0:
                total = total + u.constant_value()
            continue
        if target <= 0:
            continue
        for ks in _index_tuples(a, p, target):
            total = total + u(*ks)
    return total


def _index_tuples(a, p, target):
    s = len(a)
    rest = [sum(a[i + 1:], Fraction(0)) for i in range(s)]
    out = []

    def dfs(i, K, remaining, ks):
        K_i = K + 1
        while True:
            term = a[i] / p ** K_i
            if term + rest[i] / p ** (K_i + 1) < remaining:
                break
            left = remaining - term
            if i == s - 1:
                if left == 0:
                    out.append(tuple(ks + [K_i - K]))
            elif left > 0:
                dfs(i + 1, K_i, left, ks + [K_i - K])
            K_i += 1

    dfs(0, 0, target, [])
    return out


# ---------------------------------------------------------------------------
# Algorithm 2

def compute_H(theta, field, p):
    """Unitriangular H of Hahn expressions with phi_p(H) C = Theta H.

    ``theta`` is an upper triangular matrix of LaurentPoly with constant
    diagonal; C is its constant term.
    """
    m = len(theta)
    C = [[t.constant_term() for t in row] for row in theta]
    for i in range(m):
        for j in range(i):
            if theta[i][j]:
                raise ValueError("Theta is not upper triangular")
        if theta[i][i].support() not in ([0],):
            raise ValueError("diagonal of Theta must be a nonzero constant")
    H = [[HahnExpression.const(field, p, 1 if i == j else 0) for j in range(m)] for i in range(m)]
    for j in range(m):
        for i in range(j - 1, -1, -1):
            rhs = HahnExpression.zero(field, p)
            for k in range(i + 1, j):
                if theta[i][k]:
                    rhs = rhs + H[k][j].mul_laurent(theta[i][k])
            off = theta[i][j] - C[i][j]
            if off:
                rhs = rhs + HahnExpression.from_terms(
                    field, p, [(e, (), ExpPolySeq.constant(field, c)) for e, c in off.terms.items()])
            for l in range(i + 1, j):
                if C[l][j] and H[i][l]:
                    rhs = rhs - xi_phi(H[i][l]).scale(C[l][j])
            h = HahnExpression.zero(field, p)
            for t in rhs.xi_terms():
                if t.gamma > 0 or (t.gamma == 0 and not t.a):
                    raise ValueError("nonnegative support in RHS at (%d,%d)" % (i + 1, j + 1))
                h = h + solve_basic(C[j][j], C[i][i], t, field, p)
            H[i][j] = h
    return H


def check_H(H, theta, field, p):
    """phi_p(H) C - Theta H, entrywise after normalization."""
    m = len(theta)
    C = [[t.constant_term() for t in row] for row in theta]
    out = []
    for i in range(m):
        row = []
        for j in range(m):
            acc = HahnExpression.zero(field, p)
            for l in range(m):
                if C[l][j]:
                    acc = acc + xi_phi(H[i][l]).scale(C[l][j])
                if theta[i][l]:
                    acc = acc - H[l][j].mul_laurent(theta[i][l])
            row.append(normalize_xi(acc))
        out.append(row)
    return out
