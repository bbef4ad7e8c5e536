"""End-to-end solver: a basis of solutions of a linear Mahler equation.

Each solution is returned as a finite sum

    y = sum f(z) * xi_omega * e_c * l^[j]

with truncated Puiseux series f, built as the first row of
P(z^(1/d)) H(z^(1/d)) e_C.
"""

from fractions import Fraction
from math import ceil

from .constants import ConstElem, exp_constant, phi_const
from .errors import RamificationInsufficient
from .fields import find_roots
from .hahn import ExpPolySeq, HahnExpression, compute_H, normalize_xi, xi_phi
from .linalg import (Subspace, charpoly, complement, identity, is_upper_triangular, mat_inv,
                     mat_sub, mat_scale, normalize_first, nullspace, left_kernel_rational,
                     mat_mul)
from .newton import MahlerEquation, build_companion, newton_slopes, ramification_index
from .series import LaurentPoly, RationalFunctionField, Series, as_series
from .window import admissible_pair, extend_P


# ---------------------------------------------------------------------------
# gauge to triangular form

def _triangular_basis(T, F):
    """Columns S with S^-1 T S upper triangular, from generalized eigenspace flags."""
    b = len(T)
    roots, F = find_roots(F, charpoly(F, T))
    T = [[F(x) for x in row] for row in T]
    cols = []
    for lam, mult in roots:
        N = mat_sub(T, mat_scale(identity(F, b), lam))
        prev = Subspace.zero(F, b)
        Nk = identity(F, b)
        for _ in range(mult):
            Nk = mat_mul(F, Nk, N)
            K = Subspace.span(F, b, nullspace(F, Nk, b))
            for v in complement(prev, K).vectors():
                cols.append(normalize_first(v))
            prev = K
    if len(cols) != b:
        raise ArithmeticError("generalized eigenvectors do not span")
    return [[cols[j][i] for j in range(b)] for i in range(b)], F


def triangularize_theta(theta, blocks, field):
    """Constant block-diagonal Q with Q Theta Q^-1 upper triangular.

    Returns (Q, Q^-1, Theta', field) where field may be an extension.
    """
    m = len(theta)
    F = field
    pieces = []
    off = 0
    for b in blocks:
        T = [[theta[off + i][off + j].constant_term() for j in range(b)] for i in range(b)]
        if b == 1 or is_upper_triangular(T):
            pieces.append(None)
        else:
            S, F = _triangular_basis(T, F)
            pieces.append(S)
        off += b
    S = identity(F, m)
    off = 0
    for b, piece in zip(blocks, pieces):
        if piece is not None:
            for i in range(b):
                for j in range(b):
                    S[off + i][off + j] = F(piece[i][j])
        off += b
    Q = mat_inv(F, S)
    th = [[t.over(F) for t in row] for row in theta]
    new = [[LaurentPoly(F) for _ in range(m)] for _ in range(m)]
    for a in range(m):
        for c in range(m):
            acc = LaurentPoly(F)
            for k in range(m):
                if not Q[a][k]:
                    continue
                for l in range(m):
                    if th[k][l] and S[l][c]:
                        acc = acc + th[k][l] * (Q[a][k] * S[l][c])
            new[a][c] = acc
    return Q, S, new, F


# ---------------------------------------------------------------------------
# solution expressions

def _fmt_q(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


class SolutionExpression:
    """sum over keys (c, j, a, alpha, lambda) of f * xi * e_c * l^[j].

    xi is xi_(k^alpha lambda^k, a); a = () means xi = 1.
    """

    def __init__(self, field, p, d=1, terms=None):
        self.field = field
        self.p = p
        self.d = d
        self.terms = {}
        for key, f in (terms or {}).items():
            self.add(key, f)

    def add(self, key, f):
        cur = self.terms.get(key)
        self.terms[key] = f if cur is None else cur + f

    def prune(self):
        self.terms = {k: f for k, f in self.terms.items() if f}
        return self

    def keys(self):
        return sorted(self.terms, key=_sol_key)

    def support(self):
        """Keys whose truncation has a nonzero coefficient."""
        return [k for k in self.keys() if self.terms[k]]

    @property
    def K0(self):
        return {c for c, j, a, al, la in self.support()}

    @property
    def j0(self):
        return max((j for c, j, a, al, la in self.support()), default=0)

    @property
    def omegas(self):
        return {(a, al, la) for c, j, a, al, la in self.support()}

    def min_valuation(self):
        vals = [f.valuation() for f in self.terms.values() if f.valuation() is not None]
        return min(vals) if vals else None

    def order(self):
        return min((f.order_exponent for f in self.terms.values() if f.order is not None),
                   default=None)

    def series(self, c=None, j=0, a=(), alpha=(), lam=()):
        if c is None:
            c = self.field.one
        return self.terms.get((self.field(c), j, tuple(a), tuple(alpha), tuple(lam)))

    def format(self):
        if not self.terms:
            return "0"
        fmt = self.field.format
        one = self.field.one
        parts = []
        keys = self.support() or self.keys()
        for key in keys:
            c, j, a, al, la = key
            f = self.terms[key]
            factors = ["(%s)" % f.format()]
            if a:
                seq = ExpPolySeq(self.field, len(a), {(al, la): one}).format()
                factors.append("xi[%s; a=(%s)]" % (seq, ", ".join(_fmt_q(x) for x in a)))
            if c != one:
                factors.append("e_{%s}" % fmt(c))
            if j:
                factors.append("l" if j == 1 else "l^[%d]" % j)
            parts.append("*".join(factors))
        return "\n  + ".join(parts)

    def __repr__(self):
        return self.format()

    def to_json(self):
        el = self.field.elem_to_json
        out = []
        for key in self.keys():
            c, j, a, al, la = key
            out.append({"c": el(c), "j": j, "a": [_fmt_q(x) for x in a], "alpha": list(al),
                        "lambda": [el(x) for x in la], "f": self.terms[key].to_json()})
        return out

    @classmethod
    def from_json(cls, field, p, d, obj):
        ef = field.elem_from_json
        out = cls(field, p, d)
        for t in obj:
            key = (ef(t["c"]), int(t["j"]), tuple(Fraction(x) for x in t["a"]),
                   tuple(int(x) for x in t["alpha"]), tuple(ef(x) for x in t["lambda"]))
            out.add(key, Series.from_json(field, t["f"]))
        return out

    def __eq__(self, other):
        return (isinstance(other, SolutionExpression) and self.p == other.p
                and self.terms == other.terms)


def _sol_key(key):
    c, j, a, al, la = key
    return (len(a), a, al, repr(la), j, repr(c))


class BasisResult:
    def __init__(self, solutions, d, v, order, field, p, provenance=None):
        self.solutions = solutions
        self.d = d
        self.v = v
        self.order = order
        self.field = field
        self.p = p
        self.provenance = provenance or {}

    @property
    def K0(self):
        out = set()
        for s in self.solutions:
            out |= s.K0
        return out

    @property
    def j0(self):
        return max((s.j0 for s in self.solutions), default=0)

    @property
    def Omega1(self):
        out = set()
        for s in self.solutions:
            out |= s.omegas
        return out

    def format(self):
        lines = ["d = %d, v = %d" % (self.d, self.v)]
        for i, s in enumerate(self.solutions):
            lines.append("y%d = %s" % (i + 1, s.format()))
        return "\n".join(lines)

    def to_json(self):
        el = self.field.elem_to_json
        K0 = sorted(self.K0, key=repr)
        om = sorted(self.Omega1, key=lambda w: (len(w[0]), w[0], w[1], repr(w[2])))
        return {"field": self.field.to_json(), "p": self.p, "d": self.d, "v": self.v,
                "order": _fmt_q(self.order),
                "K0": [el(c) for c in K0], "j0": self.j0,
                "Omega1": [{"a": [_fmt_q(x) for x in a], "alpha": list(al),
                            "lambda": [el(x) for x in la]} for a, al, la in om],
                "solutions": [s.to_json() for s in self.solutions]}

    @classmethod
    def from_json(cls, obj):
        from .fields import field_from_json
        field = field_from_json(obj["field"])
        p, d = int(obj["p"]), int(obj["d"])
        sols = [SolutionExpression.from_json(field, p, d, s) for s in obj["solutions"]]
        return cls(sols, d, int(obj["v"]), Fraction(obj["order"]), field, p)


# ---------------------------------------------------------------------------
# Algorithm 4

def ramification_guard(d, p, m):
    """d divides p^m - 1."""
    return (p ** m - 1) % d == 0


def solve_equation(eq, n):
    """Basis of solutions with Puiseux coefficients known through z^n."""
    p, m = eq.p, eq.order
    d = ramification_index(newton_slopes(eq), p)
    if not ramification_guard(d, p, m):
        raise ArithmeticError("ramification index %d does not divide p^m - 1" % d)
    eqd = eq.substitute(d)
    sys = build_companion(eqd)
    try:
        pair = admissible_pair(sys)
    except RamificationInsufficient as exc:
        raise RamificationInsufficient("%s (after z -> z^%d)" % (exc, d)) from exc
    return basis_from_pair(pair, sys, n, d)


def basis_from_pair(pair, sys, n, d=1, row=None):
    """Solutions row * P(z^(1/d)) H(z^(1/d)) e_C from an admissible pair.

    ``row`` is a constant row vector picking the solution component out of
    the fundamental matrix; the default (1, 0, ..., 0) suits companion systems.
    """
    p, m = sys.p, sys.m
    if d * n > pair.order:
        pair = extend_P(pair, sys, d * n)
    Q, S, theta, F = triangularize_theta(pair.theta, pair.blocks, sys.field)
    P = [[f.over(F) for f in r] for r in pair.P]
    # P Q^-1 = P S
    Pg = [[sum((P[a][k].scale(S[k][b]) for k in range(m) if S[k][b]), Series.zero(F, None))
           for b in range(m)] for a in range(m)]
    H = compute_H(theta, F, p)
    C = [[theta[i][j].constant_term() for j in range(m)] for i in range(m)]
    eC, F2 = exp_constant(C, F)
    if F2 != F:
        F = F2
        Pg = [[f.over(F) for f in r] for r in Pg]
        H = [[h.over(F) for h in r] for r in H]
    if row is None:
        row = [F.one] + [F.zero] * (m - 1)
    row = [F(x) for x in row]
    Hd = [[normalize_xi(h.ramify(d)) for h in r] for r in H]
    top = [sum((Pg[a][k].scale(row[a]) for a in range(m) if row[a]), Series.zero(F, None)).ramify(d)
           for k in range(m)]
    sols = []
    for col in range(m):
        sol = SolutionExpression(F, p, d)
        for k in range(m):
            f = top[k]
            if not f and f.order is None:
                continue
            for l in range(m):
                e = eC[l][col]
                if not e:
                    continue
                for (g, a), u in Hd[k][l].terms.items():
                    fg = f.shift(g)
                    for (al, la), cu in u.terms.items():
                        for (c, j), ce in e.terms.items():
                            sol.add((c, j, a, al, la), fg.scale(cu * ce))
        # keys that are zero so far stay: their truncation order matters
        sols.append(sol)
    # a priori bound val P >= nu_P, sharpened by the actual valuations
    low = [s.min_valuation() for s in sols if s.min_valuation() is not None]
    v = max([0, ceil(Fraction(-pair.params.nu_P, d))] + [ceil(-x) for x in low])
    prov = {"pair": pair, "Q": Q, "theta": theta, "H": H, "eC": eC, "C": C, "d": d,
            "system": sys, "P": Pg}
    return BasisResult(sols, d, v, Fraction(n), F, p, prov)


# ---------------------------------------------------------------------------
# verification

class VerifyReport:
    def __init__(self):
        self.orders = []
        self.failures = []

    @property
    def ok(self):
        return not self.failures

    def __bool__(self):
        return self.ok

    @property
    def verified_order(self):
        return min(self.orders) if self.orders else None

    def __str__(self):
        if self.ok:
            return "residual 0 through order %s" % _fmt_q(self.verified_order)
        return "; ".join(self.failures)


def apply_equation(eq, sol):
    """sum_k a_k phi_p^k(sol), grouped by keys (c, j, a, alpha, lambda)."""
    F, p = sol.field, eq.p
    out = SolutionExpression(F, p, sol.d)
    one = F.one
    for key, f in sol.terms.items():
        c, j, a, al, la = key
        xi = HahnExpression.from_terms(F, p, [(0, a, ExpPolySeq(F, len(a), {(al, la): one}))])
        const = ConstElem(F, {(c, j): one})
        fk = f
        for k, ak in enumerate(eq.coeffs):
            if k:
                fk = fk.substitute_power(p)
                xi = xi_phi(xi)
                const = phi_const(const, p)
            if not ak:
                continue
            xin = normalize_xi(xi)
            low = fk._low()
            low = Fraction(low, fk.d) if low is not None else Fraction(0)
            shifts = [g for (g, _a) in xin.terms] or [Fraction(0)]
            if fk.order is not None:
                need = int(ceil(fk.order_exponent - low + max(0, -min(shifts)))) + ak.valuation() + 2
            else:
                need = 0
            ser = as_series(ak, F, max(need, 0))
            base = ser * fk
            for (g, a2), u in xin.terms.items():
                bg = base.shift(g)
                for (al2, la2), cu in u.terms.items():
                    for (c2, j2), ce in const.terms.items():
                        out.add((c2, j2, a2, al2, la2), bg.scale(cu * ce))
    return out


def verify_basis(eq, res, order=None):
    rep = VerifyReport()
    for i, sol in enumerate(res.solutions):
        resid = apply_equation(_eq_over(eq, sol.field), sol)
        worst = None
        for key in resid.keys():
            r = resid.terms[key]
            if order is not None:
                r = r.truncate(order)
            if r.coeffs:
                e = min(r.coeffs)
                rep.failures.append("solution %d: nonzero residual at z^%s (key %s)"
                                    % (i + 1, _fmt_q(Fraction(e, r.d)), _fmt_key(key, sol.field)))
                break
            oe = r.order_exponent
            if oe is not None:
                worst = oe if worst is None else min(worst, oe)
        rep.orders.append(worst if worst is not None else Fraction(order if order is not None else 0))
    return rep


def _fmt_key(key, F):
    c, j, a, al, la = key
    return "c=%s, j=%d, a=(%s)" % (F.format(c), j, ", ".join(_fmt_q(x) for x in a))


def _eq_over(eq, F):
    if eq.field == F:
        return eq
    Kz = RationalFunctionField(F)
    return MahlerEquation(eq.p, [Kz(_rf_over(c, F)) for c in eq.coeffs], F)


def _rf_over(r, F):
    from .poly import Poly
    from .series import RationalFunction
    return RationalFunction(Poly(F, r.num.coeffs), Poly(F, r.den.coeffs))


# ---------------------------------------------------------------------------
# entry equations

def entry_equation(pair, sys, i, j, kmax=None):
    """A Mahler equation satisfied by the entry P_(i,j) (0-based indices)."""
    field, p, m = sys.field, sys.p, sys.m
    Kz = RationalFunctionField(field)
    if kmax is None:
        kmax = m * m
    A = sys.A
    theta = [[Kz(t.to_rational()) for t in row] for row in pair.theta]
    L = identity(Kz, m)
    R = identity(Kz, m)
    rows = []
    for k in range(kmax + 1):
        rows.append([L[i][a] * R[b][j] for a in range(m) for b in range(m)])
        if k:
            v = left_kernel_rational(rows, field)
            if v is not None and v[0]:
                return MahlerEquation(p, v, field)
        q = p ** k
        Ak = [[x.subs_power(q) for x in row] for row in A]
        Tk = [[x.subs_power(q) for x in row] for row in theta]
        L = mat_mul(Kz, Ak, L)
        R = mat_mul(Kz, R, mat_inv(Kz, Tk))
    raise ArithmeticError("no annihilating equation with k <= %d" % kmax)
