"""Admissible pairs (P, Theta) for phi_p(P) Theta = A P.

A pair is computed from a finite window of Laurent coefficients of P:
the coefficients f_nu, ..., f_mu of each column are stacked into one vector
of K^N ("pi"), and z^l A^{-1} f(z^p) acts on that window through the
matrices M_l.  The columns of P are found as the stable part of a subspace
fixpoint iteration, block after block.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import ceil

from .errors import DimensionOverflow, RamificationInsufficient
from .linalg import (Subspace, complement, det, mat_inv, mat_vec, preimage,
                     rank, rref, solve_in_span, zeros)
from .series import LaurentPoly, RationalFunctionField, Series, as_series


def in_support_set(e, p):
    """Membership in {s < 0 : p does not divide s} u {0}."""
    return e == 0 or (e < 0 and e % p != 0)


def _ceil_div(a, b):
    return -((-a) // b)


@dataclass
class WindowParams:
    nu_P: int
    nu_Theta: int
    nu: int
    mu: int
    m: int
    p: int
    val_A: int
    val_Ainv: int
    val_detA: int
    field: object = None
    Ainv: list = dc_field(default=None, repr=False)

    @property
    def N(self):
        return self.m * (self.mu - self.nu + 1)

    @property
    def width(self):
        return self.mu - self.nu + 1

    @property
    def V0(self):
        start = self.m * (self.nu_P - self.nu)
        return Subspace.coordinate(self.field, self.N, range(start, self.N))

    def support_window(self):
        """l in S_p with nu_Theta <= l <= 0, from 0 downwards."""
        return [l for l in range(0, self.nu_Theta - 1, -1) if in_support_set(l, self.p)]

    def as_tuple(self):
        return (self.nu_P, self.nu_Theta, self.nu, self.mu)


def _valuation(entries):
    vals = [x.valuation() for x in entries if x]
    return min(vals)


def window_params(sys):
    field, p, m = sys.field, sys.p, sys.m
    Kz = RationalFunctionField(field)
    A = sys.A
    val_A = _valuation([x for row in A for x in row])
    Ainv = mat_inv(Kz, A)
    val_Ainv = _valuation([x for row in Ainv for x in row])
    val_det = det(Kz, A).valuation()
    nu_P = _ceil_div(val_A, p - 1)
    bound = Fraction(p * m * val_A - p * val_det, p - 1)
    v = ceil(bound)
    while v < 0 and v % p == 0:
        v += 1
    if v > 0:
        raise ValueError("inconsistent valuations: support bound %s > 0" % bound)
    nu_Theta = v
    nu = min(nu_P, p * nu_P + val_Ainv) + nu_Theta
    t1 = _ceil_div(-(val_Ainv + nu_Theta), p - 1)
    t2 = Fraction(val_det, p - 1) - (m - 1) * nu_P
    if t2.denominator != 1:
        raise RamificationInsufficient(
            "ramification insufficient: val det A/(p-1) = %s is not an integer" % Fraction(val_det, p - 1))
    mu = max(t1, int(t2))
    return WindowParams(nu_P, nu_Theta, nu, mu, m, p, val_A, val_Ainv, val_det, field, Ainv)


def inverse_coefficients(params, kmax):
    """B_k for val A^{-1} <= k <= kmax, with A^{-1} = sum B_k z^k."""
    field, m = params.field, params.m
    exp = [[as_series(x, field, kmax) if x.is_laurent() else x.expand(kmax) for x in row]
           for row in params.Ainv]
    B = {}
    for k in range(params.val_Ainv, kmax + 1):
        B[k] = [[exp[i][j].coefficient(k) if (exp[i][j].order is None or k <= exp[i][j].order)
                 else field.zero for j in range(m)] for i in range(m)]
    return B


def build_Ml(sys, params, l, B=None):
    """Dense N x N matrix of f -> z^l A^{-1}(z) f(z^p) on the window."""
    if l not in params.support_window():
        raise ValueError("l = %d is not in the support window %s" % (l, params.support_window()))
    field, p, m = params.field, params.p, params.m
    nu, mu, nu_P = params.nu, params.mu, params.nu_P
    if B is None:
        B = inverse_coefficients(params, mu - params.nu_Theta - p * nu_P)
    W = params.width
    M = zeros(field, params.N, params.N)
    for i in range(W):
        n = nu + i
        for j in range(W):
            s = nu + j
            if s < nu_P:
                continue
            Bk = B.get(n - l - p * s)
            if Bk is None:
                continue
            for a in range(m):
                row = M[i * m + a]
                for b in range(m):
                    row[j * m + b] = Bk[a][b]
    return M


def pi_vector(params, column):
    """Stack the coefficients nu..mu of a column of series."""
    out = []
    for n in range(params.nu, params.mu + 1):
        for f in column:
            out.append(f.coefficient(n))
    return out


def pi_inverse(params, vec, order=None):
    field, m = params.field, params.m
    cols = [dict() for _ in range(m)]
    for t in range(params.width):
        n = params.nu + t
        for a in range(m):
            c = vec[t * m + a]
            if c:
                cols[a][n] = c
    return [Series(field, c, params.mu if order is None else order, 1) for c in cols]


@dataclass
class AdmissiblePair:
    P: list                  # m x m matrix of Series
    theta: list              # m x m matrix of LaurentPoly
    blocks: list             # block sizes b_1..b_r
    params: WindowParams
    theta_diag: list = dc_field(default_factory=list)    # constant blocks
    theta_off: dict = dc_field(default_factory=dict)     # (i, j, k) -> constant block
    trace: dict = dc_field(default_factory=dict, repr=False)

    @property
    def order(self):
        return min(f.order for row in self.P for f in row if f.order is not None)

    @property
    def field(self):
        return self.params.field


def admissible_pair(sys):
    params = window_params(sys)
    field, m, p = params.field, params.m, params.p
    nu_P, mu = params.nu_P, params.mu
    N = params.N
    B = inverse_coefficients(params, mu - params.nu_Theta - p * nu_P)
    lvals = params.support_window()
    Ms = {l: build_Ml(sys, params, l, B) for l in lvals}
    M = Ms[0]
    V0 = params.V0
    cap = m * (mu - nu_P + 1)

    X = Subspace.zero(field, N)
    Xs, Us, Es, Ydims, steps = [X], [], [], [], []
    while X.dim < m:
        U = Subspace.span(field, N, [mat_vec(field, Ms[l], x) for l in lvals for x in X.basis])
        F = V0
        for it in range(cap + 2):
            G = F.intersect(preimage(M, F + U)).intersect(F.image(M) + U)
            steps.append(G)
            if G == F:
                break
            F = G
        else:
            raise RuntimeError("fixpoint iteration exceeded %d steps" % cap)
        if F.dim <= X.dim:
            raise RamificationInsufficient(
                "ramification insufficient: the fixpoint stabilized at dimension %d < %d"
                % (X.dim, m))
        if F.dim > m or len(Es) >= m:
            raise DimensionOverflow("dimension overflow: dim X = %d > m = %d" % (F.dim, m))
        Y = complement(X, U.intersect(F))
        Z = complement(X + Y, F)
        Es.append([list(v) for v in Y.basis] + [list(v) for v in Z.basis])
        Ydims.append(Y.dim)
        Us.append(U)
        X = F
        Xs.append(X)

    blocks = [len(E) for E in Es]
    theta_diag, theta_off = [], {}
    for j, E in enumerate(Es):
        b, y = blocks[j], Ydims[j]
        z = b - y
        ME = [mat_vec(field, M, e) for e in E]
        sol = solve_in_span(field, ME, E[y:] + list(Us[j].basis))
        if sol is None:
            raise RuntimeError("M E_j is not congruent to E_Z R modulo U")
        R = sol[:z]
        _, piv = rref(R, b) if R else ([], [])
        V = []
        for c in range(b):
            if c not in piv:
                row = [field.zero] * b
                row[c] = field.one
                V.append(row)
        V += [list(r) for r in R]
        Tj = mat_inv(field, V)
        theta_diag.append(Tj)
        # E_j - M E_j Theta_j over the generators M_l E_i, i < j
        W = []
        for t in range(b):
            col = list(E[t])
            for s in range(b):
                if Tj[s][t]:
                    col = [x - Tj[s][t] * y for x, y in zip(col, ME[s])]
            W.append(col)
        gens, labels = [], []
        for i in range(j):
            for l in lvals:
                for s, e in enumerate(Es[i]):
                    gens.append(mat_vec(field, Ms[l], e))
                    labels.append((i, l, s))
        if j == 0:
            if any(x for col in W for x in col):
                raise RuntimeError("first block is not stable under M")
            continue
        sol = solve_in_span(field, W, gens)
        if sol is None:
            raise RuntimeError("E_j - M E_j Theta_j is not in U_{j-1}")
        for row, (i, l, s) in zip(sol, labels):
            key = (i, j, l)
            if key not in theta_off:
                theta_off[key] = zeros(field, blocks[i], b)
            theta_off[key][s] = list(row)

    offs = [sum(blocks[:j]) for j in range(len(blocks))]
    theta = [[LaurentPoly(field) for _ in range(m)] for _ in range(m)]
    for j, Tj in enumerate(theta_diag):
        for a in range(blocks[j]):
            for c in range(blocks[j]):
                theta[offs[j] + a][offs[j] + c] = LaurentPoly(field, {0: Tj[a][c]})
    for (i, j, l), blk in theta_off.items():
        for a in range(blocks[i]):
            for c in range(blocks[j]):
                if blk[a][c]:
                    cur = theta[offs[i] + a][offs[j] + c]
                    theta[offs[i] + a][offs[j] + c] = cur + LaurentPoly(field, {l: blk[a][c]})
    theta_off = {k: v for k, v in theta_off.items() if any(x for r in v for x in r)}

    cols = [pi_inverse(params, e) for E in Es for e in E]
    P = [[cols[c][r] for c in range(m)] for r in range(m)]
    trace = {"X": Xs, "U": Us, "E": Es, "Y_dims": Ydims, "steps": steps, "M": Ms}
    return AdmissiblePair(P, theta, blocks, params, theta_diag, theta_off, trace)


def extend_P(pair, sys, order):
    """Coefficients of P up to z^order from the block recurrence."""
    params = pair.params
    field, p, m = params.field, params.p, params.m
    nu_P = params.nu_P
    top = pair.order
    if order <= top:
        return pair
    B = inverse_coefficients(params, order - (p * nu_P + params.nu_Theta))
    coeffs = {}
    for n in range(nu_P, top + 1):
        coeffs[n] = [[pair.P[a][b].coefficient(n) for b in range(m)] for a in range(m)]
    theta_terms = {}
    for a in range(m):
        for b in range(m):
            for l, c in pair.theta[a][b].terms.items():
                theta_terms.setdefault(l, zeros(field, m, m))[a][b] = c
    zero = zeros(field, m, m)
    gcache = {}

    def G(t):
        # coefficient of z^t in P(z^p) Theta(z)
        if t in gcache:
            return gcache[t]
        acc = None
        for l, T in theta_terms.items():
            if (t - l) % p:
                continue
            s = (t - l) // p
            if s < nu_P:
                continue
            Ps = coeffs[s]
            prod = [[sum((Ps[a][k] * T[k][b] for k in range(m) if Ps[a][k] and T[k][b]),
                         field.zero) for b in range(m)] for a in range(m)]
            acc = prod if acc is None else [[x + y for x, y in zip(r1, r2)]
                                            for r1, r2 in zip(acc, prod)]
        gcache[t] = acc if acc is not None else zero
        return gcache[t]

    for n in range(top + 1, order + 1):
        acc = [[field.zero] * m for _ in range(m)]
        for k in range(params.val_Ainv, n - (p * nu_P + params.nu_Theta) + 1):
            Bk = B[k]
            if not any(x for r in Bk for x in r):
                continue
            g = G(n - k)
            for a in range(m):
                for b in range(m):
                    s = acc[a][b]
                    for c in range(m):
                        if Bk[a][c] and g[c][b]:
                            s = s + Bk[a][c] * g[c][b]
                    acc[a][b] = s
        coeffs[n] = acc
    P = [[Series(field, {n: coeffs[n][a][b] for n in coeffs if coeffs[n][a][b]}, order, 1)
          for b in range(m)] for a in range(m)]
    return AdmissiblePair(P, pair.theta, pair.blocks, params, pair.theta_diag, pair.theta_off,
                          pair.trace)


class AdmissibilityReport:
    def __init__(self):
        self.violations = []
        self.checked = []
        self.verified_order = None

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "admissible (checked: %s; residual verified through order %s)" % (
                ", ".join(self.checked), self.verified_order)
        return "not admissible: %s" % self.violations[0]


def check_admissible(sys, P, theta, order=None):
    """Check the admissible-pair invariants; returns a report (truthy when ok)."""
    rep = AdmissibilityReport()
    field, p, m = sys.field, sys.p, sys.m
    Kz = RationalFunctionField(field)
    params = window_params(sys)
    theta = [[t if isinstance(t, LaurentPoly) else Kz(t).to_laurent() for t in row] for row in theta]
    P = [[f if isinstance(f, Series) else as_series(f, field, order if order is not None else 0)
          for f in row] for row in P]

    for row in theta:
        for t in row:
            for e in t.terms:
                if not in_support_set(e, p):
                    rep.violations.append("support ∉ S_p (exponent %d in Theta)" % e)
                    return rep
    rep.checked.append("support in S_p")
    for row in theta:
        for t in row:
            if t and t.valuation() < params.nu_Theta:
                rep.violations.append("val Theta < nu_Theta")
                return rep
    for row in P:
        for f in row:
            v = f.valuation()
            if v is not None and v < params.nu_P:
                rep.violations.append("val P < nu_P")
                return rep
    rep.checked.append("valuation bounds")
    dT = det(Kz, [[Kz(t) for t in row] for row in theta])
    if not dT or not (dT.den.deg == 0 and dT.num.deg == 0):
        rep.violations.append("det Theta is not a nonzero constant")
        return rep
    rep.checked.append("det Theta constant")
    top = min((f.order for row in P for f in row if f.order is not None), default=None)
    if top is None or top >= params.mu:
        cols = [pi_vector(params, [P[r][c] for r in range(m)]) for c in range(m)]
        if rank(cols) != m:
            rep.violations.append("columns of pi(P) are dependent")
            return rep
        rep.checked.append("rank pi(P) = m")
    # phi_p(P) Theta - A P
    if order is None:
        order = top if top is not None else 20
    lowP = min((f._low() for row in P for f in row if f._low() is not None), default=0)
    need = order + max(0, -params.val_A) + max(0, -lowP) + 2
    A = [[as_series(x, field, need) for x in row] for row in sys.A]
    Pphi = [[f.substitute_power(p) for f in row] for row in P]
    Th = [[t.to_series() for t in row] for row in theta]
    lowest = None
    for a in range(m):
        for b in range(m):
            lhs = Series.zero(field)
            rhs = Series.zero(field)
            for k in range(m):
                lhs = lhs + Pphi[a][k] * Th[k][b]
                rhs = rhs + A[a][k] * P[k][b]
            res = (lhs - rhs).truncate(order)
            if res.coeffs:
                n = min(res.coeffs)
                rep.violations.append("phi(P) Theta != A P at entry (%d,%d), exponent %s"
                                      % (a + 1, b + 1, Fraction(n, res.d)))
                return rep
            oe = res.order_exponent
            if oe is not None:
                lowest = oe if lowest is None else min(lowest, oe)
    rep.verified_order = lowest
    rep.checked.append("phi(P) Theta = A P")
    return rep
