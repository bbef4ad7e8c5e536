"""Constant systems phi_p(Y) = C Y and the ring of the symbols e_c, l.

Elements are sums coeff * e_c * l^[k] with l^[k] = binom(l, k), the
falling-factorial basis.  phi_p acts by e_c -> c e_c and l -> l + 1, so
phi(l^[k]) = l^[k] + l^[k-1].
"""

from fractions import Fraction

from .fields import find_roots
from .linalg import (charpoly, identity, is_upper_triangular, is_zero_matrix, mat_add,
                     mat_inv, mat_mul, mat_pow, mat_scale, mat_sub, normalize_first, nullspace,
                     zeros)
from .poly import Poly, poly_xgcd


class ConstElem:
    """Finite sum coeff * e_c * l^[k], keyed by (c, k)."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        out = {}
        for (c, k), v in (terms or {}).items():
            c = field(c)
            if not c:
                raise ValueError("e_0 is not allowed")
            key = (c, int(k))
            out[key] = out[key] + v if key in out else v
        self.terms = {key: v for key, v in out.items() if v}

    @classmethod
    def const(cls, field, v):
        return cls(field, {(field.one, 0): field(v)})

    @classmethod
    def e(cls, field, c, coeff=1):
        return cls(field, {(c, 0): field(coeff)})

    @classmethod
    def ell(cls, field, k=1, coeff=1):
        """coeff * l^[k]."""
        return cls(field, {(field.one, k): field(coeff)})

    def _co(self, other):
        return other if isinstance(other, ConstElem) else ConstElem.const(self.field, other)

    def __add__(self, other):
        o = self._co(other)
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out[k] + v if k in out else v
        return ConstElem(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return ConstElem(self.field, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def scale(self, s):
        return ConstElem(self.field, {k: v * s for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, ConstElem):
            return self.scale(self.field(other))
        out = {}
        for (c1, k1), v1 in self.terms.items():
            for (c2, k2), v2 in other.terms.items():
                if k1 and k2:
                    raise NotImplementedError("products l^[a] * l^[b] are not supported")
                key = (c1 * c2, k1 + k2)
                out[key] = out[key] + v1 * v2 if key in out else v1 * v2
        return ConstElem(self.field, out)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        try:
            o = self._co(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def over(self, field):
        return ConstElem(field, {(field(c), k): field(v) for (c, k), v in self.terms.items()})

    def keys(self):
        return sorted(self.terms, key=_ckey)

    def format(self):
        if not self.terms:
            return "0"
        fmt = self.field.format
        one = self.field.one
        parts = []
        for key in self.keys():
            c, k = key
            v = self.terms[key]
            sym = []
            if c != one:
                sym.append("e_{%s}" % fmt(c))
            if k:
                sym.append("l" if k == 1 else "l^[%d]" % k)
            vs = fmt(v)
            if not sym:
                parts.append(vs)
            elif vs == "1":
                parts.append("*".join(sym))
            elif vs == "-1":
                parts.append("-" + "*".join(sym))
            else:
                body = vs[1:] if vs.startswith("-") else vs
                if any(ch in body for ch in "+-/ "):
                    vs = "(%s)" % vs
                parts.append("%s*%s" % (vs, "*".join(sym)))
        out = parts[0]
        for s in parts[1:]:
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out

    def __repr__(self):
        return self.format()

    def to_json(self):
        el = self.field.elem_to_json
        return [{"c": el(c), "k": k, "coeff": el(self.terms[(c, k)])} for c, k in self.keys()]

    @classmethod
    def from_json(cls, field, obj):
        ef = field.elem_from_json
        return cls(field, {(ef(t["c"]), int(t["k"])): ef(t["coeff"]) for t in obj})


def _ckey(key):
    c, k = key
    return (k, repr(c))


def phi_const(x, p=None):
    """phi_p on constants: e_c l^[k] -> c e_c (l^[k] + l^[k-1])."""
    out = {}
    for (c, k), v in x.terms.items():
        for kk in ((k, k - 1) if k else (k,)):
            key = (c, kk)
            out[key] = out[key] + c * v if key in out else c * v
    return ConstElem(x.field, out)


def to_monomial(x):
    """{(c, j): coeff} in the basis e_c l^j (characteristic 0)."""
    if getattr(x.field, "char", 0):
        raise ValueError("monomial basis needs characteristic 0")
    out = {}
    for (c, k), v in x.terms.items():
        # l(l-1)...(l-k+1) / k!
        poly = [Fraction(1)]
        for t in range(k):
            nxt = [Fraction(0)] * (len(poly) + 1)
            for j, a in enumerate(poly):
                nxt[j + 1] += a
                nxt[j] -= t * a
            poly = nxt
        fk = Fraction(1, 1)
        for t in range(2, k + 1):
            fk *= t
        for j, a in enumerate(poly):
            if a:
                key = (c, j)
                out[key] = out.get(key, x.field.zero) + v * x.field(a / fk)
    return {k: v for k, v in out.items() if v}


def from_monomial(field, mono):
    """Inverse of to_monomial: l^j = sum_k S(j, k) k! l^[k]."""
    out = {}
    for (c, j), v in mono.items():
        # Stirling numbers of the second kind
        S = [[0] * (j + 1) for _ in range(j + 1)]
        S[0][0] = 1
        for n in range(1, j + 1):
            for k in range(1, n + 1):
                S[n][k] = k * S[n - 1][k] + S[n - 1][k - 1]
        for k in range(j + 1):
            if S[j][k]:
                fk = 1
                for t in range(2, k + 1):
                    fk *= t
                key = (c, k)
                out[key] = out.get(key, field.zero) + v * S[j][k] * fk
    return ConstElem(field, out)


# ---------------------------------------------------------------------------
# matrices

def const_matrix(field, M):
    return [[ConstElem.const(field, x) for x in row] for row in M]


def cmat_mul(A, B):
    """Product of matrices whose entries are field elements or ConstElems."""
    out = []
    for row in A:
        orow = []
        for j in range(len(B[0])):
            acc = None
            for k, a in enumerate(row):
                b = B[k][j]
                if not a or not b:
                    continue
                if isinstance(a, ConstElem):
                    t = a * b
                else:
                    t = b * a
                acc = t if acc is None else acc + t
            orow.append(acc)
        out.append(orow)
    return out


def _eigenvalues(field, C):
    """[(lambda, multiplicity)] and the field containing them."""
    if is_upper_triangular(C):
        out = []
        for i in range(len(C)):
            x = C[i][i]
            for k, (y, e) in enumerate(out):
                if y == x:
                    out[k] = (y, e + 1)
                    break
            else:
                out.append((x, 1))
        return out, field
    return find_roots(field, charpoly(field, C))


def _poly_at(field, f, M):
    n = len(M)
    acc = zeros(field, n, n)
    for c in reversed(f.coeffs):
        acc = mat_mul(field, acc, M)
        for i in range(n):
            acc[i][i] = acc[i][i] + c
    return acc


def dunford(C, field):
    """Multiplicative Jordan decomposition C = D U; returns (D, U, eigen, field)."""
    n = len(C)
    eig, F = _eigenvalues(field, C)
    C = [[F(x) for x in row] for row in C]
    if any(not lam for lam, _ in eig):
        raise ValueError("C must be invertible")
    x = Poly.x(F)
    qs = [(x - Poly.const(F, lam)) ** e for lam, e in eig]
    total = _prod(F, qs)
    D = zeros(F, n, n)
    for i, (lam, _) in enumerate(eig):
        rest = Poly.const(F, 1)
        for j, q in enumerate(qs):
            if j != i:
                rest = rest * q
        g, s, t = poly_xgcd(rest, qs[i])
        if g.deg != 0:
            raise ArithmeticError("eigenvalue factors are not coprime")
        proj = _poly_at(F, (s * rest) % total, C)
        D = mat_add(D, mat_scale(proj, lam))
    U = mat_mul(F, mat_inv(F, D), C)
    N = mat_sub(U, identity(F, n))
    if not is_zero_matrix(mat_pow(F, N, n)):
        raise ArithmeticError("U is not unipotent")
    R = identity(F, n)
    for lam, _ in eig:
        R = mat_mul(F, R, mat_sub(D, mat_scale(identity(F, n), lam)))
    if not is_zero_matrix(R):
        raise ArithmeticError("D is not semisimple")
    return D, U, eig, F


def _prod(F, qs):
    out = Poly.const(F, 1)
    for q in qs:
        out = out * q
    return out


def eigenbasis(D, eig, F):
    """Columns S and the eigenvalue of each column, D = S diag S^-1."""
    n = len(D)
    cols, vals = [], []
    for lam, _ in eig:
        K = nullspace(F, mat_sub(D, mat_scale(identity(F, n), lam)), n)
        for v in K:
            cols.append(normalize_first(v))
            vals.append(lam)
    if len(cols) != n:
        raise ArithmeticError("D is not diagonalizable")
    S = [[cols[j][i] for j in range(n)] for i in range(n)]
    return S, vals


def exp_constant(C, field):
    """Fundamental matrix e_C of phi_p(Y) = C Y; returns (e_C, field)."""
    n = len(C)
    D, U, eig, F = dunford(C, field)
    S, vals = eigenbasis(D, eig, F)
    Sinv = mat_inv(F, S)
    # e_D = sum over columns t of e_{c_t} S[:, t] Sinv[t, :]; repeated eigenvalues accumulate
    eD = [[sum((ConstElem(F, {(vals[t], 0): S[a][t] * Sinv[t][b]}) for t in range(n)),
               ConstElem(F)) for b in range(n)] for a in range(n)]
    N = mat_sub(U, identity(F, n))
    eU = [[ConstElem(F) for _ in range(n)] for _ in range(n)]
    Nk = identity(F, n)
    for k in range(n):
        if is_zero_matrix(Nk):
            break
        for a in range(n):
            for b in range(n):
                if Nk[a][b]:
                    eU[a][b] = eU[a][b] + ConstElem(F, {(F.one, k): Nk[a][b]})
        Nk = mat_mul(F, Nk, N)
    eC = [[sum((eD[a][t] * eU[t][b] for t in range(n)), ConstElem(F)) for b in range(n)]
          for a in range(n)]
    return eC, F


def phi_matrix(E, p=None):
    return [[phi_const(x, p) for x in row] for row in E]


def check_exp(C, E):
    """True when phi(E) = C E holds term by term."""
    F = E[0][0].field
    lhs = phi_matrix(E)
    rhs = cmat_mul([[F(x) for x in row] for row in C], E)
    return all((l - (r if r is not None else 0)) == 0 for lr, rr in zip(lhs, rhs)
               for l, r in zip(lr, rr))
