"""Dense exact linear algebra and the subspace lattice.

Matrices are lists of rows.  Every routine takes the field explicitly so
that empty matrices and fresh zeros are well typed; elements only need the
usual arithmetic operators and truthiness for zero tests.
"""


def zeros(field, r, c):
    z = field.zero
    return [[z] * c for _ in range(r)]


def identity(field, n):
    out = zeros(field, n, n)
    for i in range(n):
        out[i][i] = field.one
    return out


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def mat_mul(field, A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = zeros(field, len(A), cols)
    for i, row in enumerate(A):
        orow = out[i]
        for k in range(inner):
            a = row[k]
            if not a:
                continue
            brow = B[k]
            for j in range(cols):
                b = brow[j]
                if b:
                    orow[j] = orow[j] + a * b
    return out


def mat_vec(field, A, v):
    out = []
    for row in A:
        acc = field.zero
        for a, x in zip(row, v):
            if a and x:
                acc = acc + a * x
        out.append(acc)
    return out


def mat_add(A, B):
    return [[a + b for a, b in zip(r, s)] for r, s in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(r, s)] for r, s in zip(A, B)]


def mat_scale(A, c):
    return [[a * c for a in r] for r in A]


def mat_pow(field, A, e):
    out = identity(field, len(A))
    for _ in range(e):
        out = mat_mul(field, out, A)
    return out


def is_zero_matrix(A):
    return all(not x for row in A for x in row)


def is_upper_triangular(A):
    return all(not A[i][j] for i in range(len(A)) for j in range(i))


def rref(M, ncols=None):
    """Reduced row echelon form: returns (rows, pivot columns).

    Pivoting takes the first nonzero entry in natural column order; zero
    rows are dropped.
    """
    rows = [list(r) for r in M]
    if not rows:
        return [], []
    n = len(rows[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        prow = [x * inv if x else x for x in prow]
        rows[r] = prow
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [x - f * y if y else x for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(M):
    return len(rref(M)[1])


def nullspace(field, M, ncols):
    """Basis of {v : M v = 0}, one vector per free column (free entry = 1)."""
    R, piv = rref(M, ncols) if M else ([], [])
    pivset = set(piv)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [field.zero] * ncols
        v[f] = field.one
        for row, c in zip(R, piv):
            if row[f]:
                v[c] = -row[f]
        out.append(v)
    return out


def det(field, A):
    n = len(A)
    rows = [list(r) for r in A]
    acc = field.one
    for c in range(n):
        piv = None
        for i in range(c, n):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            return field.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            acc = -acc
        p = rows[c][c]
        acc = acc * p
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f / p
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return acc


def mat_inv(field, A):
    n = len(A)
    aug = [list(r) + e for r, e in zip(A, identity(field, n))]
    R, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R[:n]]


def normalize_first(v):
    """Scale v so that its first nonzero entry is 1."""
    for x in v:
        if x:
            inv = 1 / x
            return [y * inv for y in v]
    return list(v)


# ---------------------------------------------------------------------------
# subspaces

class Subspace:
    """Subspace of K^n stored as the rows of its RREF basis."""

    __slots__ = ("field", "n", "basis", "pivots")

    def __init__(self, field, n, basis, pivots):
        self.field = field
        self.n = n
        self.basis = tuple(tuple(r) for r in basis)
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, field, n, vectors):
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != n:
                raise ValueError("vector of length %d in ambient dimension %d" % (len(v), n))
        R, piv = rref(vectors, n) if vectors else ([], [])
        return cls(field, n, R, piv)

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, [], [])

    @classmethod
    def full(cls, field, n):
        return cls(field, n, identity(field, n), range(n))

    @classmethod
    def coordinate(cls, field, n, indices):
        """Span of the standard basis vectors at the given indices."""
        rows = []
        for i in sorted(indices):
            v = [field.zero] * n
            v[i] = field.one
            rows.append(v)
        return cls(field, n, rows, sorted(indices))

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.n == other.n
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.n, self.basis))

    def _check(self, other):
        if self.n != other.n:
            raise ValueError("ambient dimension mismatch: %d vs %d" % (self.n, other.n))

    def __add__(self, other):
        self._check(other)
        return Subspace.span(self.field, self.n, list(self.basis) + list(other.basis))

    def annihilator(self):
        """{w : <w, u> = 0 for all u in self} (a subspace of the same K^n)."""
        return Subspace.span(self.field, self.n, nullspace(self.field, list(self.basis), self.n))

    def intersect(self, other):
        self._check(other)
        if not self.dim or not other.dim:
            return Subspace.zero(self.field, self.n)
        if self.dim == self.n:
            return other
        if other.dim == self.n:
            return self
        # U cap W = ann(ann U + ann W)
        rows = list(self.annihilator().basis) + list(other.annihilator().basis)
        return Subspace.span(self.field, self.n, nullspace(self.field, rows, self.n))

    def contains(self, v):
        return Subspace.span(self.field, self.n, list(self.basis) + [list(v)]).dim == self.dim

    def contains_space(self, other):
        return (self + other).dim == self.dim

    def image(self, M):
        """M(self) = {M u}."""
        return Subspace.span(self.field, len(M),
                             [mat_vec(self.field, M, u) for u in self.basis])

    def vectors(self):
        return [list(r) for r in self.basis]

    def __repr__(self):
        return "Subspace(dim=%d, n=%d)" % (self.dim, self.n)


def subspace_combine(kind, U, W):
    if kind == "sum":
        return U + W
    if kind == "intersect":
        return U.intersect(W)
    raise ValueError("unknown combination %r" % (kind,))


def preimage(M, W):
    """{v : M v in W}."""
    field, n = W.field, len(M[0]) if M else W.n
    if len(M) != W.n:
        raise ValueError("dimension mismatch between matrix and subspace")
    ann = list(W.annihilator().basis)
    if not ann:
        return Subspace.full(field, n)
    rows = mat_mul(field, ann, M)
    return Subspace.span(field, n, nullspace(field, rows, n))


def complement(inner, outer):
    """S with inner (+) S = outer, spanned by the RREF rows of outer whose
    pivots are not pivots of inner."""
    inner._check(outer)
    if not outer.contains_space(inner):
        raise ValueError("inner subspace is not contained in outer")
    ipiv = set(inner.pivots)
    added = [list(r) for r, c in zip(outer.basis, outer.pivots) if c not in ipiv]
    return Subspace.span(outer.field, outer.n, added)


def solve_in_span(field, targets, generators):
    """X with generators . X = targets (columns), free variables set to 0.

    ``targets`` and ``generators`` are given as lists of column vectors.
    Returns X as a list of rows (len(generators) x len(targets)) or None.
    """
    g = len(generators)
    t = len(targets)
    if t == 0:
        return [[] for _ in range(g)]
    nrows = len(targets[0])
    aug = [[gen[i] for gen in generators] + [tg[i] for tg in targets] for i in range(nrows)]
    R, piv = rref(aug, g + t)
    if any(c >= g for c in piv):
        return None
    X = zeros(field, g, t)
    for row, c in zip(R, piv):
        for j in range(t):
            X[c][j] = row[g + j]
    return X


def left_kernel_rational(M, base_field):
    """Nonzero v (polynomial entries, normalized) with v M = 0, or None.

    Entries of M are RationalFunctions over ``base_field``.
    """
    from .series import RationalFunction, RationalFunctionField
    from .poly import Poly, poly_gcd
    Kz = RationalFunctionField(base_field)
    if not M:
        return None
    nrows = len(M)
    ncols = len(M[0])
    MT = [[Kz(M[i][j]) for i in range(nrows)] for j in range(ncols)]
    ker = nullspace(Kz, MT, nrows)
    if not ker:
        return None
    v = ker[0]
    # clear denominators and remove the polynomial content
    den = Poly.const(base_field, 1)
    for x in v:
        if x:
            g = poly_gcd(den, x.den)
            den = den * x.den.exact_div(g)
    polys = [(x.num * den.exact_div(x.den)) if x else Poly.raw(base_field, ()) for x in v]
    content = Poly.raw(base_field, ())
    for p in polys:
        if p:
            content = poly_gcd(content, p) if content else p.monic()
    polys = [p.exact_div(content) if p else p for p in polys]
    lead = next(p for p in polys if p)
    inv = base_field.one / lead.lc
    return [RationalFunction(p * inv, _canonical=True) if p else Kz.zero for p in polys]


def charpoly(field, M):
    """det(x I - M) as a Poly, by cofactor expansion over column subsets."""
    from .poly import Poly
    n = len(M)
    x = Poly.x(field)
    entry = [[(x if i == j else Poly.raw(field, ())) - Poly.const(field, M[i][j])
              for j in range(n)] for i in range(n)]
    memo = {(): Poly.const(field, 1)}

    def minor(cols):
        # determinant of the last len(cols) rows restricted to cols
        if cols in memo:
            return memo[cols]
        r = n - len(cols)
        acc = Poly.raw(field, ())
        for k, c in enumerate(cols):
            if entry[r][c]:
                term = entry[r][c] * minor(cols[:k] + cols[k + 1:])
                acc = acc + term if k % 2 == 0 else acc - term
        memo[cols] = acc
        return acc

    return minor(tuple(range(n)))
