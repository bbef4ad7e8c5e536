"""Dense univariate polynomials over an arbitrary field.

Coefficients are stored low degree first with no trailing zeros.  The
field object only has to provide ``zero``, ``one`` and coercion via call.
"""


def _strip(cs):
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return tuple(cs[:n])


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        self.field = field
        self.coeffs = _strip([field(c) for c in coeffs])

    @classmethod
    def raw(cls, field, coeffs):
        # coefficients are assumed to already be elements of field
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = _strip(list(coeffs))
        return obj

    @classmethod
    def x(cls, field):
        return cls.raw(field, (field.zero, field.one))

    @classmethod
    def const(cls, field, c):
        return cls.raw(field, (field(c),))

    @classmethod
    def monomial(cls, field, k, c=1):
        return cls.raw(field, [field.zero] * k + [field(c)])

    @property
    def deg(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero

    def __iter__(self):
        return iter(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly.raw(self.field, (self.field(other),))

    def __add__(self, other):
        o = self._coerce(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly.raw(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly.raw(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.field(other)
            return Poly.raw(self.field, [x * c for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.raw(self.field, ())
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly.raw(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        result = Poly.const(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.deg
        inv = self.field.one / other.lc
        q = [self.field.zero] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv
            q[k] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * y
        return Poly.raw(self.field, q), Poly.raw(self.field, rem[:db])

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self):
        if not self.coeffs:
            return self
        inv = self.field.one / self.lc
        return Poly.raw(self.field, [c * inv for c in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == self._coerce(other).coeffs
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return Poly.raw(self.field, [self.coeffs[k] * k for k in range(1, len(self.coeffs))])

    def valuation(self):
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def shift(self, k):
        """Multiply by x^k (k may be negative when divisible)."""
        if k >= 0:
            return Poly.raw(self.field, [self.field.zero] * k + list(self.coeffs))
        assert all(not c for c in self.coeffs[:-k])
        return Poly.raw(self.field, self.coeffs[-k:])

    def subs_power(self, e):
        """p(x) -> p(x^e)."""
        if e == 1 or len(self.coeffs) <= 1:
            return self
        out = [self.field.zero] * ((len(self.coeffs) - 1) * e + 1)
        for k, c in enumerate(self.coeffs):
            out[k * e] = c
        return Poly.raw(self.field, out)

    def format(self, var="x"):
        fmt = self.field.format
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else "%s^%d" % (var, k))
            s = fmt(c)
            if mono:
                if s == "1":
                    s = mono
                elif s == "-1":
                    s = "-" + mono
                else:
                    s = "%s*%s" % (_paren(s), mono)
            parts.append(s)
        if not parts:
            return "0"
        out = parts[0]
        for s in parts[1:]:
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out

    def __repr__(self):
        return "Poly(%s)" % self.format()


def _paren(s):
    body = s[1:] if s.startswith("-") else s
    if "+" in body or "-" in body:
        return "(" + s + ")"
    return s


def poly_gcd(a, b):
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


def poly_xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    field = a.field
    r0, r1 = a, b
    s0, s1 = Poly.const(field, 1), Poly.raw(field, ())
    t0, t1 = Poly.raw(field, ()), Poly.const(field, 1)
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = field.one / r0.lc
    return r0 * inv, s0 * inv, t0 * inv
