"""Rational functions, Laurent polynomials and truncated Puiseux series in z."""

from fractions import Fraction
from math import gcd

from .poly import Poly, poly_gcd


def _lcm(a, b):
    return a * b // gcd(a, b)


# ---------------------------------------------------------------------------
# rational functions

class RationalFunction:
    """num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("field", "num", "den")

    def __init__(self, num, den=None, _canonical=False):
        field = num.field
        if den is None:
            den = Poly.const(field, 1)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _canonical:
            if not num:
                den = Poly.const(field, 1)
            elif den.deg > 0:
                g = poly_gcd(num, den)
                if g.deg > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            lc = den.lc
            if lc != field.one:
                inv = field.one / lc
                num = num * inv
                den = den * inv
        self.field = field
        self.num = num
        self.den = den

    @classmethod
    def const(cls, field, c):
        return cls(Poly.const(field, c), _canonical=True)

    @classmethod
    def z(cls, field, k=1):
        if k >= 0:
            return cls(Poly.monomial(field, k), _canonical=True)
        return cls(Poly.const(field, 1), Poly.monomial(field, -k), _canonical=True)

    @classmethod
    def from_laurent(cls, lp):
        field = lp.field
        if not lp.terms:
            return cls.const(field, 0)
        v = min(lp.terms)
        shift = -v if v < 0 else 0
        cs = [field.zero] * (max(lp.terms) + shift + 1)
        for e, c in lp.terms.items():
            cs[e + shift] = c
        return cls(Poly.raw(field, cs), Poly.monomial(field, shift))

    def _co(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction(other, _canonical=True)
        if isinstance(other, LaurentPoly):
            return RationalFunction.from_laurent(other)
        return RationalFunction.const(self.field, other)

    def __add__(self, other):
        o = self._co(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        o = self._co(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._co(other)
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._co(other) / self

    def __pow__(self, e):
        if e < 0:
            return RationalFunction(self.den ** (-e), self.num ** (-e))
        return RationalFunction(self.num ** e, self.den ** e, _canonical=True)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        try:
            o = self._co(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def valuation(self):
        if not self.num:
            return None
        return self.num.valuation() - self.den.valuation()

    def subs_power(self, e):
        """r(z) -> r(z^e)."""
        return RationalFunction(self.num.subs_power(e), self.den.subs_power(e), _canonical=True)

    def is_polynomial(self):
        return self.den.deg == 0

    def is_laurent(self):
        return self.den.deg == 0 or (self.den.valuation() == self.den.deg)

    def to_laurent(self):
        if not self.is_laurent():
            raise ValueError("%s is not a Laurent polynomial" % self)
        shift = self.den.deg
        return LaurentPoly(self.field, {k - shift: c for k, c in enumerate(self.num.coeffs) if c})

    def constant_value(self):
        if self.den.deg == 0 and self.num.deg <= 0:
            return self.num[0]
        raise ValueError("%s is not constant" % self)

    def expand(self, order):
        return expand_rational(self, order)

    def format(self, var="z"):
        n = self.num.format(var)
        if self.den.deg == 0:
            return n
        d = self.den.format(var)
        if len([c for c in self.num.coeffs if c]) > 1 or n.startswith("-") or "/" in n:
            n = "(" + n + ")"
        if len([c for c in self.den.coeffs if c]) > 1:
            d = "(" + d + ")"
        return "%s/%s" % (n, d)

    def __repr__(self):
        return self.format()


class RationalFunctionField:
    """K(z) viewed as a field, so that linalg can run over it."""

    def __init__(self, base):
        self.base = base

    @property
    def zero(self):
        return RationalFunction.const(self.base, 0)

    @property
    def one(self):
        return RationalFunction.const(self.base, 1)

    @property
    def char(self):
        return self.base.char

    def __call__(self, x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Poly):
            return RationalFunction(x, _canonical=True)
        if isinstance(x, LaurentPoly):
            return RationalFunction.from_laurent(x)
        return RationalFunction.const(self.base, x)

    def format(self, x):
        return x.format()

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and other.base == self.base

    def __hash__(self):
        return hash(("K(z)", self.base))


# ---------------------------------------------------------------------------
# Laurent polynomials

class LaurentPoly:
    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, field, c):
        return cls(field, {0: field(c)})

    @classmethod
    def monomial(cls, field, e, c=1):
        return cls(field, {e: field(c)})

    def _co(self, other):
        if isinstance(other, LaurentPoly):
            return other
        return LaurentPoly(self.field, {0: self.field(other)})

    def __add__(self, other):
        o = self._co(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out[e] + c if e in out else c
        return LaurentPoly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.field, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = self.field(other)
            return LaurentPoly(self.field, {e: x * c for e, x in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return LaurentPoly(self.field, out)

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

    def coeff(self, e):
        return self.terms.get(e, self.field.zero)

    def valuation(self):
        return min(self.terms) if self.terms else None

    def degree(self):
        return max(self.terms) if self.terms else None

    def support(self):
        return sorted(self.terms)

    def constant_term(self):
        return self.coeff(0)

    def subs_power(self, e):
        return LaurentPoly(self.field, {k * e: c for k, c in self.terms.items()})

    def to_series(self):
        return Series(self.field, dict(self.terms), None, 1)

    def over(self, field):
        """Same polynomial with coefficients coerced into ``field``."""
        return LaurentPoly(field, {e: field(c) for e, c in self.terms.items()})

    def to_rational(self):
        return RationalFunction.from_laurent(self)

    def format(self, var="z"):
        return Series(self.field, dict(self.terms), None, 1).format(var)

    def __repr__(self):
        return self.format()


# ---------------------------------------------------------------------------
# truncated Puiseux series

def _fmt_exp(e):
    e = Fraction(e)
    if e.denominator == 1:
        return str(e.numerator)
    return "(%d/%d)" % (e.numerator, e.denominator)


class Series:
    """Sum of c_n z^(n/d) for the stored n, known exactly for n <= order.

    ``order`` is measured in units of 1/d; ``order=None`` means the
    expansion is exact (finitely many nonzero terms, nothing unknown).
    ``source`` optionally maps an order to a longer truncation of the same
    series.
    """

    __slots__ = ("field", "coeffs", "order", "d", "source")

    def __init__(self, field, coeffs, order, d=1, source=None):
        self.field = field
        self.d = d
        self.order = order
        if order is None:
            self.coeffs = {n: c for n, c in coeffs.items() if c}
        else:
            self.coeffs = {n: c for n, c in coeffs.items() if c and n <= order}
        self.source = source

    @classmethod
    def zero(cls, field, order=None, d=1):
        return cls(field, {}, order, d)

    @classmethod
    def const(cls, field, c, order=None):
        return cls(field, {0: field(c)}, order, 1)

    # -- bookkeeping -------------------------------------------------------

    def with_d(self, d):
        """Same series with ramification d (a multiple of self.d)."""
        if d == self.d:
            return self
        if d % self.d:
            raise ValueError("ramification %d is not a multiple of %d" % (d, self.d))
        k = d // self.d
        return Series(self.field, {n * k: c for n, c in self.coeffs.items()},
                      None if self.order is None else self.order * k, d)

    def _align(self, other):
        if self.d == other.d:
            return self, other
        d = _lcm(self.d, other.d)
        return self.with_d(d), other.with_d(d)

    def simplify_d(self):
        """Smallest ramification representing the same data."""
        g = self.d
        for n in self.coeffs:
            g = gcd(g, n)
        if self.order is not None:
            g = gcd(g, self.order)
        if g <= 1:
            return self
        return Series(self.field, {n // g: c for n, c in self.coeffs.items()},
                      None if self.order is None else self.order // g, self.d // g)

    @property
    def order_exponent(self):
        return None if self.order is None else Fraction(self.order, self.d)

    def valuation(self):
        """Exponent of the lowest known nonzero term (None if none known)."""
        if not self.coeffs:
            return None
        return Fraction(min(self.coeffs), self.d)

    def _low(self):
        # lowest index that may be nonzero, in units of 1/d
        if self.coeffs:
            return min(self.coeffs)
        return None if self.order is None else self.order + 1

    def coefficient(self, e):
        e = Fraction(e)
        n = e * self.d
        if n.denominator != 1:
            return self.field.zero
        n = n.numerator
        if self.order is not None and n > self.order:
            raise ValueError("coefficient of z^%s is beyond the guaranteed order" % e)
        return self.coeffs.get(n, self.field.zero)

    def items(self):
        """(exponent, coefficient) pairs in increasing order."""
        return [(Fraction(n, self.d), self.coeffs[n]) for n in sorted(self.coeffs)]

    def is_exact(self):
        return self.order is None

    def over(self, field):
        return Series(field, {n: field(c) for n, c in self.coeffs.items()}, self.order, self.d)

    def extend(self, order_exp):
        """Longer truncation from the lazy source, if any."""
        if self.source is None:
            raise ValueError("series has no lazy source")
        return self.source(order_exp)

    # -- arithmetic ----------------------------------------------------------

    def _co(self, other):
        if isinstance(other, Series):
            return other
        if isinstance(other, LaurentPoly):
            return other.to_series()
        return Series(self.field, {0: self.field(other)}, None, 1)

    def __add__(self, other):
        a, b = self._align(self._co(other))
        if a.order is None:
            order = b.order
        elif b.order is None:
            order = a.order
        else:
            order = min(a.order, b.order)
        out = dict(a.coeffs)
        for n, c in b.coeffs.items():
            out[n] = out[n] + c if n in out else c
        return Series(a.field, out, order, a.d)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.field, {n: -c for n, c in self.coeffs.items()}, self.order, self.d)

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def scale(self, c):
        return Series(self.field, {n: x * c for n, x in self.coeffs.items()}, self.order, self.d)

    def __mul__(self, other):
        if not isinstance(other, (Series, LaurentPoly)):
            return self.scale(other)
        a, b = self._align(self._co(other))
        la, lb = a._low(), b._low()
        if a.order is None and b.order is None:
            order = None
        elif a.order is None:
            order = None if la is None else la + b.order
        elif b.order is None:
            order = None if lb is None else a.order + lb
        else:
            order = min(la + b.order, a.order + lb)
        out = {}
        for n1, c1 in a.coeffs.items():
            for n2, c2 in b.coeffs.items():
                n = n1 + n2
                if order is not None and n > order:
                    continue
                out[n] = out[n] + c1 * c2 if n in out else c1 * c2
        if order is None and (la is None or lb is None):
            return Series(a.field, {}, None, a.d)
        return Series(a.field, out, order, a.d)

    __rmul__ = __mul__

    def shift(self, gamma):
        """Multiply by z^gamma (gamma rational)."""
        gamma = Fraction(gamma)
        s = self
        if (gamma * s.d).denominator != 1:
            s = s.with_d(_lcm(s.d, gamma.denominator))
        k = int(gamma * s.d)
        return Series(s.field, {n + k: c for n, c in s.coeffs.items()},
                      None if s.order is None else s.order + k, s.d)

    def substitute_power(self, e):
        """f(z) -> f(z^e)."""
        return Series(self.field, {n * e: c for n, c in self.coeffs.items()},
                      None if self.order is None else self.order * e, self.d)

    def ramify(self, d):
        """f(z) -> f(z^(1/d))."""
        return Series(self.field, dict(self.coeffs), self.order, self.d * d)

    def truncate(self, order_exp):
        order_exp = Fraction(order_exp)
        n = order_exp * self.d
        s = self
        if n.denominator != 1:
            # keep the exponent grid; the guaranteed order rounds down
            n = n.numerator // n.denominator
        else:
            n = n.numerator
        if s.order is not None:
            n = min(n, s.order)
        return Series(s.field, dict(s.coeffs), n, s.d)

    def is_zero_to_order(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Series):
            try:
                other = self._co(other)
            except (TypeError, ValueError):
                return NotImplemented
        a, b = self._align(other)
        return a.order == b.order and a.coeffs == b.coeffs

    def __hash__(self):
        s = self.simplify_d()
        return hash((s.d, s.order, frozenset(s.coeffs.items())))

    def format(self, var="z"):
        fmt = self.field.format
        parts = []
        for n in sorted(self.coeffs):
            c = self.coeffs[n]
            e = Fraction(n, self.d)
            mono = "" if e == 0 else (var if e == 1 else "%s^%s" % (var, _fmt_exp(e)))
            s = fmt(c)
            if mono:
                if s == "1":
                    s = mono
                elif s == "-1":
                    s = "-" + mono
                else:
                    body = s[1:] if s.startswith("-") else s
                    if "+" in body or "-" in body:
                        s = "(" + s + ")"
                    s = "%s*%s" % (s, mono)
            parts.append(s)
        out = ""
        for k, s in enumerate(parts):
            if k == 0:
                out = s
            elif s.startswith("-"):
                out += " - " + s[1:]
            else:
                out += " + " + s
        if self.order is not None:
            tail = "O(%s^%s)" % (var, _fmt_exp(Fraction(self.order + 1, self.d)))
            out = tail if not out else out + " + " + tail
        return out or "0"

    def __repr__(self):
        return self.format()

    # -- serialization -------------------------------------------------------

    def to_json(self):
        field = self.field
        return {"d": self.d,
                "val": None if not self.coeffs else min(self.coeffs),
                "order": self.order,
                "coeffs": {str(n): field.elem_to_json(self.coeffs[n]) for n in sorted(self.coeffs)}}

    @classmethod
    def from_json(cls, field, obj):
        coeffs = {int(k): field.elem_from_json(v) for k, v in obj.get("coeffs", {}).items()}
        order = obj.get("order")
        return cls(field, coeffs, None if order is None else int(order), int(obj.get("d", 1)))


def expand_rational(r, order):
    """Laurent expansion of r up to z^order (inclusive), as a Series with d=1."""
    field = r.field
    if not r.num:
        return Series(field, {}, order, 1, source=lambda n: expand_rational(r, n))
    vn, vd = r.num.valuation(), r.den.valuation()
    num = r.num.shift(-vn)
    den = r.den.shift(-vd)
    shift = vn - vd
    count = order - shift + 1
    out = {}
    if count > 0:
        inv0 = field.one / den.coeffs[0]
        dcs = den.coeffs
        c = []
        for k in range(count):
            acc = num[k]
            for j in range(1, min(k, len(dcs) - 1) + 1):
                if dcs[j]:
                    acc = acc - dcs[j] * c[k - j]
            c.append(acc * inv0)
        out = {k + shift: x for k, x in enumerate(c) if x}
    return Series(field, out, order, 1, source=lambda n: expand_rational(r, n))


def as_series(x, field, order):
    """Coerce a RationalFunction / LaurentPoly / Series / constant to a Series."""
    if isinstance(x, Series):
        return x
    if isinstance(x, LaurentPoly):
        return x.to_series()
    if isinstance(x, RationalFunction):
        if x.is_laurent():
            return x.to_laurent().to_series()
        return expand_rational(x, order)
    return Series.const(field, x)
