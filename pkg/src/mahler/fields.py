"""Exact base fields: the rationals, simple algebraic extensions and F_p(theta).

Rationals are plain ``fractions.Fraction`` values.  Extension elements and
function-field elements are small immutable classes that coerce integers and
elements of subfields automatically, so generic code can write ``x + 1``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import InputError, ReducibleError, UnsupportedExtension
from .poly import Poly


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError("cannot coerce %r to a rational" % (x,))


def _wrap(s):
    body = s[1:] if s.startswith("-") else s
    if "+" in body or "-" in body:
        return "(" + s + ")"
    return s


class Field:
    """Common interface of the field descriptors."""

    def contains_field(self, other):
        return other == self

    def format(self, x):
        return str(x)

    def poly(self, coeffs):
        return Poly(self, coeffs)


# ---------------------------------------------------------------------------
# rationals

@dataclass(frozen=True)
class Rationals(Field):
    char = 0

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def __call__(self, x):
        if isinstance(x, ExtElement):
            if any(x.coords[1:]):
                raise TypeError("element %s is not rational" % x)
            return self(x.coords[0])
        return _as_fraction(x)

    def is_element(self, x):
        return isinstance(x, (int, Fraction))

    def format(self, x):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)

    def sqrt(self, x):
        x = Fraction(x)
        if x < 0:
            return None
        n, d = isqrt(x.numerator), isqrt(x.denominator)
        if n * n == x.numerator and d * d == x.denominator:
            return Fraction(n, d)
        return None

    def factor(self, poly):
        """Irreducible monic factors with multiplicity (sympy over QQ)."""
        import sympy
        t = sympy.Symbol("t")
        sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(poly.coeffs)],
                        t, domain=sympy.QQ)
        _, facs = sp.factor_list()
        out = []
        for f, e in facs:
            cs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
            out.append((Poly.raw(self, cs).monic(), e))
        out.sort(key=lambda fe: (fe[0].deg, [str(c) for c in fe[0].coeffs]))
        return out

    def symbols(self):
        return {}

    def to_json(self):
        return {"kind": "rationals"}

    def elem_to_json(self, x):
        return self.format(x)

    def elem_from_json(self, obj):
        if isinstance(obj, bool):
            raise InputError("bad rational %r" % (obj,))
        if isinstance(obj, int):
            return Fraction(obj)
        if isinstance(obj, str):
            try:
                return Fraction(obj.strip())
            except ValueError:
                raise InputError("bad rational %r" % (obj,)) from None
        raise InputError("bad rational %r" % (obj,))

    def __repr__(self):
        return "QQ"


QQ = Rationals()


# ---------------------------------------------------------------------------
# simple algebraic extensions

@dataclass(frozen=True)
class Extension(Field):
    base: Field
    minpoly: tuple          # base elements, low to high, monic
    name: str = "g"

    @property
    def degree(self):
        return len(self.minpoly) - 1

    @property
    def char(self):
        return self.base.char

    @property
    def zero(self):
        return ExtElement(self, (self.base.zero,) * self.degree)

    @property
    def one(self):
        return ExtElement(self, (self.base.one,) + (self.base.zero,) * (self.degree - 1))

    @property
    def gen(self):
        cs = [self.base.zero] * self.degree
        cs[1 if self.degree > 1 else 0] = self.base.one
        return ExtElement(self, tuple(cs))

    def contains_field(self, other):
        return other == self or self.base.contains_field(other)

    def __call__(self, x):
        if isinstance(x, ExtElement):
            if x.field is self or x.field == self:
                return x
            if self.base.contains_field(x.field):
                return self._embed(self.base(x))
            raise TypeError("cannot coerce %s into %r" % (x, self))
        return self._embed(self.base(x))

    def _embed(self, b):
        return ExtElement(self, (b,) + (self.base.zero,) * (self.degree - 1))

    def is_element(self, x):
        return isinstance(x, ExtElement) and x.field == self

    def _reduce(self, cs):
        n = self.degree
        cs = list(cs)
        mp = self.minpoly
        for k in range(len(cs) - 1, n - 1, -1):
            c = cs[k]
            if c:
                for j in range(n):
                    cs[k - n + j] = cs[k - n + j] - c * mp[j]
        cs = cs[:n]
        cs += [self.base.zero] * (n - len(cs))
        return tuple(cs)

    def _mul(self, a, b):
        out = [self.base.zero] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return self._reduce(out)

    def _inv(self, a):
        from .poly import poly_xgcd
        f = Poly.raw(self.base, a)
        if not f:
            raise ZeroDivisionError("division by zero in %r" % self)
        m = Poly.raw(self.base, self.minpoly)
        g, s, _ = poly_xgcd(f, m)
        if g.deg != 0:
            raise ZeroDivisionError("non-invertible element (minimal polynomial reducible?)")
        cs = list(s.coeffs) + [self.base.zero] * self.degree
        return tuple(cs[: self.degree])

    def in_base(self, x):
        return not any(x.coords[1:])

    def format(self, x):
        terms = []
        for k, c in enumerate(x.coords):
            if not c:
                continue
            s = self.base.format(c)
            if k == 0:
                terms.append(s)
                continue
            mono = self.name if k == 1 else "%s^%d" % (self.name, k)
            if s == "1":
                terms.append(mono)
            elif s == "-1":
                terms.append("-" + mono)
            else:
                terms.append("%s*%s" % (_wrap(s), mono))
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += "-" + t[1:] if t.startswith("-") else "+" + t
        return out

    def sqrt(self, x):
        x = self(x)
        if self.in_base(x):
            r = self.base.sqrt(x.coords[0])
            if r is not None:
                return self(r)
        if self.degree != 2 or self.char == 2:
            return None
        # h = 2g + c1 satisfies h^2 = delta in the base field
        c0, c1 = self.minpoly[0], self.minpoly[1]
        delta = c1 * c1 - 4 * c0
        h = self.gen * 2 + c1
        u, v = x.coords
        s = u - v * c1 / 2
        t = v / 2
        if not t:
            r = self.base.sqrt(s / delta)
            return None if r is None else h * r
        w = self.base.sqrt(s * s - delta * t * t)
        if w is None:
            return None
        for sign in (1, -1):
            a2 = (s + sign * w) / 2
            a = self.base.sqrt(a2)
            if a:
                b = t / (2 * a)
                return self(a) + h * b
        return None

    def factor(self, poly):
        if all(self.in_base(c) for c in poly.coeffs):
            bp = Poly.raw(self.base, [c.coords[0] for c in poly.coeffs])
            out = []
            for f, e in self.base.factor(bp):
                out.append((Poly.raw(self, [self(c) for c in f.coeffs]), e))
            return out
        if poly.deg <= 2:
            return [(poly.monic(), 1)]
        raise UnsupportedExtension("unsupported factor degree: cannot factor degree %d over %r"
                                   % (poly.deg, self))

    def symbols(self):
        out = dict(self.base.symbols())
        out[self.name] = self.gen
        return out

    def to_json(self):
        out = {"kind": "extension", "minpoly": [self.base.elem_to_json(c) for c in self.minpoly],
               "gen": self.name}
        if self.base != QQ:
            out["base"] = self.base.to_json()
        return out

    def elem_to_json(self, x):
        x = self(x)
        return [self.base.elem_to_json(c) for c in x.coords]

    def elem_from_json(self, obj):
        if isinstance(obj, list):
            if len(obj) != self.degree:
                raise InputError("extension element needs %d coordinates" % self.degree)
            return ExtElement(self, tuple(self.base.elem_from_json(c) for c in obj))
        return self(self.base.elem_from_json(obj))

    def __repr__(self):
        return "%r[%s]/(%s)" % (self.base, self.name,
                                Poly.raw(self.base, self.minpoly).format(self.name))


class ExtElement:
    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = tuple(coords)

    def _co(self, other):
        if isinstance(other, ExtElement):
            if other.field is self.field:
                return other
            if other.field == self.field:
                return other
            if self.field.contains_field(other.field):
                return self.field(other)
            if other.field.contains_field(self.field):
                return NotImplemented
            raise TypeError("mixing elements of unrelated fields")
        if isinstance(other, (int, Fraction, FpRat)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return ExtElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return ExtElement(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        if not any(o.coords[1:]):
            c = o.coords[0]
            return ExtElement(self.field, tuple(a * c for a in self.coords))
        return ExtElement(self.field, self.field._mul(self.coords, o.coords))

    __rmul__ = __mul__

    def inverse(self):
        return ExtElement(self.field, self.field._inv(self.coords))

    def __truediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        if not any(o.coords[1:]):
            c = o.coords[0]
            if not c:
                raise ZeroDivisionError("division by zero")
            return ExtElement(self.field, tuple(a / c for a in self.coords))
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        try:
            o = self._co(other)
        except TypeError:
            return False
        if o is NotImplemented:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        if not any(self.coords[1:]):
            return hash(self.coords[0])
        return hash(self.coords)

    def __repr__(self):
        return self.field.format(self)

    __str__ = __repr__


# ---------------------------------------------------------------------------
# F_p(theta)

def _fp_trim(a):
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return tuple(a[:n])


def _fp_add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _fp_trim(out)


def _fp_neg(a, p):
    return tuple((-c) % p for c in a)


def _fp_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _fp_trim([c % p for c in out])


def _fp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    rem = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(rem) - db, 0)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db] * inv % p
        q[k] = c
        if c:
            for j, y in enumerate(b):
                rem[k + j] = (rem[k + j] - c * y) % p
    return _fp_trim(q), _fp_trim(rem[:db])


def _fp_monic(a, p):
    if not a:
        return a, 1
    inv = pow(a[-1], -1, p)
    return tuple(c * inv % p for c in a), a[-1]


def _fp_gcd(a, b, p):
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    return _fp_monic(a, p)[0]


def _fp_sqrt_poly(a, p):
    # square root of a polynomial over F_p (p odd), or None
    if not a:
        return ()
    if (len(a) - 1) % 2:
        return None
    lead = a[-1]
    s = None
    for r in range(1, p):
        if r * r % p == lead:
            s = r
            break
    if s is None:
        return None
    k = (len(a) - 1) // 2
    g = [0] * (k + 1)
    g[k] = s
    inv2s = pow(2 * s, -1, p)
    for i in range(k - 1, -1, -1):
        acc = a[k + i]
        for j in range(i + 1, k):
            l = k + i - j
            if i < l <= k:
                acc -= g[j] * g[l]
        g[i] = acc * inv2s % p
    g = _fp_trim(g)
    return g if _fp_mul(g, g, p) == _fp_trim(list(a)) else None


def _fp_format(a, var):
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else "%s^%d" % (var, k))
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append("%d*%s" % (c, mono))
    return "+".join(parts) if parts else "0"


def _fp_factor(a, p):
    """Monic irreducible factors of a nonzero polynomial over F_p (sympy)."""
    import sympy
    t = sympy.Symbol("t")
    if len(a) <= 1:
        return []
    sp = sympy.Poly(list(reversed(a)), t, modulus=p)
    _, facs = sp.factor_list()
    out = []
    for f, e in facs:
        cs = _fp_trim([int(c) % p for c in reversed(f.all_coeffs())])
        out.append((_fp_monic(cs, p)[0], e))
    return out


def _fp_divisors(a, p):
    facs = _fp_factor(a, p)
    divs = [(1,)]
    for f, e in facs:
        new = []
        for d in divs:
            cur = d
            for _ in range(e + 1):
                new.append(cur)
                cur = _fp_mul(cur, f, p)
        divs = new
    divs = sorted(set(divs), key=lambda d: (len(d), d))
    return divs


@dataclass(frozen=True)
class FpFunctionField(Field):
    p: int
    var: str = "theta"

    def __post_init__(self):
        p = self.p
        if p < 2 or any(p % q == 0 for q in range(2, isqrt(p) + 1)):
            raise InputError("characteristic %d is not prime" % p)

    @property
    def char(self):
        return self.p

    @property
    def zero(self):
        return FpRat(self, (), (1,))

    @property
    def one(self):
        return FpRat(self, (1,), (1,))

    @property
    def gen(self):
        return FpRat(self, (0, 1), (1,))

    def make(self, num, den=(1,)):
        p = self.p
        num = _fp_trim([c % p for c in num])
        den = _fp_trim([c % p for c in den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return FpRat(self, (), (1,))
        g = _fp_gcd(num, den, p)
        if len(g) > 1:
            num = _fp_divmod(num, g, p)[0]
            den = _fp_divmod(den, g, p)[0]
        den, lead = _fp_monic(den, p)
        if lead != 1:
            inv = pow(lead, -1, p)
            num = tuple(c * inv % p for c in num)
        return FpRat(self, num, den)

    def __call__(self, x):
        if isinstance(x, FpRat):
            if x.field == self:
                return x
            raise TypeError("element of another function field")
        if isinstance(x, ExtElement):
            if any(x.coords[1:]):
                raise TypeError("cannot coerce %s" % x)
            return self(x.coords[0])
        if isinstance(x, int):
            return FpRat(self, _fp_trim([x % self.p]), (1,))
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError("denominator divisible by the characteristic")
            return FpRat(self, _fp_trim([x.numerator * pow(x.denominator, -1, self.p) % self.p]), (1,))
        if isinstance(x, str):
            return self.elem_from_json(x)
        raise TypeError("cannot coerce %r into %r" % (x, self))

    def is_element(self, x):
        return isinstance(x, FpRat) and x.field == self

    def format(self, x):
        num = _fp_format(x.num, self.var)
        if x.den == (1,):
            return num
        return "%s/%s" % (_paren_poly(num), _paren_poly(_fp_format(x.den, self.var)))

    def sqrt(self, x):
        x = self(x)
        if self.p == 2:
            return None
        nd = _fp_mul(x.num, x.den, self.p)
        r = _fp_sqrt_poly(nd, self.p)
        if r is None:
            return None
        return self.make(r, x.den)

    def factor(self, poly):
        """Linear factors from rational roots; a leftover of degree <= 2 is kept whole."""
        field = self
        out = []
        f = poly.monic()
        zero_mult = 0
        while f and not f.coeffs[0]:
            f = Poly.raw(field, f.coeffs[1:])
            zero_mult += 1
        if zero_mult:
            out.append((Poly.x(field), zero_mult))
        for r in self._rational_roots(f):
            lin = Poly.raw(field, (-r, field.one))
            mult = 0
            while f.deg >= 1:
                q, rem = f.divmod(lin)
                if rem:
                    break
                f = q
                mult += 1
            if mult:
                out.append((lin, mult))
        if f.deg >= 3:
            raise UnsupportedExtension("unsupported factor degree: degree %d factor over %r"
                                       % (f.deg, self))
        if f.deg >= 1:
            out.append((f.monic(), 1))
        return out

    def _rational_roots(self, f):
        if f.deg < 1:
            return []
        p = self.p
        # clear denominators so that every coefficient lies in F_p[theta]
        den = (1,)
        for c in f.coeffs:
            den = _fp_mul(den, _fp_divmod(c.den, _fp_gcd(den, c.den, p), p)[0], p)
        cs = [_fp_divmod(_fp_mul(c.num, den, p), c.den, p)[0] for c in f.coeffs]
        c0, cn = cs[0], cs[-1]
        roots = []
        for a in _fp_divisors(c0, p):
            for b in _fp_divisors(cn, p):
                for u in range(1, p):
                    r = self.make(tuple(u * c % p for c in a), b)
                    if not f(r) and r not in roots:
                        roots.append(r)
        return roots

    def symbols(self):
        return {self.var: self.gen}

    def to_json(self):
        return {"kind": "fp_function", "char": self.p, "var": self.var}

    def elem_to_json(self, x):
        x = self(x)
        return {"num": _fp_format(x.num, self.var), "den": _fp_format(x.den, self.var)}

    def elem_from_json(self, obj):
        from .parse import parse_expression
        if isinstance(obj, dict):
            num = self.elem_from_json(obj.get("num", "0"))
            den = self.elem_from_json(obj.get("den", "1"))
            return num / den
        if isinstance(obj, int) and not isinstance(obj, bool):
            return self(obj)
        if isinstance(obj, str):
            val = parse_expression(obj, self, allow_z=False)
            return self(val)
        raise InputError("bad function-field element %r" % (obj,))

    def __repr__(self):
        return "GF(%d)(%s)" % (self.p, self.var)


def _paren_poly(s):
    return "(" + s + ")" if "+" in s else s


class FpRat:
    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den):
        self.field = field
        self.num = num
        self.den = den

    def _co(self, other):
        if isinstance(other, FpRat):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        if self.den == o.den:
            return self.field.make(_fp_add(self.num, o.num, p), self.den)
        num = _fp_add(_fp_mul(self.num, o.den, p), _fp_mul(o.num, self.den, p), p)
        return self.field.make(num, _fp_mul(self.den, o.den, p))

    __radd__ = __add__

    def __neg__(self):
        return FpRat(self.field, _fp_neg(self.num, self.field.p), self.den)

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return self.field.make(_fp_mul(self.num, o.num, p), _fp_mul(self.den, o.den, p))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("division by zero")
        return self.field.make(self.den, self.num)

    def __truediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        try:
            o = self._co(other)
        except (TypeError, ZeroDivisionError):
            return False
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den == (1,) and len(self.num) <= 1:
            return hash(self.num[0] if self.num else 0)
        return hash((self.num, self.den))

    def __repr__(self):
        return self.field.format(self)

    __str__ = __repr__


# ---------------------------------------------------------------------------
# descriptors from JSON, extensions and roots

def field_from_json(obj):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError("field descriptor must be an object with a 'kind'")
    kind = obj["kind"]
    if kind == "rationals":
        return QQ
    if kind == "fp_function":
        try:
            return FpFunctionField(int(obj["char"]), str(obj.get("var", "theta")))
        except KeyError:
            raise InputError("fp_function field needs 'char'") from None
    if kind == "extension":
        base = field_from_json(obj["base"]) if "base" in obj else QQ
        try:
            cs = [base.elem_from_json(c) for c in obj["minpoly"]]
        except KeyError:
            raise InputError("extension field needs 'minpoly'") from None
        name = str(obj.get("gen", "g"))
        field, _ = adjoin_root(base, Poly.raw(base, cs), name=name,
                               assume_irreducible=bool(obj.get("assume_irreducible", False)))
        return field
    raise InputError("unknown field kind %r" % (kind,))


def _default_name(field, minpoly):
    if field == QQ and minpoly.coeffs == (Fraction(1), Fraction(0), Fraction(1)):
        return "i"
    depth = 1
    f = field
    while isinstance(f, Extension):
        depth += 1
        f = f.base
    return "g" if depth == 1 else "g%d" % depth


def adjoin_root(field, minpoly, name=None, assume_irreducible=False):
    """Adjoin a root of ``minpoly``; returns (field, root).

    Degree 2 irreducibility is verified; higher degrees must be asserted by
    the caller through ``assume_irreducible``.
    """
    if not isinstance(minpoly, Poly):
        minpoly = Poly(field, minpoly)
    if minpoly.deg < 1:
        raise ValueError("minimal polynomial must have degree >= 1")
    if minpoly.lc != field.one:
        raise ValueError("minimal polynomial must be monic")
    if minpoly.deg == 1:
        return field, -minpoly.coeffs[0]
    if minpoly.deg == 2:
        if field.char == 2:
            if not assume_irreducible:
                raise UnsupportedExtension("unverified irreducibility in characteristic 2")
        else:
            c0, c1 = minpoly.coeffs[0], minpoly.coeffs[1]
            if field.sqrt(c1 * c1 - 4 * c0) is not None:
                raise ReducibleError("minimal polynomial %s is reducible" % minpoly.format())
    elif not assume_irreducible:
        raise UnsupportedExtension("unverified irreducibility of a degree %d polynomial"
                                   % minpoly.deg)
    if name is None:
        name = _default_name(field, minpoly)
    ext = Extension(field, tuple(minpoly.coeffs), name)
    return ext, ext.gen


def find_roots(field, poly, factors=None):
    """All roots of ``poly`` with multiplicity, as (roots, field).

    Irreducible quadratic factors trigger a field extension.  ``factors``
    may supply a factorization [(factor, multiplicity), ...]; factors of
    degree >= 3 given this way are taken as irreducible and split by
    adjoining one root and recursing on the cofactor.
    """
    if not isinstance(poly, Poly):
        poly = Poly(field, poly)
    if not poly:
        raise ValueError("zero polynomial")
    supplied = factors is not None
    if factors is None:
        factors = field.factor(poly)
    cur = field
    roots = []
    for f, mult in factors:
        f = Poly(cur, f.coeffs).monic()
        if f.deg == 0:
            continue
        if f.deg == 1:
            roots.append((-f.coeffs[0], mult))
        elif f.deg == 2:
            c0, c1 = f.coeffs[0], f.coeffs[1]
            if cur.char == 2:
                raise UnsupportedExtension("unsupported factor degree: quadratic in characteristic 2")
            s = cur.sqrt(c1 * c1 - 4 * c0)
            if s is None:
                cur, g = adjoin_root(cur, f)
                roots.append((g, mult))
                roots.append((-g - c1, mult))
            elif not s:
                roots.append((-c1 / 2, 2 * mult))
            else:
                roots.append(((-c1 + s) / 2, mult))
                roots.append(((-c1 - s) / 2, mult))
        elif supplied:
            cur, g = adjoin_root(cur, f, assume_irreducible=True)
            roots.append((g, mult))
            rest = Poly(cur, f.coeffs).exact_div(Poly.raw(cur, (-g, cur.one)))
            sub, cur = find_roots(cur, rest)
            roots.extend((r, e * mult) for r, e in sub)
        else:
            raise UnsupportedExtension("unsupported factor degree: irreducible factor of degree %d"
                                       % f.deg)
    merged = []
    for r, e in roots:
        r = cur(r)
        for k, (s, e2) in enumerate(merged):
            if s == r:
                merged[k] = (s, e2 + e)
                break
        else:
            merged.append((r, e))
    return merged, cur


def field_of(x):
    """Best-effort descriptor for an element."""
    if isinstance(x, (ExtElement, FpRat)):
        return x.field
    return QQ


def common_field(*fields):
    best = fields[0]
    for f in fields[1:]:
        if best.contains_field(f):
            continue
        if f.contains_field(best):
            best = f
        else:
            raise TypeError("incompatible fields %r and %r" % (best, f))
    return best
