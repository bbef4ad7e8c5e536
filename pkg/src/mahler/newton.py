"""Mahler equations and systems, companion matrices, Newton polygon slopes."""

from fractions import Fraction
import math
from math import gcd

from .errors import InputError
from .linalg import det, zeros
from .series import RationalFunction, RationalFunctionField, as_series


class MahlerEquation:
    """a_0 y + a_1 y(z^p) + ... + a_m y(z^(p^m)) = 0."""

    def __init__(self, p, coeffs, field):
        if int(p) != p or p < 2:
            raise InputError("radix p must be an integer >= 2, got %r" % (p,))
        coeffs = [c if isinstance(c, RationalFunction) else RationalFunctionField(field)(c)
                  for c in coeffs]
        if len(coeffs) < 2:
            raise InputError("an equation needs at least two coefficients")
        if not coeffs[0]:
            raise InputError("a_0 = 0")
        if not coeffs[-1]:
            raise InputError("a_m = 0")
        self.p = int(p)
        self.coeffs = coeffs
        self.field = field

    @property
    def order(self):
        return len(self.coeffs) - 1

    def substitute(self, d):
        """The equation satisfied by y(z^d)."""
        if d == 1:
            return self
        return MahlerEquation(self.p, [c.subs_power(d) for c in self.coeffs], self.field)

    def apply(self, f, order=None):
        """sum_k a_k(z) f(z^(p^k)) for a truncated series f."""
        vals = [c.valuation() for c in self.coeffs]
        if order is None:
            top = f.order_exponent if f.order is not None else Fraction(64)
            order = top + max(vals) + 1
        total = None
        for k, a in enumerate(self.coeffs):
            fk = f.substitute_power(self.p ** k)
            low = fk._low()
            low = Fraction(low, fk.d) if low is not None else Fraction(0)
            need = max(int(math.ceil(order - low)), vals[k]) + 1
            term = as_series(a, self.field, need) * fk
            total = term if total is None else total + term
        return total

    def __repr__(self):
        parts = ["(%s)*y(%s)" % (c.format(), "z" if k == 0 else "z^%d" % self.p ** k)
                 for k, c in enumerate(self.coeffs)]
        return " + ".join(parts) + " = 0"


class MahlerSystem:
    """phi_p(Y) = A Y with A given by rational functions."""

    def __init__(self, p, A, field, companion=False, equation=None):
        Kz = RationalFunctionField(field)
        self.p = int(p)
        self.A = [[Kz(x) for x in row] for row in A]
        self.field = field
        self.companion = companion
        self.equation = equation
        if any(len(row) != len(self.A) for row in self.A):
            raise InputError("system matrix must be square")
        if not det(Kz, self.A):
            raise InputError("singular system matrix")

    @property
    def m(self):
        return len(self.A)


def build_companion(eq):
    field = eq.field
    Kz = RationalFunctionField(field)
    m = eq.order
    A = zeros(Kz, m, m)
    for i in range(m - 1):
        A[i][i + 1] = Kz.one
    am = eq.coeffs[-1]
    for i in range(m):
        A[m - 1][i] = -eq.coeffs[i] / am
    return MahlerSystem(eq.p, A, field, companion=True, equation=eq)


def newton_slopes(eq):
    """Distinct finite slopes of the lower hull of {(p^i, val a_i)}, ascending."""
    pts = [(eq.p ** i, c.valuation()) for i, c in enumerate(eq.coeffs) if c]
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point when it lies on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    slopes = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        s = Fraction(y2 - y1, x2 - x1)
        if s not in slopes:
            slopes.append(s)
    return sorted(slopes)


def ramification_index(slopes, p):
    d = 1
    for s in slopes:
        b = Fraction(s).denominator
        g = gcd(b, p)
        while g > 1:
            b //= g
            g = gcd(b, p)
        d = d * b // gcd(d, b)
    return d
