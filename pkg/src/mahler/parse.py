"""Recursive-descent parser for coefficient expressions.

Grammar (standard precedence, ``^`` binds tightest, unary minus below it):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') exponent)?
    atom   := NUMBER | NAME | '(' expr ')'
    exponent := ['+' | '-'] INTEGER | '(' ['+' | '-'] INTEGER ')'

Names are ``z`` and the symbols of the field (``theta`` for F_p(theta),
the generator name of an extension).
"""

import re
from fractions import Fraction

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            while text[pos].isspace():
                pos += 1
            raise ParseError("unexpected character %r" % text[pos], pos, text)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), start))
        else:
            out.append(("op", m.group(3), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, const, names):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.const = const
        self.names = names

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expect(self, op):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != op:
            self.error("expected %r" % op)
        return self.take()

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        val = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token %r" % (self.peek()[1],))
        return val

    def expr(self):
        val = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            tok = self.take()
            rhs = self.unary()
            if tok[1] == "*":
                val = val * rhs
            else:
                if not rhs:
                    self.error("division by zero", tok)
                val = val / rhs
        return val

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            val = self.unary()
            return -val if tok[1] == "-" else val
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("^", "**"):
            self.take()
            e = self.exponent()
            if e < 0 and not base:
                self.error("zero to a negative power", tok)
            return base ** e
        return base

    def exponent(self):
        paren = False
        if self.peek()[0] == "op" and self.peek()[1] == "(":
            self.take()
            paren = True
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        tok = self.peek()
        if tok[0] != "num" or "." in tok[1]:
            self.error("exponent must be an integer")
        self.take()
        if paren:
            self.expect(")")
        return sign * int(tok[1])

    def atom(self):
        tok = self.take()
        if tok[0] == "num":
            return self.const(Fraction(tok[1]))
        if tok[0] == "name":
            if tok[1] not in self.names:
                self.error("unknown symbol %r" % tok[1], tok)
            return self.names[tok[1]]
        if tok[0] == "op" and tok[1] == "(":
            val = self.expr()
            self.expect(")")
            return val
        self.error("unexpected %s" % ("end of input" if tok[0] == "end" else repr(tok[1])), tok)


def parse_expression(text, field, allow_z=True, var="z"):
    """Parse ``text`` into a RationalFunction over ``field`` (or a field
    element when ``allow_z`` is false)."""
    if not isinstance(text, str):
        raise ParseError("expression must be a string, got %r" % (text,))
    if allow_z:
        from .series import RationalFunction
        const = lambda c: RationalFunction.const(field, c)
        names = {k: RationalFunction.const(field, v) for k, v in field.symbols().items()}
        names[var] = RationalFunction.z(field)
    else:
        const = field
        names = dict(field.symbols())
    return _Parser(text, const, names).parse()
