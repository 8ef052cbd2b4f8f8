"""Text form of sum expressions.

Grammar (whitespace insignificant)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' (INT | '(' INT ')' | 'n'))?
    atom   := INT | 'n' | word | '(' expr ')'
    word   := 'S' '[' letter (',' letter)* ']'
    letter := SIGNED_INT | '(' INT ',' INT ',' INT ',' SIGNED_INT ')'

``S[-2,1]`` uses signed harmonic indices; ``(a,b,c,z)`` spells out a
cyclotomic letter.  ``(-1)^n`` is the alternating sign.  Division is only
allowed by sum-free expressions.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .alphabet import InvalidLetter, Letter, harmonic
from .coeffring import COEF_ONE, X, CoefElem, PolyN, RatFunc, format_coef
from .words import Monomial, SumExpr, Word


class ParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line, self.column = line, col


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(0).strip() == "":
            pos = m.end()
            continue
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def take(self, kind, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = tok[1] if tok[1] is not None else "end of input"
            self.error(f"expected {want!r}, got {got!r}")
        self.i += 1
        return tok

    def accept(self, kind, value=None):
        tok = self.peek()
        if tok[0] == kind and (value is None or tok[1] == value):
            self.i += 1
            return tok
        return None

    def parse(self) -> SumExpr:
        e = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self) -> SumExpr:
        e = self.term()
        while True:
            if self.accept("op", "+"):
                e = e + self.term()
            elif self.accept("op", "-"):
                e = e - self.term()
            else:
                return e

    def term(self) -> SumExpr:
        e = self.unary()
        while True:
            if self.accept("op", "*"):
                e = e * self.unary()
            elif tok := self.accept("op", "/"):
                d = self.unary()
                if not d.is_linear() or any(m for m in d.terms) or d.is_zero():
                    self.error("division by a sum expression or by zero", tok)
                e = e * d.coefficient(()).inverse()
            else:
                return e

    def unary(self) -> SumExpr:
        if self.accept("op", "-"):
            return -self.unary()
        if self.accept("op", "+"):
            return self.unary()
        return self.power()

    def power(self) -> SumExpr:
        base = self.atom()
        if not (tok := self.accept("op", "^")):
            return base
        if self.accept("name", "n"):
            if base != SumExpr.const(-1):
                self.error("only (-1)^n is supported with a symbolic exponent", tok)
            return SumExpr.const(X)
        if self.accept("op", "("):
            k = self.take("int")[1]
            self.take("op", ")")
        else:
            k = self.take("int")[1]
        return base ** k

    def atom(self) -> SumExpr:
        tok = self.peek()
        if self.accept("int"):
            return SumExpr.const(tok[1])
        if self.accept("name", "n"):
            return SumExpr.const(RatFunc(PolyN([0, 1])))
        if self.accept("name", "S"):
            return SumExpr.word(self.word())
        if self.accept("op", "("):
            e = self.expr()
            self.take("op", ")")
            return e
        self.error(f"unexpected {tok[1] if tok[1] is not None else 'end of input'!r}")

    def signed_int(self) -> int:
        sign = -1 if self.accept("op", "-") else 1
        return sign * self.take("int")[1]

    def word(self) -> Word:
        self.take("op", "[")
        letters = []
        while True:
            tok = self.peek()
            try:
                if self.accept("op", "("):
                    a = self.take("int")[1]
                    self.take("op", ",")
                    b = self.take("int")[1]
                    self.take("op", ",")
                    c = self.take("int")[1]
                    self.take("op", ",")
                    z = self.signed_int()
                    self.take("op", ")")
                    letters.append(Letter(a, b, c, z).validate())
                else:
                    letters.append(harmonic(self.signed_int()))
            except InvalidLetter as exc:
                self.error(f"invalid letter ({exc})", tok)
            if not self.accept("op", ","):
                break
        self.take("op", "]")
        return tuple(letters)


def parse_expr(text: str) -> SumExpr:
    """Parse the text form into a canonical :class:`SumExpr`.

    >>> str(parse_expr("S[1]*S[1] - 2*S[1,1] + S[2]"))
    'S[1]^2 - 2*S[1,1] + S[2]'
    """
    return _Parser(text).parse()


def parse_word(text: str) -> Word:
    e = parse_expr(text)
    if len(e.terms) == 1:
        ((m, c),) = e.terms.items()
        if len(m) == 1 and c == COEF_ONE:
            return m[0]
    raise ParseError("expected a single sum S[...]", text, 0)


def format_letter(l: Letter) -> str:
    if l.a == 1 and l.b == 0:
        return str(l.c * l.z)
    return f"({l.a},{l.b},{l.c},{l.z})"


def format_word(w: Word) -> str:
    return "S[" + ",".join(format_letter(l) for l in w) + "]"


def format_monomial(m: Monomial) -> str:
    parts = []
    i = 0
    while i < len(m):
        j = i
        while j < len(m) and m[j] == m[i]:
            j += 1
        parts.append(format_word(m[i]) + (f"^{j - i}" if j - i > 1 else ""))
        i = j
    return "*".join(parts)


def _frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _monomial_key(m: Monomial):
    return (len(m) > 0, m)


def format_expr(e: SumExpr) -> str:
    if e.is_zero():
        return "0"
    out = []
    for m in sorted(e.terms, key=_monomial_key):
        c = e.terms[m]
        if c.is_const():
            v = c.const_value()
            neg, a = v < 0, abs(v)
            if not m:
                body = _frac(a)
            elif a == 1:
                body = format_monomial(m)
            else:
                body = f"{_frac(a)}*{format_monomial(m)}"
        else:
            neg = False
            body = f"({format_coef(c)})"
            if m:
                body += "*" + format_monomial(m)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
