"""Exact coefficient arithmetic: polynomials and rational functions in ``n``
over the rationals, and the ring K(n)[x] with x^2 = 1 where ``x`` stands
for (-1)^n.

All values are immutable.  Rationals are plain :class:`fractions.Fraction`.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

Rational = Fraction


class ZeroPolynomial(ValueError):
    pass


def _trim(coeffs: Iterable) -> tuple[Fraction, ...]:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class PolyN:
    """Dense univariate polynomial in ``n``; ``coeffs[i]`` multiplies ``n**i``.

    >>> PolyN([1, 2]) * PolyN([1, 2])
    PolyN('4*n^2 + 4*n + 1')
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim(coeffs)
        self._hash = None

    @classmethod
    def const(cls, c) -> PolyN:
        return cls((c,))

    @classmethod
    def linear(cls, a, b) -> PolyN:
        """The polynomial ``a*n + b``."""
        return cls((b, a))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, PolyN):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        return f"PolyN('{format_poly(self)}')"

    def __add__(self, other: PolyN) -> PolyN:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return PolyN([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    def __neg__(self) -> PolyN:
        return PolyN([-c for c in self.coeffs])

    def __sub__(self, other: PolyN) -> PolyN:
        return self + (-other)

    def __mul__(self, other: PolyN) -> PolyN:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyN()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return PolyN(out)

    def scale(self, c) -> PolyN:
        return PolyN([c * x for x in self.coeffs])

    def __pow__(self, k: int) -> PolyN:
        out = PolyN.const(1)
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: PolyN) -> tuple[PolyN, PolyN]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lc = other.lc
        if len(rem) - 1 < db:
            return PolyN(), self
        quo = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            q = rem[k + db] / lc
            quo[k] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= q * c
        return PolyN(quo), PolyN(rem[:db])

    def __call__(self, v):
        """Horner evaluation at ``v`` (a number or another polynomial)."""
        acc = PolyN() if isinstance(v, PolyN) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + (PolyN.const(c) if isinstance(v, PolyN) else c)
        return acc

    def shift(self, k: int) -> PolyN:
        """The polynomial with ``n`` replaced by ``n + k``."""
        if k == 0 or self.is_const():
            return self
        # Taylor shift via repeated synthetic division
        cs = list(self.coeffs)
        d = len(cs) - 1
        for i in range(d):
            for j in range(d - 1, i - 1, -1):
                cs[j] += k * cs[j + 1]
        return PolyN(cs)

    def monic(self) -> PolyN:
        return self.scale(1 / self.lc) if self.coeffs else self

    def primitive(self) -> tuple[Fraction, PolyN]:
        """Split into ``(content, p)`` with ``p`` integral, primitive and with
        positive leading coefficient."""
        if not self.coeffs:
            return Fraction(0), self
        den = reduce(lambda x, y: x * y // math.gcd(x, y), (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(math.gcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), PolyN([Fraction(x // g) for x in ints])


ZERO_POLY = PolyN()
ONE_POLY = PolyN.const(1)


def poly_gcd(a: PolyN, b: PolyN) -> PolyN:
    """Monic gcd over Q (the zero polynomial if both are zero)."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


class RatFunc:
    """A rational function ``num/den`` in ``n`` kept in canonical form:
    coprime parts, ``den`` integral primitive with positive leading
    coefficient (so the rational content lives in ``num``)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _canonical: bool = False):
        if not isinstance(num, PolyN):
            num = PolyN.const(num)
        if den is None:
            den = ONE_POLY
        elif not isinstance(den, PolyN):
            den = PolyN.const(den)
        if not _canonical:
            if den.is_zero():
                raise ZeroDivisionError("zero denominator")
            if num.is_zero():
                den = ONE_POLY
            elif den.is_const():
                num = num.scale(1 / den.lc)
                den = ONE_POLY
            else:
                g = poly_gcd(num, den)
                if not g.is_const():
                    num = num.divmod(g)[0]
                    den = den.divmod(g)[0]
                content, den = den.primitive()
                if content != 1:
                    num = num.scale(1 / content)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def const(cls, c) -> RatFunc:
        return cls(PolyN.const(c), ONE_POLY, _canonical=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.den.is_const() and self.num.is_const()

    def const_value(self) -> Fraction:
        return self.num.coeffs[0] if self.num.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatFunc('{format_ratfunc(self)}')"

    def __add__(self, other: RatFunc) -> RatFunc:
        if self.den == other.den:
            if self.den.is_const():
                return RatFunc(self.num + other.num, ONE_POLY, _canonical=True)
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den, _canonical=True)

    def __sub__(self, other: RatFunc) -> RatFunc:
        return self + (-other)

    def __mul__(self, other: RatFunc) -> RatFunc:
        if self.den.is_const() and other.den.is_const():
            return RatFunc(self.num * other.num, ONE_POLY, _canonical=True)
        if self.num.is_const() and other.num.is_const() and not (self.is_zero() or other.is_zero()):
            # product of primitive integral polys stays primitive (Gauss)
            return RatFunc(self.num * other.num, self.den * other.den, _canonical=True)
        return RatFunc(self.num * other.num, self.den * other.den)

    def inverse(self) -> RatFunc:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other: RatFunc) -> RatFunc:
        return self * other.inverse()

    def __call__(self, v) -> Fraction:
        return self.num(v) / self.den(v)


def shift_ratfunc(r: RatFunc, k: int) -> RatFunc:
    """``r`` with ``n`` replaced by ``n + k``.

    >>> shift_ratfunc(RatFunc(PolyN([0, 1]), PolyN([1, 1])), 1)
    RatFunc('(n + 1)/(n + 2)')
    """
    if k == 0 or r.den.is_const() and r.num.is_const():
        return r
    # shifting keeps coprimality, primitivity and the leading coefficient
    return RatFunc(r.num.shift(k), r.den.shift(k), _canonical=True)


class CoefElem:
    """Element ``f0 + f1*x`` of K(n)[x] with x^2 = 1 (x models (-1)^n)."""

    __slots__ = ("f0", "f1", "_hash")

    def __init__(self, f0=None, f1=None):
        if f0 is None:
            f0 = _RZERO
        elif not isinstance(f0, RatFunc):
            f0 = RatFunc.const(Fraction(f0))
        if f1 is None:
            f1 = _RZERO
        elif not isinstance(f1, RatFunc):
            f1 = RatFunc.const(Fraction(f1))
        self.f0 = f0
        self.f1 = f1
        self._hash = None

    @classmethod
    def const(cls, c) -> CoefElem:
        return cls(RatFunc.const(Fraction(c)))

    def is_zero(self) -> bool:
        return self.f0.is_zero() and self.f1.is_zero()

    def is_const(self) -> bool:
        return self.f1.is_zero() and self.f0.is_const()

    def const_value(self) -> Fraction:
        return self.f0.const_value()

    def __eq__(self, other):
        if isinstance(other, CoefElem):
            return self.f0 == other.f0 and self.f1 == other.f1
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.f0, self.f1))
        return self._hash

    def __repr__(self):
        return f"CoefElem('{format_coef(self)}')"

    def __add__(self, other: CoefElem) -> CoefElem:
        return CoefElem(self.f0 + other.f0, self.f1 + other.f1)

    def __neg__(self) -> CoefElem:
        return CoefElem(-self.f0, -self.f1)

    def __sub__(self, other: CoefElem) -> CoefElem:
        return CoefElem(self.f0 - other.f0, self.f1 - other.f1)

    def __mul__(self, other: CoefElem) -> CoefElem:
        if self.f1.is_zero() and other.f1.is_zero():
            return CoefElem(self.f0 * other.f0, _RZERO)
        return CoefElem(self.f0 * other.f0 + self.f1 * other.f1,
                        self.f0 * other.f1 + self.f1 * other.f0)

    def scale(self, c: Fraction) -> CoefElem:
        rc = RatFunc.const(c)
        return CoefElem(self.f0 * rc, self.f1 * rc)

    def inverse(self) -> CoefElem:
        # (f0 + f1 x)(f0 - f1 x) = f0^2 - f1^2
        norm = self.f0 * self.f0 - self.f1 * self.f1
        inv = norm.inverse()
        return CoefElem(self.f0 * inv, -self.f1 * inv)


_RZERO = RatFunc.const(0)
COEF_ZERO = CoefElem()
COEF_ONE = CoefElem.const(1)
X = CoefElem(_RZERO, RatFunc.const(1))


def coef_sigma(c: CoefElem, k: int) -> CoefElem:
    """Shift ``n -> n + k``; the ``x`` component picks up ``(-1)^k``."""
    if k == 0:
        return c
    f1 = shift_ratfunc(c.f1, k)
    return CoefElem(shift_ratfunc(c.f0, k), -f1 if k % 2 else f1)


def integer_roots(p: PolyN) -> list[int]:
    """Sorted distinct integer roots of a nonzero polynomial."""
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial has every root")
    _, q = p.primitive()
    cs = [int(c) for c in q.coeffs]
    roots = []
    while cs and cs[0] == 0:
        cs.pop(0)
        if not roots:
            roots.append(0)
    if len(cs) <= 1:
        return roots
    t = abs(cs[0])
    # rational root theorem: an integer root divides the trailing coefficient
    cands = set()
    for d in range(1, math.isqrt(t) + 1):
        if t % d == 0:
            cands.update((d, -d, t // d, -(t // d)))
    for r in sorted(cands):
        acc = 0
        for c in reversed(cs):
            acc = acc * r + c
        if acc == 0:
            roots.append(r)
    return sorted(roots)


def dispersion(f: PolyN, g: PolyN) -> int | None:
    """Largest ``k >= 0`` with ``gcd(f(n), g(n+k))`` nontrivial, or None.

    The candidates are the nonnegative integer roots of the resultant
    ``Res_n(f(n), g(n+k))`` viewed as a polynomial in ``k``.
    """
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("dispersion of the zero polynomial")
    if f.is_const() or g.is_const():
        return None
    import sympy

    n, k = sympy.symbols("n k")
    fs = sum(sympy.Rational(c.numerator, c.denominator) * n**i for i, c in enumerate(f.coeffs))
    gs = sum(sympy.Rational(c.numerator, c.denominator) * (n + k)**i for i, c in enumerate(g.coeffs))
    res = sympy.Poly(sympy.resultant(fs, gs, n), k)
    rpoly = PolyN([Fraction(int(c.p), int(c.q)) for c in reversed(res.all_coeffs())])
    if rpoly.is_zero():
        # f and g(n+k) share a factor for every k; cannot happen for nonconstant polys
        raise ArithmeticError("identically vanishing resultant")
    best = None
    for r in integer_roots(rpoly):
        if r >= 0 and not poly_gcd(f, g.shift(r)).is_const():
            best = r if best is None else max(best, r)
    return best


def in_KnP(r: RatFunc, P: Sequence[PolyN]) -> bool:
    """Whether ``r = p/(c * prod P_i^m_i)`` with a nonzero exponent vector and
    ``p`` coprime to every ``P_i``."""
    den = r.den
    exps = []
    for p in P:
        m = 0
        while not den.is_const():
            q, rem = den.divmod(p)
            if not rem.is_zero():
                break
            den, m = q, m + 1
        exps.append(m)
    if not den.is_const() or not any(exps):
        return False
    prod = reduce(lambda a, b: a * b, P, ONE_POLY)
    return poly_gcd(r.num, prod).is_const()


# --- textual forms -------------------------------------------------------

def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: PolyN) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = _frac_str(a)
        else:
            mono = "n" if i == 1 else f"n^{i}"
            body = mono if a == 1 else f"{_frac_str(a)}*{mono}"
        if not parts:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def _poly_atom(p: PolyN) -> str:
    s = format_poly(p)
    nonzero = [c for c in p.coeffs if c]
    return s if len(nonzero) == 1 and nonzero[0] == 1 else f"({s})"


def format_ratfunc(r: RatFunc) -> str:
    if r.den.is_const():
        return format_poly(r.num)
    num = r.num
    if num.is_const():
        c = num.coeffs[0]
        sign = "-" if c < 0 else ""
        c = abs(c)
        if c.denominator == 1:
            return f"{sign}{c.numerator}/{_poly_atom(r.den)}"
        return f"{sign}{c.numerator}/({c.denominator}*{_poly_atom(r.den)})"
    return f"{_poly_atom(num)}/{_poly_atom(r.den)}"


def format_coef(c: CoefElem) -> str:
    """Text form; ``x`` prints as ``(-1)^n``."""
    parts = []
    if not c.f0.is_zero():
        parts.append(format_ratfunc(c.f0))
    if not c.f1.is_zero():
        f1 = c.f1
        if f1.is_const() and abs(f1.const_value()) == 1:
            body = ("-" if f1.const_value() < 0 else "") + "(-1)^n"
        else:
            body = f"(-1)^n*({format_ratfunc(f1)})"
        if parts:
            parts.append(body[1:] if body.startswith("-") else body)
            parts[-1] = (" - " if body.startswith("-") else " + ") + parts[-1]
        else:
            parts.append(body)
    return "".join(parts) if parts else "0"
