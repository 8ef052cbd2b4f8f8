"""Words over the alphabet (indices of nested sums), word orders, and
:class:`SumExpr`, the polynomial ring over K(n)[x] in the sum symbols."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .alphabet import AlphabetSpec, Letter
from .coeffring import COEF_ONE, CoefElem, RatFunc

Word = tuple[Letter, ...]
Monomial = tuple[Word, ...]   # sorted multiset of words; () is the scalar monomial


class ExplicitOrderMismatch(ValueError):
    pass


def word_weight(w: Word) -> int:
    return sum(l.c for l in w)


def monomial_weight(m: Monomial) -> int:
    return sum(word_weight(w) for w in m)


def default_key(w: Word):
    """Longer words first, then letterwise by the alphabet order."""
    return (-len(w), tuple(l.key for l in w))


@lru_cache(maxsize=None)
def _all_words(spec: AlphabetSpec, d: int) -> tuple[Word, ...]:
    out = []
    for first in range(1, d + 1):
        heads = spec.letters(first)
        tails = [()] if first == d else _all_words(spec, d - first)
        out.extend((h,) + t for h in heads for t in tails)
    return tuple(sorted(out, key=default_key))


class OrderMode(enum.Enum):
    DEFAULT = "default"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class WordOrder:
    """Column order for the words of each weight.

    In EXPLICIT mode ``explicit`` maps a weight to its word list; weights
    without an entry fall back to the default order.
    """

    mode: OrderMode = OrderMode.DEFAULT
    explicit: Mapping[int, tuple[Word, ...]] = field(default_factory=dict)

    def __hash__(self):
        return hash((self.mode, tuple(sorted(self.explicit.items()))))

    @classmethod
    def default(cls) -> WordOrder:
        return cls()

    @classmethod
    def from_lists(cls, lists: Mapping[int, Iterable[Word]]) -> WordOrder:
        return cls(OrderMode.EXPLICIT, {d: tuple(ws) for d, ws in lists.items()})


def enumerate_words(spec: AlphabetSpec, d: int, order: WordOrder | None = None) -> list[Word]:
    """All words of weight exactly ``d``, each once, in ``order``."""
    if d < 1:
        raise ValueError("weight must be positive")
    words = _all_words(spec, d)
    if order is None or order.mode is OrderMode.DEFAULT or d not in order.explicit:
        return list(words)
    explicit = list(order.explicit[d])
    if len(explicit) != len(words) or set(explicit) != set(words):
        raise ExplicitOrderMismatch(f"explicit order at weight {d} is not a permutation of the {len(words)} words")
    return explicit


def paper_fixture_order() -> WordOrder:
    """Harmonic weight-4 column order that reproduces the classical
    basis ``S[2,1,1], S[3,1], S[4]``."""
    h = [Letter(1, 0, c, 1) for c in range(5)]
    w4 = [
        (h[1], h[1], h[1], h[1]),
        (h[1], h[1], h[2]),
        (h[1], h[2], h[1]),
        (h[2], h[1], h[1]),
        (h[2], h[2]),
        (h[1], h[3]),
        (h[3], h[1]),
        (h[4],),
    ]
    return WordOrder.from_lists({4: w4})


# --- polynomial expressions in the sum symbols ------------------------------

Scalar = Union[int, Fraction, RatFunc, CoefElem]


def _as_coef(c: Scalar) -> CoefElem:
    if isinstance(c, CoefElem):
        return c
    if isinstance(c, RatFunc):
        return CoefElem(c)
    return CoefElem.const(c)


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    return tuple(sorted(m1 + m2))


class SumExpr:
    """Finite sum of ``coef * monomial``; zero coefficients are never stored.

    Instances are treated as immutable values.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, CoefElem] | None = None):
        self.terms: dict[Monomial, CoefElem] = {}
        if terms:
            for m, c in terms.items():
                if not c.is_zero():
                    self.terms[m] = c
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, CoefElem]) -> SumExpr:
        e = cls.__new__(cls)
        e.terms = terms
        e._hash = None
        return e

    @classmethod
    def const(cls, c: Scalar) -> SumExpr:
        return cls({(): _as_coef(c)})

    @classmethod
    def word(cls, w: Word, c: Scalar = 1) -> SumExpr:
        return cls({(tuple(w),): _as_coef(c)})

    @classmethod
    def monomial(cls, m: Iterable[Word], c: Scalar = 1) -> SumExpr:
        return cls({tuple(sorted(tuple(w) for w in m)): _as_coef(c)})

    @classmethod
    def from_rational_terms(cls, terms: Mapping[Monomial, Fraction]) -> SumExpr:
        return cls._raw({m: CoefElem.const(c) for m, c in terms.items() if c})

    def is_zero(self) -> bool:
        return not self.terms

    def is_linear(self) -> bool:
        return all(len(m) <= 1 for m in self.terms)

    def words(self) -> set[Word]:
        return {w for m in self.terms for w in m}

    def coefficient(self, m: Monomial) -> CoefElem:
        return self.terms.get(m, CoefElem())

    def rational_terms(self) -> dict[Monomial, Fraction] | None:
        """The terms as rationals, or None if some coefficient is not constant."""
        out = {}
        for m, c in self.terms.items():
            if not c.is_const():
                return None
            out[m] = c.const_value()
        return out

    def __eq__(self, other):
        if isinstance(other, SumExpr):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == SumExpr.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        from .syntax import format_expr

        return f"SumExpr('{format_expr(self)}')"

    def __str__(self):
        from .syntax import format_expr

        return format_expr(self)

    @staticmethod
    def _lift(other) -> SumExpr:
        return other if isinstance(other, SumExpr) else SumExpr.const(other)

    def __add__(self, other) -> SumExpr:
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = out[m] + c
                if s.is_zero():
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return SumExpr._raw(out)

    __radd__ = __add__

    def __neg__(self) -> SumExpr:
        return SumExpr._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> SumExpr:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> SumExpr:
        return self._lift(other) - self

    def __mul__(self, other) -> SumExpr:
        if not isinstance(other, SumExpr):
            c = _as_coef(other)
            if c.is_zero():
                return SumExpr()
            return SumExpr({m: v * c for m, v in self.terms.items()})
        out: dict[Monomial, CoefElem] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                p = c1 * c2
                if m in out:
                    out[m] = out[m] + p
                else:
                    out[m] = p
        return SumExpr(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> SumExpr:
        if k < 0:
            raise ValueError("negative power of a sum expression")
        out = SumExpr.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def map_coefficients(self, f) -> SumExpr:
        return SumExpr({m: f(c) for m, c in self.terms.items()})


def expr_weight(e: SumExpr) -> int:
    """Largest total word weight among the monomials (0 for scalars)."""
    return max((monomial_weight(m) for m in e.terms), default=0)


ONE = SumExpr.const(COEF_ONE)


def S(*entries) -> SumExpr:
    """Convenience constructor: ``S(2, 1)`` is S_{2,1}; entries may be signed
    harmonic indices or full ``(a, b, c, z)`` tuples."""
    from .alphabet import harmonic

    return SumExpr.word(tuple(harmonic(e) if isinstance(e, int) else Letter(*e).validate() for e in entries))


def W(*entries) -> Word:
    from .alphabet import harmonic

    return tuple(harmonic(e) if isinstance(e, int) else Letter(*e).validate() for e in entries)
