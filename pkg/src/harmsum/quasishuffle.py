"""Quasi-shuffle (stuffle) product on words and the linearization operator."""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .alphabet import letter_product
from .coeffring import CoefElem
from .words import Monomial, SumExpr, Word

# Word -> Rational; the empty word () carries the scalar part.
WordCombo = dict


def _add_into(acc: dict, combo: Mapping[Word, Fraction], scale: Fraction, prefix: Word = ()) -> None:
    for w, c in combo.items():
        key = prefix + w
        v = acc.get(key, 0) + scale * c
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)


@lru_cache(maxsize=None)
def _shuffle(u: Word, v: Word) -> tuple[tuple[Word, Fraction], ...]:
    if not u:
        return ((v, Fraction(1)),)
    if not v:
        return ((u, Fraction(1)),)
    a, ut = u[0], u[1:]
    b, vt = v[0], v[1:]
    acc: dict[Word, Fraction] = {}
    _add_into(acc, dict(_shuffle(ut, v)), Fraction(1), (a,))
    _add_into(acc, dict(_shuffle(u, vt)), Fraction(1), (b,))
    inner = dict(_shuffle(ut, vt))
    for r, m in letter_product(a, b):
        _add_into(acc, inner, -r, (m,))
    return tuple(sorted(acc.items()))


def shuffle(u: Word, v: Word) -> WordCombo:
    """``u * v`` as a map word -> rational coefficient.

    >>> from harmsum.words import W
    >>> shuffle(W(1), W(1)) == {W(1, 1): 2, W(2): -1}
    True
    """
    # canonical argument order keeps the cache small; the product is commutative
    if v < u:
        u, v = v, u
    return dict(_shuffle(tuple(u), tuple(v)))


def shuffle_combo(x: Mapping[Word, Fraction], v: Word) -> WordCombo:
    acc: dict[Word, Fraction] = {}
    for w, c in x.items():
        _add_into(acc, shuffle(w, v), c)
    return acc


def shuffle_words(words) -> WordCombo:
    """Left-folded product of several words; ``()`` for none."""
    acc: dict[Word, Fraction] = {(): Fraction(1)}
    for w in words:
        acc = shuffle_combo(acc, w)
    return acc


@lru_cache(maxsize=65536)
def linearize_monomial(m: Monomial) -> tuple[tuple[Word, Fraction], ...]:
    return tuple(shuffle_words(m).items())


def linearize(e: SumExpr) -> SumExpr:
    """Rewrite ``e`` as a combination of single sums (degree <= 1 monomials)."""
    out: dict[Monomial, CoefElem] = defaultdict(CoefElem)
    for m, c in e.terms.items():
        if len(m) <= 1:
            out[m] = out[m] + c
            continue
        for w, r in linearize_monomial(m):
            key = (w,) if w else ()
            out[key] = out[key] + c.scale(r)
    return SumExpr(out)
