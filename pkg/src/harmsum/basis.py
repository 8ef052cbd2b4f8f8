"""Relations of the quasi-shuffle algebra, their exact row reduction, and the
substitution tables that rewrite every sum over algebraically independent
basis sums.

Rows are built from products ``S_u * S_v`` of two words of total weight
``d``: the weight-``d`` part of ``L(S_u S_v)`` gives the coefficient vector,
everything else (already rewritten over lower basis words) is the tail.
"""
from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .alphabet import AlphabetSpec
from .diffring import sigma
from .quasishuffle import shuffle, shuffle_words
from .words import (
    Monomial,
    OrderMode,
    SumExpr,
    Word,
    WordOrder,
    default_key,
    enumerate_words,
    expr_weight,
    mono_mul,
    word_weight,
)

log = logging.getLogger(__name__)

QPoly = dict  # Monomial -> Fraction

THREADS_ENV = "HARMSUM_THREADS"


def thread_count() -> int:
    """Worker threads for row construction, from ``HARMSUM_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


class MissingLowerTable(ValueError):
    pass


class WeightExceeded(ValueError):
    pass


class NotASubAlphabet(ValueError):
    pass


class InconsistentRelations(ArithmeticError):
    """A relation among lower basis sums survived elimination."""


# --- rational polynomials in the sum symbols --------------------------------

def q_add(acc: QPoly, p: Mapping[Monomial, Fraction], scale: Fraction = Fraction(1)) -> QPoly:
    for m, c in p.items():
        v = acc.get(m, 0) + scale * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)
    return acc


def q_mul(p: Mapping[Monomial, Fraction], q: Mapping[Monomial, Fraction]) -> QPoly:
    out: QPoly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = mono_mul(m1, m2)
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


# --- data types -------------------------------------------------------------

@dataclass
class Row:
    coeffs: dict[int, Fraction]
    tail: QPoly

    @property
    def tail_expr(self) -> SumExpr:
        return SumExpr.from_rational_terms(self.tail)

    def is_zero(self) -> bool:
        return not self.coeffs


@dataclass
class RelationMatrix:
    """Each row reads ``sum coeffs[j] * S_{columns[j]} + tail == 0`` modulo
    the quasi-shuffle relations."""

    columns: list[Word]
    rows: list[Row]
    weight: int = 0

    def dense(self) -> list[list[Fraction]]:
        return [[r.coeffs.get(j, Fraction(0)) for j in range(len(self.columns))] for r in self.rows]

    def relation(self, i: int) -> SumExpr:
        r = self.rows[i]
        e = r.tail_expr
        for j, c in r.coeffs.items():
            e = e + SumExpr.word(self.columns[j], c)
        return e

    @property
    def pivots(self) -> list[int]:
        return [min(r.coeffs) for r in self.rows if r.coeffs]


@dataclass
class BasisReport:
    weights: list[int] = field(default_factory=list)
    words: list[int] = field(default_factory=list)
    ranks: list[int] = field(default_factory=list)
    basis: list[int] = field(default_factory=list)

    def add(self, d: int, words: int, rank: int) -> None:
        self.weights.append(d)
        self.words.append(words)
        self.ranks.append(rank)
        self.basis.append(words - rank)

    @property
    def total_basis(self) -> int:
        return sum(self.basis)

    def lines(self) -> list[str]:
        out = [f"weight {d}: words {w}, rank {r}, basis {b}"
               for d, w, r, b in zip(self.weights, self.words, self.ranks, self.basis)]
        out.append(f"cumulative basis {self.total_basis}")
        return out


@dataclass
class SubstitutionTable:
    """Rewrite rules ``word -> expression over basis words`` for every
    weight up to ``max_weight``; words not in ``rules`` are basis words."""

    spec: AlphabetSpec
    order: WordOrder = field(default_factory=WordOrder)
    max_weight: int = 0
    rules: dict[Word, SumExpr] = field(default_factory=dict)
    basis: dict[int, list[Word]] = field(default_factory=dict)
    report: BasisReport = field(default_factory=BasisReport)
    _qrules: dict[Word, QPoly] = field(default_factory=dict, repr=False, compare=False)

    def __eq__(self, other):
        if not isinstance(other, SubstitutionTable):
            return NotImplemented
        return (self.spec == other.spec and self.max_weight == other.max_weight
                and self.rules == other.rules and self.basis == other.basis)

    def basis_words(self) -> set[Word]:
        return {w for ws in self.basis.values() for w in ws}

    def image(self, w: Word) -> QPoly:
        """The reduced form of ``S_w`` as a rational polynomial."""
        if not w:
            return {(): Fraction(1)}
        img = self._qrules.get(w)
        if img is not None:
            return img
        d = word_weight(w)
        if d > self.max_weight:
            raise WeightExceeded(f"no table entry for weight {d} (table covers weight <= {self.max_weight})")
        if w in self.rules:
            img = self.rules[w].rational_terms()
            if img is None:
                raise ValueError("substitution rules must have rational coefficients")
        elif w in self.basis.get(d, ()):
            img = {(w,): Fraction(1)}
        else:
            raise WeightExceeded(f"word {w} is not covered by the table")
        self._qrules[w] = img
        return img

    def image_monomial(self, m: Monomial) -> QPoly:
        out: QPoly = {(): Fraction(1)}
        for w in m:
            out = q_mul(out, self.image(w))
        return out

    def copy(self) -> SubstitutionTable:
        return SubstitutionTable(self.spec, self.order, self.max_weight, dict(self.rules),
                                 {d: list(ws) for d, ws in self.basis.items()},
                                 BasisReport(list(self.report.weights), list(self.report.words),
                                             list(self.report.ranks), list(self.report.basis)),
                                 dict(self._qrules))


def empty_table(spec: AlphabetSpec, order: WordOrder | None = None) -> SubstitutionTable:
    return SubstitutionTable(spec, order or WordOrder())


# --- pipeline ---------------------------------------------------------------

def word_pairs(spec: AlphabetSpec, d: int) -> Iterable[tuple[Word, Word]]:
    """Unordered pairs of nonempty words whose weights add up to ``d``."""
    for wu in range(1, d // 2 + 1):
        us = enumerate_words(spec, wu)
        vs = enumerate_words(spec, d - wu)
        if 2 * wu < d:
            for u in us:
                for v in vs:
                    yield u, v
        else:
            for i, u in enumerate(us):
                for v in us[i:]:
                    yield u, v


def _make_row(combo: Mapping[Word, Fraction], factors: list[Word], d: int,
              index: Mapping[Word, int], lower: SubstitutionTable | None) -> Row:
    coeffs: dict[int, Fraction] = {}
    lower_part: QPoly = {}
    for w, c in combo.items():
        if word_weight(w) == d:
            coeffs[index[w]] = c
        elif lower is not None:
            q_add(lower_part, lower.image(w) if w else {(): Fraction(1)}, c)
    tail: QPoly = {}
    if lower is not None:
        tail = q_add(lower_part, lower.image_monomial(tuple(sorted(factors))), Fraction(-1))
    return Row(coeffs, tail)


def build_relations(spec: AlphabetSpec, d: int, lower: SubstitutionTable | None,
                    order: WordOrder | None = None, *, products: int = 2) -> RelationMatrix:
    """One row per unordered product of ``products`` words of total weight
    ``d`` (pairs by default).  With ``lower=None`` only coefficient vectors
    are built (enough for ranks and pivots)."""
    if lower is not None and lower.max_weight < d - 1:
        raise MissingLowerTable(f"weight {d} needs a table through weight {d - 1}, got {lower.max_weight}")
    columns = enumerate_words(spec, d, order)
    index = {w: j for j, w in enumerate(columns)}
    factor_lists = [list(p) for p in word_pairs(spec, d)] if products == 2 else \
        [list(f) for f in _word_products(spec, d, products)]

    def row(factors):
        combo = shuffle(*factors) if len(factors) == 2 else shuffle_words(factors)
        return _make_row(combo, factors, d, index, lower)

    threads = thread_count()
    if threads > 1 and len(factor_lists) > 1:
        # map keeps input order, so the matrix matches the sequential one
        with ThreadPoolExecutor(threads) as pool:
            rows = list(pool.map(row, factor_lists))
    else:
        rows = [row(f) for f in factor_lists]
    return RelationMatrix(columns, rows, d)


def _word_products(spec: AlphabetSpec, d: int, k: int, min_word=None):
    """Multisets of ``k`` nonempty words of total weight ``d`` (nondecreasing
    in the default key)."""
    if k == 1:
        for w in enumerate_words(spec, d):
            if min_word is None or default_key(w) >= default_key(min_word):
                yield (w,)
        return
    for wu in range(1, d - k + 2):
        for u in enumerate_words(spec, wu):
            if min_word is not None and default_key(u) < default_key(min_word):
                continue
            for rest in _word_products(spec, d - wu, k - 1, u):
                yield (u,) + rest


def _axpy(dst: dict, src: Mapping, c: Fraction) -> None:
    """dst -= c * src, dropping zeros."""
    for k, v in src.items():
        x = dst.get(k, 0) - c * v
        if x:
            dst[k] = x
        else:
            dst.pop(k, None)


def rref(m: RelationMatrix) -> RelationMatrix:
    """Reduced row-echelon form over Q, tails carried along; zero rows dropped.

    The result depends only on the row space and the column order.
    """
    pivots: dict[int, Row] = {}
    for r in m.rows:
        coeffs, tail = dict(r.coeffs), dict(r.tail)
        while coeffs:
            lead = min(coeffs)
            p = pivots.get(lead)
            if p is None:
                break
            c = coeffs[lead]
            _axpy(coeffs, p.coeffs, c)
            _axpy(tail, p.tail, c)
        if not coeffs:
            if tail:
                raise InconsistentRelations("a relation among lower basis sums remained")
            continue
        lead = min(coeffs)
        inv = 1 / coeffs[lead]
        if inv != 1:
            coeffs = {k: v * inv for k, v in coeffs.items()}
            tail = {k: v * inv for k, v in tail.items()}
        pivots[lead] = Row(coeffs, tail)
    # back substitution, highest pivot first
    cols = sorted(pivots)
    for col in reversed(cols):
        row = pivots[col]
        for other in sorted(k for k in row.coeffs if k > col and k in pivots):
            c = row.coeffs.get(other)
            if c:
                _axpy(row.coeffs, pivots[other].coeffs, c)
                _axpy(row.tail, pivots[other].tail, c)
    return RelationMatrix(list(m.columns), [pivots[c] for c in cols], m.weight)


def rank_only(m: RelationMatrix) -> tuple[int, list[int]]:
    """Rank and pivot columns without back substitution or tails."""
    pivots: dict[int, dict] = {}
    for r in m.rows:
        coeffs = dict(r.coeffs)
        while coeffs:
            lead = min(coeffs)
            p = pivots.get(lead)
            if p is None:
                inv = 1 / coeffs[lead]
                pivots[lead] = {k: v * inv for k, v in coeffs.items()}
                break
            _axpy(coeffs, p, coeffs[lead])
    return len(pivots), sorted(pivots)


def extract_basis(m: RelationMatrix, lower: SubstitutionTable) -> SubstitutionTable:
    """Turn an RREF matrix into rules for its pivot words; the remaining
    words of that weight join the basis."""
    d = m.weight
    table = lower.copy()
    pivot_cols = set()
    for r in m.rows:
        col = min(r.coeffs)
        pivot_cols.add(col)
        rhs: QPoly = {m_: -c for m_, c in r.tail.items()}
        for j, c in r.coeffs.items():
            if j != col:
                q_add(rhs, {(m.columns[j],): c}, Fraction(-1))
        table.rules[m.columns[col]] = SumExpr.from_rational_terms(rhs)
        table._qrules[m.columns[col]] = rhs
    table.basis[d] = [w for j, w in enumerate(m.columns) if j not in pivot_cols]
    table.max_weight = max(table.max_weight, d)
    table.report.add(d, len(m.columns), len(pivot_cols))
    return table


def build_table(spec: AlphabetSpec, max_weight: int, order: WordOrder | None = None,
                start: SubstitutionTable | None = None) -> SubstitutionTable:
    """Run the weight-by-weight pipeline through ``max_weight``."""
    order = order or WordOrder()
    table = start.copy() if start is not None else empty_table(spec, order)
    table.order = order
    for d in range(table.max_weight + 1, max_weight + 1):
        rel = build_relations(spec, d, table, order)
        red = rref(rel)
        table = extract_basis(red, table)
        log.info("weight %d: %d words, rank %d", d, len(rel.columns), len(red.rows))
    return table


def basis_counts(spec: AlphabetSpec, max_weight: int) -> BasisReport:
    """Per-weight word/rank/basis counts, computed from coefficient vectors
    alone (the rank does not depend on tails)."""
    report = BasisReport()
    for d in range(1, max_weight + 1):
        rel = build_relations(spec, d, None)
        rank, _ = rank_only(rel)
        report.add(d, len(rel.columns), rank)
        log.info("weight %d: %d words, rank %d", d, len(rel.columns), rank)
    return report


def reduce(e: SumExpr, table: SubstitutionTable) -> SumExpr:
    """Rewrite ``e`` over basis words only."""
    if expr_weight(e) > table.max_weight:
        raise WeightExceeded(f"expression of weight {expr_weight(e)} exceeds table weight {table.max_weight}")
    out = SumExpr()
    for m, c in e.terms.items():
        img = table.image_monomial(m)
        out = out + SumExpr({mm: c.scale(v) for mm, v in img.items()})
    return out


def reduced_sigma(e: SumExpr, k: int, table: SubstitutionTable) -> SumExpr:
    """The shift on the reduced ring: shift, then rewrite over the basis."""
    return reduce(sigma(e, k), table)


def extension_order(small: SubstitutionTable, spec_big: AlphabetSpec) -> WordOrder:
    """Per weight: the new words in default order, then the small alphabet's
    words in their table order.

    Pivots are taken leftmost, so a row whose pivot falls among the small
    words has support on small words only; such rows span exactly the small
    relations, which keeps the small rules and basis intact.
    """
    lists = {}
    for d in range(1, small.max_weight + 1):
        old = enumerate_words(small.spec, d, small.order)
        seen = set(old)
        lists[d] = tuple(w for w in enumerate_words(spec_big, d) if w not in seen) + tuple(old)
    return WordOrder.from_lists(lists)


def extend_alphabet(small: SubstitutionTable, spec_big: AlphabetSpec) -> SubstitutionTable:
    """Recompute the table over a larger alphabet so that the small basis
    embeds and the small rules survive unchanged."""
    if not small.spec.issubset(spec_big):
        raise NotASubAlphabet(f"{small.spec.describe()} is not contained in {spec_big.describe()}")
    if spec_big == small.spec:
        return small.copy()
    return build_table(spec_big, small.max_weight, extension_order(small, spec_big))
