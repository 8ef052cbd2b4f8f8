"""Exact evaluation of expressions as sequences, and the numeric checks
built on it."""
from __future__ import annotations

import csv
import io
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .alphabet import Letter, lambda_eval
from .coeffring import CoefElem, RatFunc, integer_roots
from .words import SumExpr, Word


def ev_ratfunc(r: RatFunc, k: int) -> Fraction:
    """Value at ``k``; 0 where the denominator vanishes."""
    d = r.den(k)
    if d == 0:
        return Fraction(0)
    return r.num(k) / d


def ev_coef(c: CoefElem, k: int) -> Fraction:
    v = ev_ratfunc(c.f0, k)
    if not c.f1.is_zero():
        w = ev_ratfunc(c.f1, k)
        v += -w if k % 2 else w
    return v


@dataclass
class EvalContext:
    """Memo of prefix values ``S_w(0..N)`` per word."""

    memo: dict[Word, list[Fraction]] = field(default_factory=dict)
    horizon: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def values(self, w: Word, n: int) -> list[Fraction]:
        vals = self.memo.get(w)
        if vals is not None and len(vals) > n:
            return vals
        tail = self.values(w[1:], n) if len(w) > 1 else None
        with self._lock:
            vals = self.memo.setdefault(w, [Fraction(0)])
            head = w[0]
            for i in range(len(vals), n + 1):
                t = lambda_eval(head, i)
                vals.append(vals[-1] + (t * tail[i] if tail is not None else t))
            self.horizon = max(self.horizon, n)
        return vals


_default_ctx = EvalContext()


def eval_sum(w: Word, n: int, ctx: EvalContext | None = None) -> Fraction:
    """``S_w(n)`` exactly; the empty word evaluates to 1."""
    if not w:
        return Fraction(1)
    return (ctx or _default_ctx).values(w, n)[n]


@dataclass(frozen=True)
class SequenceView:
    """Entries for ``n = start .. start + len(values) - 1``."""

    start: int
    values: tuple[Fraction, ...]

    def __len__(self):
        return len(self.values)

    @property
    def stop(self) -> int:
        return self.start + len(self.values)

    def at(self, n: int) -> Fraction:
        return self.values[n - self.start]

    def _overlap(self, other: SequenceView) -> range:
        return range(max(self.start, other.start), min(self.stop, other.stop))

    def agrees(self, other: SequenceView) -> bool:
        """Equality on the common window (entries before the later start are ignored)."""
        return all(self.at(n) == other.at(n) for n in self._overlap(other))

    def _combine(self, other: SequenceView, op: Callable) -> SequenceView:
        rng = self._overlap(other)
        return SequenceView(rng.start, tuple(op(self.at(n), other.at(n)) for n in rng))

    def __add__(self, other: SequenceView) -> SequenceView:
        return self._combine(other, lambda a, b: a + b)

    def __mul__(self, other: SequenceView) -> SequenceView:
        return self._combine(other, lambda a, b: a * b)

    def floats(self) -> list[float]:
        """For human inspection only."""
        return [float(v) for v in self.values]

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["n", "value"])
        for i, v in enumerate(self.values):
            wr.writerow([self.start + i, f"{v.numerator}/{v.denominator}"])
        return buf.getvalue()


def tau(e: SumExpr, start: int, length: int, ctx: EvalContext | None = None) -> SequenceView:
    """The evaluation sequence of ``e`` on ``start .. start + length - 1``."""
    if length < 1:
        raise ValueError("window length must be positive")
    ctx = ctx or _default_ctx
    top = start + length - 1
    tables = {w: ctx.values(w, top) for m in e.terms for w in m}
    vals = []
    for k in range(start, start + length):
        acc = Fraction(0)
        for m, c in e.terms.items():
            v = ev_coef(c, k)
            if not v:
                continue
            for w in m:
                v *= tables[w][k]
                if not v:
                    break
            acc += v
        vals.append(acc)
    return SequenceView(start, tuple(vals))


def pole_bound(e: SumExpr) -> int:
    """Smallest start with no coefficient pole at any integer beyond it."""
    bound = 0
    for c in e.terms.values():
        for r in (c.f0, c.f1):
            if not r.den.is_const():
                roots = integer_roots(r.den)
                if roots:
                    bound = max(bound, roots[-1] + 1)
    return bound


def verify_zero(e: SumExpr, start: int, length: int, ctx: EvalContext | None = None) -> bool:
    return all(v == 0 for v in tau(e, start, length, ctx).values)


def verify_telescoping(w: Word, start: int, length: int, ctx: EvalContext | None = None,
                       summand: Callable[[Letter, int], Fraction] = lambda_eval) -> bool:
    """Check ``S_w(n+1) - S_w(n) == summand(w[0], n+1) * S_tail(n+1)`` on the
    window; ``summand`` is swappable for negative controls."""
    ctx = ctx or _default_ctx
    top = start + length
    sw = ctx.values(w, top)
    tail = ctx.values(w[1:], top) if len(w) > 1 else None
    for n in range(start, start + length):
        t = tail[n + 1] if tail is not None else Fraction(1)
        if sw[n + 1] - sw[n] != summand(w[0], n + 1) * t:
            return False
    return True
