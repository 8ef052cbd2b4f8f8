"""The shift automorphism on polynomial expressions in the sum symbols.

One step forward uses  S_w -> S_w + sigma(lam(a1)) * sigma(S_tail),
one step back uses     S_w -> S_w - lam(a1) * S_tail,
with lam the summand of the first letter and S_() = 1.
"""
from __future__ import annotations

from functools import lru_cache

from .alphabet import lambda_bar
from .coeffring import coef_sigma
from .quasishuffle import linearize
from .words import ONE, SumExpr, Word


@lru_cache(maxsize=None)
def _step_word(w: Word, forward: bool) -> SumExpr:
    if not w:
        return ONE
    head, tail = w[0], w[1:]
    if forward:
        return SumExpr.word(w) + _step_word(tail, True) * coef_sigma(lambda_bar(head), 1)
    return SumExpr.word(w) - (SumExpr.word(tail) if tail else ONE) * lambda_bar(head)


def _step(e: SumExpr, forward: bool) -> SumExpr:
    k = 1 if forward else -1
    out = SumExpr()
    for m, c in e.terms.items():
        term = SumExpr.const(coef_sigma(c, k))
        for w in m:
            term = term * _step_word(w, forward)
        out = out + term
    return out


def sigma(e: SumExpr, k: int = 1) -> SumExpr:
    """Apply the shift ``k`` times (backwards for negative ``k``)."""
    for _ in range(abs(k)):
        e = _step(e, k > 0)
    return e


def is_fixed_exact(e: SumExpr) -> bool:
    """``sigma(e) == e`` as canonical polynomials in the sum symbols."""
    return sigma(e, 1) == e


def is_fixed(e: SumExpr) -> bool:
    """Whether ``e`` is a constant of the quotient ring, i.e. ``sigma(e) - e``
    lies in the ideal of quasi-shuffle relations (its linearization is 0).

    This agrees with :func:`is_fixed_exact` on linear expressions.  On
    nonlinear ones the two differ, e.g. for ``L(S[1]^4) - S[1]^4``.
    """
    return linearize(sigma(e, 1) - e).is_zero()
