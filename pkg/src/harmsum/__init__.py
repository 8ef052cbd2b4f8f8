"""Basis sums of (cyclotomic) harmonic sums via the quasi-shuffle algebra,
the shift automorphism on the reduced ring, and exact sequence checks."""
from .alphabet import AlphabetKind, AlphabetSpec, Letter, harmonic, lambda_bar, lambda_eval, letter_cmp, letter_product
from .basis import (
    SubstitutionTable,
    basis_counts,
    build_relations,
    build_table,
    extend_alphabet,
    extract_basis,
    reduce,
    reduced_sigma,
    rref,
)
from .coeffring import CoefElem, PolyN, RatFunc, coef_sigma, dispersion, in_KnP, shift_ratfunc
from .diffring import is_fixed, is_fixed_exact, sigma
from .quasishuffle import linearize, shuffle
from .sequences import EvalContext, SequenceView, ev_coef, eval_sum, pole_bound, tau, verify_telescoping, verify_zero
from .syntax import format_expr, parse_expr
from .words import S, SumExpr, W, Word, WordOrder, enumerate_words, expr_weight, paper_fixture_order, word_weight

__version__ = "0.1.0"
