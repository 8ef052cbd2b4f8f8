import pytest

from harmsum.alphabet import AlphabetSpec, Letter
from harmsum.coeffring import CoefElem, PolyN, RatFunc
from harmsum.words import (
    ExplicitOrderMismatch, SumExpr, WordOrder, S, W, enumerate_words, expr_weight, paper_fixture_order,
    word_weight,
)
from oracles import all_words

H, A = AlphabetSpec.harmonic(), AlphabetSpec.alternating()


def test_word_weight():
    assert word_weight(W(2, 1, 1)) == 4
    assert word_weight(W(1)) == 1
    assert word_weight((Letter(2, 1, 1, -1), Letter(1, 0, 2, 1))) == 3


class TestEnumerate:
    def test_examples(self):
        assert enumerate_words(H, 2) == [W(1, 1), W(2)]
        assert len(enumerate_words(H, 4)) == 8
        # 2 * 3^(d-1) with d = 3
        assert len(enumerate_words(A, 3)) == 18

    @pytest.mark.parametrize("spec", [H, A, AlphabetSpec.cyclotomic(1, 2), AlphabetSpec.cyclotomic(3)])
    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_matches_brute_force(self, spec, d):
        words = enumerate_words(spec, d)
        assert len(words) == len(set(words))
        assert set(words) == all_words(spec, d)

    @pytest.mark.parametrize("d", range(1, 8))
    def test_counts(self, d):
        assert len(enumerate_words(H, d)) == 2 ** (d - 1)
        assert len(enumerate_words(A, d)) == 2 * 3 ** (d - 1)

    def test_default_order_deterministic(self):
        assert enumerate_words(A, 4) == enumerate_words(A, 4, WordOrder())

    def test_explicit_order(self):
        order = paper_fixture_order()
        words = enumerate_words(H, 4, order)
        assert words[0] == W(1, 1, 1, 1) and words[-1] == W(4)
        assert set(words) == set(enumerate_words(H, 4))
        # other weights fall back to the default order
        assert enumerate_words(H, 3, order) == enumerate_words(H, 3)

    def test_explicit_mismatch(self):
        order = WordOrder.from_lists({2: [W(2)]})
        with pytest.raises(ExplicitOrderMismatch):
            enumerate_words(H, 2, order)
        with pytest.raises(ExplicitOrderMismatch):
            enumerate_words(H, 2, WordOrder.from_lists({2: [W(2), W(2)]}))


class TestSumExpr:
    def test_weight(self):
        assert expr_weight(S(1) * S(2, 1)) == 4
        assert expr_weight(SumExpr.const(RatFunc(5, PolyN.linear(1, 1)))) == 0
        assert expr_weight(S(1) ** 4) == 4

    def test_ring_laws(self):
        a, b, c = S(1) + 2, S(2) - S(1, 1), S(-1) * 3
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == SumExpr()
        assert (a ** 3) == a * a * a

    def test_zero_coefficients_dropped(self):
        e = S(1) + S(2) - S(1)
        assert len(e.terms) == 1

    def test_x_coefficient(self):
        x = SumExpr.const(CoefElem(0, 1))
        assert x * x == SumExpr.const(1)

    def test_hash_consistent(self):
        assert hash(S(1) * S(2)) == hash(S(2) * S(1))
