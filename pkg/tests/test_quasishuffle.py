import itertools
import random
from fractions import Fraction

import pytest

from harmsum.alphabet import AlphabetSpec, Letter
from harmsum.quasishuffle import linearize, shuffle, shuffle_combo, shuffle_words
from harmsum.syntax import parse_expr
from harmsum.words import SumExpr, S, W, enumerate_words
from oracles import delannoy_free_count, direct_sum, random_word

H, A, C12 = AlphabetSpec.harmonic(), AlphabetSpec.alternating(), AlphabetSpec.cyclotomic(1, 2)


def words_upto(spec, d):
    return [w for k in range(1, d + 1) for w in enumerate_words(spec, k)]


class TestShuffle:
    def test_examples(self):
        assert shuffle(W(1), W(1)) == {W(1, 1): 2, W(2): -1}
        assert shuffle((), W(2, 1)) == {W(2, 1): 1}
        assert shuffle(W(1), W(2)) == {W(1, 2): 1, W(2, 1): 1, W(3): -1}

    @pytest.mark.parametrize("spec,d", [(H, 4), (A, 3), (C12, 2)])
    def test_commutative_exhaustive(self, spec, d):
        ws = words_upto(spec, d)
        for u, v in itertools.product(ws, repeat=2):
            assert shuffle(u, v) == shuffle(v, u)

    def test_associative_exhaustive_small(self):
        ws = words_upto(A, 2)
        for u, v, w in itertools.product(ws, repeat=3):
            assert shuffle_combo(shuffle(u, v), w) == shuffle_combo(shuffle(v, w), u)

    def test_associative_random_large(self):
        rng = random.Random(7)
        for spec in (A, C12):
            for _ in range(30):
                u, v, w = (random_word(rng, spec, 3) for _ in range(3))
                assert shuffle_combo(shuffle(u, v), w) == shuffle_combo(shuffle(v, w), u)

    def test_evaluates_to_product(self):
        """The product of two sums equals the sum over the quasi-shuffle."""
        rng = random.Random(8)
        for spec in (H, A, C12):
            for _ in range(15):
                u, v = random_word(rng, spec, 3), random_word(rng, spec, 3)
                for n in (1, 4, 7):
                    lhs = direct_sum(u, n) * direct_sum(v, n)
                    rhs = sum(c * direct_sum(w, n) for w, c in shuffle(u, v).items())
                    assert lhs == rhs

    def test_distinct_letters_term_count(self):
        # letters with distinct bases still bracket; with H letters of distinct
        # degrees all brackets are distinct, giving Delannoy-many terms
        u, v = W(1, 2), W(3, 4, 5)
        assert len(shuffle(u, v)) == delannoy_free_count(2, 3)

    def test_weight_graded_top_part(self):
        rng = random.Random(9)
        for _ in range(20):
            u, v = random_word(rng, C12, 3), random_word(rng, C12, 3)
            d = sum(l.c for l in u + v)
            assert all(sum(l.c for l in w) <= d for w in shuffle(u, v))

    def test_shuffle_words(self):
        assert shuffle_words([]) == {(): 1}
        assert shuffle_words([W(1), W(1)]) == shuffle(W(1), W(1))


class TestLinearize:
    def test_s1_fourth(self):
        expected = parse_expr(
            "4*S[1,3] + 6*S[2,2] + 4*S[3,1] - 12*S[1,1,2] - 12*S[1,2,1] - 12*S[2,1,1] + 24*S[1,1,1,1] - S[4]")
        assert linearize(S(1) ** 4) == expected

    def test_s11_squared(self):
        expected = parse_expr("S[2,2] - 2*S[1,1,2] - 2*S[1,2,1] - 2*S[2,1,1] + 6*S[1,1,1,1]")
        assert linearize(S(1, 1) ** 2) == expected

    def test_linear_unchanged(self):
        e = parse_expr("3/(n+1)*S[2]")
        assert linearize(e) == e

    def test_multiplicative_mod_linearize(self):
        rng = random.Random(10)
        for _ in range(20):
            a = SumExpr.word(random_word(rng, A, 2)) * SumExpr.word(random_word(rng, A, 2))
            b = SumExpr.word(random_word(rng, A, 2)) + 1
            assert linearize(a * b) == linearize(linearize(a) * b)
