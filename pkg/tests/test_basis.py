import random
from fractions import Fraction

import pytest

from harmsum.alphabet import AlphabetSpec
from harmsum.basis import (
    MissingLowerTable, NotASubAlphabet, RelationMatrix, Row, WeightExceeded, basis_counts, build_relations,
    build_table, extend_alphabet, rank_only, reduce, reduced_sigma, rref, word_pairs,
)
from harmsum.quasishuffle import linearize
from harmsum.sequences import EvalContext, pole_bound, tau
from harmsum.syntax import parse_expr
from harmsum.words import SumExpr, S, W, enumerate_words, expr_weight, paper_fixture_order
from oracles import DirectEvaluator, lyndon_for, random_expr

H, A = AlphabetSpec.harmonic(), AlphabetSpec.alternating()
C1, C12 = AlphabetSpec.cyclotomic(1), AlphabetSpec.cyclotomic(1, 2)


@pytest.fixture(scope="module")
def h4():
    return build_table(H, 4, paper_fixture_order())


@pytest.fixture(scope="module")
def a4():
    return build_table(A, 4)


@pytest.fixture(scope="module")
def c12_3():
    return build_table(C12, 3)


class TestRelations:
    def test_weight_2_row(self):
        lower = build_table(H, 1)
        m = build_relations(H, 2, lower)
        assert m.columns == [W(1, 1), W(2)]
        assert len(m.rows) == 1
        assert m.dense() == [[2, -1]]
        assert m.rows[0].tail_expr == -S(1) ** 2

    def test_weight_4_pairs(self):
        pairs = list(word_pairs(H, 4))
        # {1,3}, {1,12}, {1,21}, {1,111}, {2,2}, {2,11}, {11,11}, {11,2} merged with {2,11}
        assert len(pairs) == 7
        assert len({frozenset(p) if p[0] != p[1] else p for p in pairs}) == 7

    def test_weight_4_s1_s3_row(self, h4):
        lower = build_table(H, 3)
        m = build_relations(H, 4, lower, paper_fixture_order())
        row = next(r for r in m.rows if r.tail_expr == -S(1) * S(3))
        cols = {m.columns[j]: c for j, c in row.coeffs.items()}
        assert cols == {W(1, 3): 1, W(3, 1): 1, W(4): -1}

    def test_missing_lower(self):
        with pytest.raises(MissingLowerTable):
            build_relations(H, 4, build_table(H, 2))

    def test_rows_are_relations(self):
        lower = build_table(A, 2)
        m = build_relations(A, 3, lower)
        for i in range(len(m.rows)):
            assert linearize(m.relation(i)).is_zero()


class TestRref:
    def test_scaling(self):
        m = RelationMatrix([W(1, 1), W(2)], [Row({0: Fraction(2), 1: Fraction(-1)}, {(W(1), W(1)): Fraction(-1)})], 2)
        r = rref(m)
        assert r.dense() == [[1, Fraction(-1, 2)]]
        assert r.rows[0].tail == {(W(1), W(1)): Fraction(-1, 2)}

    def test_empty(self):
        assert rref(RelationMatrix([], [], 1)).rows == []

    def test_reduced_form(self):
        red = rref(build_relations(A, 3, build_table(A, 2)))
        piv = red.pivots
        assert piv == sorted(piv)
        for r, p in zip(red.rows, piv):
            assert r.coeffs[p] == 1
            for other in piv:
                if other != p:
                    assert other not in r.coeffs

    def test_row_order_invariant(self):
        m = build_relations(A, 3, build_table(A, 2))
        rng = random.Random(30)
        shuffled = RelationMatrix(m.columns, rng.sample(m.rows, len(m.rows)), m.weight)
        a, b = rref(m), rref(shuffled)
        assert a.dense() == b.dense()
        assert [r.tail for r in a.rows] == [r.tail for r in b.rows]

    def test_rank_only_agrees(self):
        m = build_relations(A, 4, build_table(A, 3))
        rank, piv = rank_only(m)
        assert rank == len(rref(m).rows) and piv == rref(m).pivots


class TestClassicalHarmonicExample:
    def test_bases(self, h4):
        assert h4.basis == {1: [W(1)], 2: [W(2)], 3: [W(2, 1), W(3)], 4: [W(2, 1, 1), W(3, 1), W(4)]}

    def test_rules(self, h4):
        expected = {
            W(1, 1): "1/2*S[1]^2 + 1/2*S[2]",
            W(1, 2): "-S[2,1] + S[1]*S[2] + S[3]",
            W(1, 1, 1): "1/6*S[1]^3 + 1/2*S[1]*S[2] + 1/3*S[3]",
            W(1, 1, 1, 1): "S[4]/4 + 1/24*S[1]^4 + 1/4*S[2]*S[1]^2 + 1/3*S[3]*S[1] + 1/8*S[2]^2",
            W(1, 1, 2): "S[2,1,1] - S[3,1] + S[4]/2 - S[1]*(S[2,1] - S[3]) + 1/2*S[1]^2*S[2]",
            W(1, 2, 1): "-2*S[2,1,1] + S[3,1] + S[4]/2 + 1/2*S[2]^2 + S[1]*S[2,1]",
            W(2, 2): "S[4]/2 + 1/2*S[2]^2",
            W(1, 3): "-S[3,1] + S[4] + S[1]*S[3]",
        }
        assert {w: parse_expr(t) for w, t in expected.items()} == h4.rules

    def test_report(self, h4):
        assert h4.report.lines()[3] == "weight 4: words 8, rank 5, basis 3"


class TestTables:
    @pytest.mark.parametrize("table_name", ["h4", "a4", "c12_3"])
    def test_rules_sound(self, table_name, request):
        table = request.getfixturevalue(table_name)
        for w, rhs in table.rules.items():
            assert linearize(SumExpr.word(w) - rhs).is_zero()
            assert rhs.words() <= table.basis_words()
            assert expr_weight(rhs) <= sum(l.c for l in w)

    def test_counts_match_lyndon(self):
        for spec, d in ((H, 6), (A, 5), (C12, 3), (AlphabetSpec.cyclotomic(3), 3)):
            assert basis_counts(spec, d).basis == lyndon_for(spec, d)

    def test_counts_full_pipeline(self, a4, c12_3):
        assert a4.report.basis == lyndon_for(A, 4)
        assert c12_3.report.basis == lyndon_for(C12, 3)

    def test_triple_products_no_new_rank(self):
        for d in range(3, 6):
            pairs, _ = rank_only(build_relations(H, d, None))
            both = build_relations(H, d, None)
            both.rows += build_relations(H, d, None, products=3).rows
            assert rank_only(both)[0] == pairs

    def test_default_order_deterministic(self):
        assert build_table(A, 3) == build_table(A, 3)


class TestReduce:
    def test_examples(self, h4):
        assert reduce(S(1, 1), h4) == parse_expr("1/2*S[1]^2 + 1/2*S[2]")
        assert reduce(S(2, 1), h4) == S(2, 1)
        assert reduce(S(1) ** 4, h4) == S(1) ** 4
        assert reduce(linearize(S(1) ** 4), h4) == S(1) ** 4

    def test_weight_exceeded(self, h4):
        with pytest.raises(WeightExceeded):
            reduce(S(1, 1, 1, 1, 1), h4)
        with pytest.raises(WeightExceeded):
            reduce(S(1) * S(2, 2), h4)

    def test_idempotent_and_basis_only(self, a4):
        rng = random.Random(31)
        for _ in range(30):
            e = random_expr(rng, A, 4)
            r = reduce(e, a4)
            assert reduce(r, a4) == r
            assert r.words() <= a4.basis_words()

    def test_reduced_sigma(self, h4):
        e = reduce(S(1, 1), h4)
        got = reduced_sigma(e, 1, h4)
        assert got == parse_expr("1/2*(S[1] + 1/(n+1))^2 + 1/2*(S[2] + 1/(n+1)^2)")
        ev = DirectEvaluator()
        for n in range(61):
            assert ev.expr(got, n) == ev.expr(S(1, 1), n + 1)
        assert reduced_sigma(S(2), 1, h4) == parse_expr("S[2] + 1/(n+1)^2")

    def test_reduce_sound_alternating(self, a4):
        rng = random.Random(32)
        ctx = EvalContext()
        for _ in range(20):
            e = random_expr(rng, A, 4)
            start = pole_bound(e)
            assert tau(e, start, 20, ctx).values == tau(reduce(e, a4), start, 20, ctx).values


class TestExtend:
    def test_harmonic_to_alternating(self):
        small = build_table(H, 2)
        big = extend_alphabet(small, A)
        assert set(small.basis[2]) <= set(big.basis[2])
        assert len(big.basis[2]) == 3
        assert all(big.rules[w] == r for w, r in small.rules.items())

    def test_identity(self, a4):
        assert extend_alphabet(a4, A) == a4

    def test_weight_1(self):
        big = extend_alphabet(build_table(C1, 1), C12)
        assert set(big.basis[1]) == {(l,) for l in C12.letters(1)}
        assert not big.rules

    def test_not_subset(self):
        with pytest.raises(NotASubAlphabet):
            extend_alphabet(build_table(C12, 1), A)


def test_threaded_rows_match_sequential(monkeypatch):
    lower = build_table(A, 3)
    seq = build_relations(A, 4, lower)
    monkeypatch.setenv("HARMSUM_THREADS", "4")
    par = build_relations(A, 4, lower)
    assert par.dense() == seq.dense()
    assert [r.tail for r in par.rows] == [r.tail for r in seq.rows]
    assert build_table(A, 4) == build_table(A, 4)
