from fractions import Fraction as F
from random import Random

import pytest
from hypothesis import given, strategies as st

from generators import random_certified_knot, random_sequence_point

from polyknot import (
    CoefficientTable,
    PolynomialKnot,
    SequencePoint,
    embed_linear,
    evaluate,
    extend_from_dim,
    make_knot,
    project_linear,
    truncate_to_dim,
)
from polyknot.core import Certified, Uncertified
from polyknot.errors import (
    EmptyTable,
    IndexOutOfDimension,
    NotCertified,
    SupportExceedsDim,
    ZeroVector,
)


class TestMakeKnot:
    def test_simple_line(self):
        knot = make_knot(3, {(1, 1): 1})
        assert knot.dimension == 3
        assert knot.verdict == Uncertified()
        assert knot.table.get(1, 1) == 1

    def test_empty_raises(self):
        with pytest.raises(EmptyTable):
            make_knot(1, {})
        with pytest.raises(EmptyTable):
            make_knot(1, {(1, 1): 0})

    def test_out_of_dimension(self):
        with pytest.raises(IndexOutOfDimension):
            make_knot(2, {(3, 1): 1})

    def test_rational_normalization(self):
        knot = make_knot(2, {(1, 1): F(2, 4)})
        value = knot.table.get(1, 1)
        assert value == F(1, 2)
        assert value.numerator == 1 and value.denominator == 2

    def test_zero_entries_dropped(self):
        knot = make_knot(2, {(1, 1): 1, (2, 3): 0})
        assert (2, 3) not in knot.table.support()

    def test_normalization_idempotent(self):
        knot = make_knot(2, {(1, 1): F(2, 4), (2, 2): F(-6, 3)})
        again = make_knot(2, dict(knot.table.entries))
        assert knot == again and dict(knot.table.entries) == dict(again.table.entries)


class TestEvaluate:
    def test_identity_component(self):
        knot = make_knot(3, {(1, 1): 1})
        assert evaluate(knot, F(5)) == [5, 0, 0]

    def test_cubic(self):
        knot = make_knot(2, {(1, 3): 1, (1, 1): 1})
        assert evaluate(knot, F(2)) == [10, 0]

    def test_trefoil_at_zero(self, trefoil_knot):
        assert evaluate(trefoil_knot, F(0)) == [0, 0, 0]

    @given(st.fractions(min_value=-3, max_value=3, max_denominator=8))
    def test_horner_matches_naive_sum(self, t):
        knot = make_knot(2, {(1, 3): F(2), (1, 1): F(-1, 2), (2, 0): F(3),
                             (2, 4): F(1, 3)})
        naive = [2 * t ** 3 - F(1, 2) * t, 3 + F(1, 3) * t ** 4]
        assert evaluate(knot, t) == naive


class TestProjectAndEmbed:
    def test_project_reads_degree_one_row(self):
        knot = make_knot(2, {(1, 3): 1, (1, 1): 2, (2, 1): 5}).with_verdict(Certified())
        assert dict(project_linear(knot).entries) == {1: F(2), 2: F(5)}

    def test_project_requires_certification(self):
        knot = make_knot(2, {(1, 1): 1})
        with pytest.raises(NotCertified):
            project_linear(knot)

    def test_embed_linear_examples(self):
        knot = embed_linear(SequencePoint({1: 2, 2: 5}))
        assert knot.dimension == 2
        assert knot.verdict == Certified()
        assert dict(knot.table.entries) == {(1, 1): F(2), (2, 1): F(5)}
        single = embed_linear(SequencePoint({1: 1}))
        assert single.dimension == 1
        tail = embed_linear(SequencePoint({4: 1}))
        assert tail.dimension == 4
        assert dict(tail.table.entries) == {(4, 1): F(1)}

    def test_embed_table_is_linear_only(self):
        knot = embed_linear(SequencePoint({2: 3, 5: -1}))
        assert all(j == 1 for (_, j) in knot.table.support())
        assert knot.dimension == 5

    def test_projection_embedding_identity_on_sequences(self):
        rng = Random(11)
        for _ in range(200):
            x = random_sequence_point(rng)
            assert project_linear(embed_linear(x)) == x

    def test_projection_of_certified_knots_is_valid(self):
        rng = Random(13)
        for _ in range(25):
            knot = random_certified_knot(rng, max_dim=3, max_degree=4)
            seq = project_linear(knot)
            assert len(seq.entries) >= 1


class TestTruncateExtend:
    def test_truncate(self):
        x = SequencePoint({1: 3, 3: 4})
        assert truncate_to_dim(x, 3) == (F(3), F(0), F(4))
        assert truncate_to_dim(SequencePoint({1: 1}), 1) == (F(1),)

    def test_truncate_support_check(self):
        with pytest.raises(SupportExceedsDim):
            truncate_to_dim(SequencePoint({4: 1}), 3)

    def test_extend(self):
        assert dict(extend_from_dim([0, 7]).entries) == {2: F(7)}
        assert dict(extend_from_dim([1, 1, 1]).entries) == {1: F(1), 2: F(1), 3: F(1)}

    def test_extend_zero_vector(self):
        with pytest.raises(ZeroVector):
            extend_from_dim([0, 0, 0])

    def test_round_trips(self):
        rng = Random(7)
        for _ in range(100):
            x = random_sequence_point(rng)
            n = x.max_index() + rng.randint(0, 2)
            assert extend_from_dim(truncate_to_dim(x, n)) == x
        for _ in range(100):
            n = rng.randint(1, 5)
            y = tuple(F(rng.randint(-5, 5)) for _ in range(n))
            if all(v == 0 for v in y):
                continue
            assert truncate_to_dim(extend_from_dim(y), n) == y


class TestSequencePoint:
    def test_zero_excluded(self):
        with pytest.raises(ZeroVector):
            SequencePoint({})
        with pytest.raises(ZeroVector):
            SequencePoint({1: 0, 2: 0})

    def test_equality_is_structural(self):
        assert SequencePoint({1: F(1, 2)}) == SequencePoint({1: F(2, 4), 2: 0})


class TestImmutability:
    def test_knot_is_frozen(self):
        knot = make_knot(1, {(1, 1): 1})
        with pytest.raises(AttributeError):
            knot.dimension = 2
        with pytest.raises(AttributeError):
            knot.table = CoefficientTable({})

    def test_knot_equality_ignores_verdict_and_dimension(self):
        a = make_knot(3, {(1, 1): 1})
        b = make_knot(1, {(1, 1): 1}).with_verdict(Certified())
        assert a == b
        assert a.dimension != b.dimension
