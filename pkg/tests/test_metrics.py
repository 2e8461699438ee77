import math
from fractions import Fraction as F
from random import Random

import pytest

from generators import random_candidate, random_sequence_point

from polyknot import (
    BallSpec,
    Membership,
    MetricTag,
    SequencePoint,
    ball_contains,
    ball_contains_tri,
    distance,
    embed_linear,
    make_knot,
    norm_monotonicity_check,
    project_linear,
    seq_distance,
)
from polyknot.core import Certified
from polyknot.errors import BadExponents, NegativeInput, PrecisionExhausted, SpaceMismatch
from polyknot.metrics import Space
from polyknot.scalars import Enclosure, lower_bound, upper_bound

TOL = F(1, 10 ** 12)


def _within(value, target, tol=TOL):
    return lower_bound(value) <= target + tol and upper_bound(value) >= target - tol


class TestDistanceExamples:
    def test_sup_distance_paper_pair(self):
        phi = make_knot(2, {(1, 1): 1})
        psi = make_knot(2, {(1, 3): 1, (1, 1): 1})
        assert distance(phi, psi, MetricTag.sup()) == 1

    def test_self_distance_zero(self):
        phi = make_knot(2, {(1, 1): 1, (2, 3): F(1, 7)})
        for tag in (MetricTag.sup(), MetricTag.lp(1), MetricTag.lp(2),
                    MetricTag.lp(F(5, 2))):
            assert distance(phi, phi, tag) == 0

    def test_sqrt5_pair(self):
        # (t+1, t^3+2) vs (t, t^3): diffs 1 and 2, d_2 = sqrt(5)
        a = make_knot(2, {(1, 1): 1, (1, 0): 1, (2, 3): 1, (2, 0): 2})
        b = make_knot(2, {(1, 1): 1, (2, 3): 1})
        d = distance(a, b, MetricTag.lp(2))
        assert lower_bound(d) ** 2 <= 5 <= upper_bound(d) ** 2
        assert _within(d, F(math.isqrt(5 * 10 ** 28), 10 ** 14), F(1, 10 ** 10))

    def test_rational_exponent_matches_float_oracle(self):
        a = make_knot(2, {(1, 1): 1, (1, 0): 1, (2, 3): 1, (2, 0): 2})
        b = make_knot(2, {(1, 1): 1, (2, 3): 1})
        d = distance(a, b, MetricTag.lp(F(5, 2)))
        oracle = (1.0 + 2.0 ** 2.5) ** 0.4
        assert abs(float(d.mid_fraction()) - oracle) < 1e-12

    def test_perfect_power_stays_exact(self):
        a = make_knot(1, {(1, 1): 3, (1, 2): 4})
        # diffs 3 and 4: sum of squares 25, an exact perfect square
        b = make_knot(1, {(1, 1): 6, (1, 2): 8})
        assert distance(a, b, MetricTag.lp(2)) == 5
        # diffs 3, 4, 1: sum 26 has no rational square root
        c = make_knot(1, {(1, 1): 6, (1, 2): 8, (1, 5): 1})
        d = distance(a, c, MetricTag.lp(2))
        assert not isinstance(d, F)
        assert lower_bound(d) ** 2 <= 26 <= upper_bound(d) ** 2

    def test_single_difference_exact_for_any_exponent(self):
        a = make_knot(1, {(1, 1): 1})
        b = make_knot(1, {(1, 1): 1, (1, 9): F(4, 10)})
        for tag in (MetricTag.lp(1), MetricTag.lp(2), MetricTag.lp(F(7, 3))):
            assert distance(a, b, tag) == F(2, 5)


class TestSeqDistance:
    def test_basis_vectors(self):
        e1, e2 = SequencePoint({1: 1}), SequencePoint({2: 1})
        assert seq_distance(e1, e2, MetricTag.sup()) == 1

    def test_l1_case(self):
        assert seq_distance(SequencePoint({1: 2, 2: 4}),
                            SequencePoint({1: 2}), MetricTag.lp(1)) == 4

    def test_pythagorean(self):
        d = seq_distance(SequencePoint({1: 3, 2: 4}),
                         SequencePoint({3: F(1, 100)}), MetricTag.lp(2))
        # diffs 3, 4, 1/100: independent float oracle
        oracle = math.sqrt(9 + 16 + 1e-4)
        assert abs(float(d.mid_fraction()) - oracle) < 1e-12


class TestMetricAxioms:
    def test_axioms_on_random_pairs(self):
        rng = Random(41)
        tags = [MetricTag.sup(), MetricTag.lp(1), MetricTag.lp(2)]
        for _ in range(40):
            a = random_candidate(rng, max_dim=3, max_degree=5)
            b = random_candidate(rng, max_dim=3, max_degree=5)
            c = random_candidate(rng, max_dim=3, max_degree=5)
            for tag in tags:
                dab, dba = distance(a, b, tag), distance(b, a, tag)
                assert dab == dba
                assert (distance(a, a, tag) == 0)
                if dict(a.table.entries) != dict(b.table.entries):
                    assert lower_bound(dab) >= 0 and upper_bound(dab) > 0
                dac = distance(a, c, tag)
                dcb = distance(c, b, tag)
                assert lower_bound(dab) <= upper_bound(dac) + upper_bound(dcb) + TOL

    def test_chain_inequality(self):
        rng = Random(42)
        for _ in range(40):
            a = random_candidate(rng, max_dim=3, max_degree=5)
            b = random_candidate(rng, max_dim=3, max_degree=5)
            d_inf = distance(a, b, MetricTag.sup())
            d2 = distance(a, b, MetricTag.lp(2))
            d32 = distance(a, b, MetricTag.lp(F(3, 2)))
            d1 = distance(a, b, MetricTag.lp(1))
            chain = [d_inf, d2, d32, d1]
            for lo, hi in zip(chain, chain[1:]):
                assert lower_bound(lo) <= upper_bound(hi) + TOL


class TestLipschitz:
    def test_projection_contracts(self):
        rng = Random(43)
        for _ in range(30):
            a = random_candidate(rng, max_dim=3, max_degree=4)
            b = random_candidate(rng, max_dim=3, max_degree=4)
            aw = a.with_verdict(Certified())
            bw = b.with_verdict(Certified())
            try:
                fa, fb = project_linear(aw), project_linear(bw)
            except Exception:
                continue
            for tag in (MetricTag.lp(1), MetricTag.lp(2), MetricTag.sup()):
                assert lower_bound(seq_distance(fa, fb, tag)) <= \
                    upper_bound(distance(a, b, tag)) + TOL

    def test_embedding_is_isometric_on_linear_rows(self):
        rng = Random(44)
        for _ in range(30):
            x = random_sequence_point(rng)
            y = random_sequence_point(rng)
            gx, gy = embed_linear(x), embed_linear(y)
            for tag in (MetricTag.lp(1), MetricTag.lp(2), MetricTag.sup()):
                assert distance(gx, gy, tag) == seq_distance(x, y, tag)


class TestNormMonotonicity:
    def test_three_four(self):
        lhs, rhs, holds = norm_monotonicity_check([F(3), F(4)], 2, 1)
        assert holds and lhs == 5 and rhs == 7

    def test_single_element_equality(self):
        lhs, rhs, holds = norm_monotonicity_check([F(5)], F(7, 2), F(3, 2))
        assert holds and lhs == rhs == 5

    def test_all_ones(self):
        lhs, rhs, holds = norm_monotonicity_check([F(1)] * 9, 2, 1)
        assert holds and rhs == 9
        assert lower_bound(lhs) ** 2 <= 9 <= upper_bound(lhs) ** 2

    def test_bad_exponents(self):
        with pytest.raises(BadExponents):
            norm_monotonicity_check([F(1)], 1, 2)
        with pytest.raises(BadExponents):
            norm_monotonicity_check([F(1)], F(1, 2), F(1, 2))

    def test_negative_input(self):
        with pytest.raises(NegativeInput):
            norm_monotonicity_check([F(-1)], 2, 1)


class TestBalls:
    def test_paper_examples(self):
        phi = make_knot(2, {(1, 1): 1})
        psi = make_knot(2, {(1, 3): 1, (1, 1): 1})
        ball = BallSpec(phi, F(1, 2), MetricTag.sup(), Space.KNOTS_N, n=2)
        assert not ball_contains(ball, psi)
        assert ball_contains(ball, phi)

    def test_interval_coefficient_membership(self):
        # omega-style: d_inf = k^(-1/r) < delta for k > delta^(-r)
        phi = make_knot(2, {(1, 1): 1})
        c = Enclosure.from_fraction(12).pow_frac(F(-1, 2))
        omega = make_knot(2, {(1, 1): 1, (1, 3): c, (1, 5): c, (1, 7): c})
        ball = BallSpec(phi, F(3, 10), MetricTag.sup(), Space.KNOTS_N, n=2)
        assert ball_contains(ball, omega)

    def test_space_mismatch(self):
        phi = make_knot(2, {(1, 1): 1})
        ball = BallSpec(phi, F(1), MetricTag.sup(), Space.KNOTS)
        with pytest.raises(SpaceMismatch):
            ball_contains(ball, SequencePoint({1: 1}))
        off_axis = make_knot(2, {(2, 1): 1})
        with pytest.raises(SpaceMismatch):
            BallSpec(off_axis, F(1), MetricTag.sup(), Space.KNOTS_N, n=1)
        wide = make_knot(3, {(3, 1): 1})
        nball = BallSpec(phi, F(1), MetricTag.sup(), Space.KNOTS_N, n=2)
        with pytest.raises(SpaceMismatch):
            ball_contains(nball, wide)

    def test_boundary_is_out_exactly(self):
        phi = make_knot(1, {(1, 1): 1})
        psi = make_knot(1, {(1, 1): 2})
        ball = BallSpec(phi, F(1), MetricTag.sup(), Space.KNOTS)
        assert ball_contains_tri(ball, psi) is Membership.OUT

    def test_undecidable_when_widths_dominate(self):
        phi = make_knot(1, {(1, 1): 1})
        sqrt2 = Enclosure.from_fraction(2).pow_frac(F(1, 2))
        psi = make_knot(1, {(1, 1): sqrt2 + 1})
        ball = BallSpec(phi, sqrt2, MetricTag.sup(), Space.KNOTS)
        assert ball_contains_tri(ball, psi) is Membership.UNDECIDABLE
        with pytest.raises(PrecisionExhausted):
            ball_contains(ball, psi)
