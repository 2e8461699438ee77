from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from polyknot import unipoly as up
from polyknot.errors import ZeroPolynomial


def poly(*coeffs):
    return up.normalize([F(c) for c in coeffs])


class TestArithmetic:
    def test_divmod_exact(self):
        p = poly(-1, 0, 0, 1)            # t^3 - 1
        q, r = up.divmod_exact(p, poly(-1, 1))
        assert q == poly(1, 1, 1) and r == []

    def test_gcd(self):
        a = up.mul(poly(-1, 1), poly(2, 1))
        b = up.mul(poly(-1, 1), poly(5, 3))
        assert up.gcd(a, b) == poly(-1, 1)

    def test_squarefree_part(self):
        p = up.mul(up.mul(poly(0, 1), poly(0, 1)), poly(-1, 1))
        sf = up.squarefree_part(p)
        assert up.degree(sf) == 2
        assert up.evaluate(sf, F(0)) == 0 and up.evaluate(sf, F(1)) == 0


class TestSturm:
    def test_chain_for_t2_minus_2_by_hand(self):
        # p = t^2 - 2, p' = 2t, -rem(p, p') = 2 (integer-primitive scaling
        # keeps signs): variations at -2: (+,-,+) = 2, at +2: (+,+,+) = 0
        chain = up.sturm_chain(poly(-2, 0, 1))
        assert [up.degree(c) for c in chain] == [2, 1, 0]
        assert up.variations_at(chain, F(-2)) == 2
        assert up.variations_at(chain, F(2)) == 0
        assert up.count_real_roots(poly(-2, 0, 1)) == 2

    def test_no_real_roots(self):
        assert up.count_real_roots(poly(1, 0, 1)) == 0          # t^2 + 1
        assert up.count_real_roots(poly(1, 0, 3)) == 0          # 3t^2 + 1
        assert up.isolate_real_roots(poly(1, 0, 3)) == []

    def test_zero_polynomial_raises(self):
        with pytest.raises(ZeroPolynomial):
            up.isolate_real_roots([])
        with pytest.raises(ZeroPolynomial):
            up.count_real_roots([])

    @given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=6),
                    min_size=1, max_size=5))
    def test_isolation_matches_numpy_root_count(self, roots):
        # independent oracle: build prod (t - r_k) and compare distinct-root
        # counts against the known construction
        p = [F(1)]
        for r in roots:
            p = up.mul(p, [-r, F(1)])
        intervals = up.isolate_real_roots(p)
        assert len(intervals) == len(set(roots))
        for r in set(roots):
            assert sum(1 for lo, hi in intervals if lo <= r <= hi) == 1

    def test_isolation_separates_close_roots(self):
        p = up.mul([-F(1, 1000), F(1)], [-F(1, 999), F(1)])
        ivs = up.isolate_real_roots(p)
        assert len(ivs) == 2

    def test_refinement_converges(self):
        p = poly(-2, 0, 1)
        iv = [i for i in up.isolate_real_roots(p) if i[0] >= 0][0]
        lo, hi = up.refine_root(p, iv, F(1, 10 ** 25))
        mid = float((lo + hi) / 2)
        assert abs(mid - np.sqrt(2)) < 1e-12

    def test_range_restriction(self):
        p = up.mul(up.mul(poly(F(-1, 2), 1), poly(-2, 1)), poly(3, 1))
        assert len(up.isolate_real_roots(p, F(0), F(1))) == 1
        assert len(up.isolate_real_roots(p, F(-10), F(10))) == 3
        pinned = up.isolate_real_roots(p, F(1, 2), F(3))
        assert (F(1, 2), F(1, 2)) in pinned

    def test_rational_root_recovery(self):
        p = up.mul(poly(F(-1, 2), 1), poly(1, 0, 1))
        iv = up.isolate_real_roots(p)[0]
        assert up.rational_root_in(p, iv) == F(1, 2)

    def test_cauchy_bound_dominates_roots(self):
        p = poly(-6, 11, -6, 1)  # roots 1, 2, 3
        b = up.cauchy_bound(p)
        assert b > 3


class TestHelpers:
    @given(st.fractions(min_value=0, max_value=10, max_denominator=50),
           st.fractions(min_value=0, max_value=10, max_denominator=50))
    def test_simplest_rational_between(self, a, b):
        lo, hi = min(a, b), max(a, b)
        r = up.simplest_rational_between(lo, hi)
        assert lo <= r <= hi

    def test_simplest_prefers_small_denominator(self):
        assert up.simplest_rational_between(F(3, 10), F(7, 10)) == F(1, 2)
        assert up.simplest_rational_between(F(1, 3), F(2, 3)) == F(1, 2)
