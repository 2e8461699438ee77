from fractions import Fraction as F
from random import Random

import pytest

from generators import (
    acceptance_candidate,
    planted_derivative_zero,
    planted_even,
    random_candidate,
    random_certified_knot,
)

from polyknot import bipoly as bp
from polyknot import unipoly as up
from polyknot.core import Certified, Inconclusive, Refuted, make_knot
from polyknot.certifier import (
    certify_embedding,
    certify_knot,
    derivative_values,
    difference_quotients,
    sampling_oracle,
    sturm_real_roots,
    verify_refutation,
)
from polyknot.errors import EmptyTable, ZeroPolynomial


class TestDifferenceQuotients:
    def test_linear_component_is_constant_one(self):
        q = difference_quotients(make_knot(1, {(1, 1): 1}))[0]
        assert q.sym == {(0, 0): F(1)}

    def test_square_gives_e1(self):
        q = difference_quotients(make_knot(1, {(1, 2): 1}))[0]
        assert q.sym == {(1, 0): F(1)}

    def test_cubic_plus_t(self):
        # (s^3 - t^3)/(s - t) + 1 = s^2 + st + t^2 + 1 = e1^2 - e2 + 1
        q = difference_quotients(make_knot(1, {(1, 3): 1, (1, 1): 1}))[0]
        assert q.sym == {(2, 0): F(1), (0, 1): F(-1), (0, 0): F(1)}

    def test_diagonal_equals_derivative(self):
        rng = Random(3)
        for _ in range(30):
            knot = random_candidate(rng, max_dim=3, max_degree=6)
            qs = difference_quotients(knot)
            for t in (F(0), F(1), F(-1, 2), F(7, 3)):
                derivs = derivative_values(knot, t)
                for q in qs:
                    assert q.diagonal(t) == derivs[q.component - 1]

    def test_empty_table_raises(self):
        knot = make_knot(1, {(1, 1): 1})
        object.__setattr__(knot.table, "entries", {})
        with pytest.raises(EmptyTable):
            difference_quotients(knot)


class TestSturmOp:
    def test_spec_examples(self):
        assert sturm_real_roots([F(1), F(0), F(1)]) == []            # t^2 + 1
        two = sturm_real_roots([F(-2), F(0), F(1)])                  # t^2 - 2
        assert len(two) == 2
        lo_iv, hi_iv = two
        assert lo_iv[1] <= 0 <= hi_iv[0]
        assert sturm_real_roots([F(1), F(0), F(3)]) == []            # 3t^2 + 1

    def test_zero_polynomial(self):
        with pytest.raises(ZeroPolynomial):
            sturm_real_roots([F(0)])


class TestCertifyExamples:
    def test_line_certified(self):
        cert = certify_embedding(make_knot(3, {(1, 1): 1}))
        assert isinstance(cert.verdict, Certified)

    def test_cubic_plus_t_certified(self):
        cert = certify_embedding(make_knot(2, {(1, 3): 1, (1, 1): 1}))
        assert isinstance(cert.verdict, Certified)

    def test_square_refuted_with_symmetric_witness(self):
        cert = certify_embedding(make_knot(2, {(1, 2): 1}))
        assert isinstance(cert.verdict, Refuted)
        assert cert.witness == (F(-1), F(1))
        assert verify_refutation(make_knot(2, {(1, 2): 1}), cert.witness)

    def test_pure_cubic_refuted_at_zero(self):
        cert = certify_embedding(make_knot(2, {(1, 3): 1}))
        assert isinstance(cert.verdict, Refuted)
        assert cert.witness == (F(0), F(0))

    def test_trefoil_certified(self, trefoil_knot):
        assert isinstance(trefoil_knot.verdict, Certified)

    def test_constant_map_refuted(self):
        cert = certify_embedding(make_knot(2, {(1, 0): 3}))
        assert isinstance(cert.verdict, Refuted)
        s, t = cert.witness
        assert s != t

    def test_genuine_plane_collision(self):
        # phi = (t^3 - 3t, t^2): phi(sqrt(3)) = phi(-sqrt(3)) = (0, 3)
        knot = make_knot(2, {(1, 3): 1, (1, 1): -3, (2, 2): 1})
        cert = certify_embedding(knot)
        assert isinstance(cert.verdict, Refuted)
        assert verify_refutation(knot, cert.witness)

    def test_derivative_zero_plant(self):
        rng = Random(21)
        for _ in range(20):
            knot = planted_derivative_zero(rng)
            cert = certify_embedding(knot)
            assert isinstance(cert.verdict, Refuted)
            s, t = cert.witness
            assert s == t
            assert verify_refutation(knot, cert.witness)

    def test_even_symmetry_plant(self):
        rng = Random(22)
        for _ in range(20):
            knot = planted_even(rng)
            cert = certify_embedding(knot)
            assert isinstance(cert.verdict, Refuted)
            assert verify_refutation(knot, cert.witness)


class TestCertifierInvariants:
    def test_zero_component_append_invariance(self):
        rng = Random(31)
        for _ in range(30):
            knot = random_candidate(rng, max_dim=2, max_degree=4)
            wide = make_knot(knot.dimension + 2, dict(knot.table.entries))
            a = certify_embedding(knot)
            b = certify_embedding(wide)
            assert type(a.verdict) is type(b.verdict)

    def test_scaling_invariance(self):
        rng = Random(32)
        for _ in range(30):
            knot = random_candidate(rng, max_dim=2, max_degree=4)
            c = F(rng.choice([-3, -1, 2, 5]), rng.choice([1, 2]))
            scaled = make_knot(knot.dimension,
                               {k: c * v for k, v in knot.table.entries.items()})
            a = certify_embedding(knot)
            b = certify_embedding(scaled)
            assert type(a.verdict) is type(b.verdict)

    def test_refutations_reverify(self):
        rng = Random(33)
        checked = 0
        for _ in range(60):
            knot, _ = acceptance_candidate(rng)
            cert = certify_embedding(knot)
            if isinstance(cert.verdict, Refuted):
                assert verify_refutation(knot, cert.witness)
                checked += 1
        assert checked >= 15

    def test_certified_knots_never_fail_oracle(self):
        rng = Random(34)
        for _ in range(15):
            knot = random_certified_knot(rng, max_dim=3, max_degree=5)
            for resolution in (31, 101):
                outcome = sampling_oracle(knot, resolution=resolution)
                assert not outcome.failure_found


class TestOracle:
    def test_square_refuted_by_symmetric_grid(self):
        outcome = sampling_oracle(make_knot(2, {(1, 2): 1}), bound=2.0,
                                  resolution=101)
        assert outcome.failure_found
        s, t = outcome.witness
        assert s == -t and s != t

    def test_line_clean(self):
        assert not sampling_oracle(make_knot(2, {(1, 1): 1})).failure_found

    def test_requires_two_points(self):
        with pytest.raises(ValueError):
            sampling_oracle(make_knot(1, {(1, 1): 1}), resolution=1)


class TestOracleAgreement:
    def test_small_mixed_batch(self):
        rng = Random(35)
        inconclusive = 0
        for _ in range(60):
            knot, _ = acceptance_candidate(rng)
            cert = certify_embedding(knot)
            outcome = sampling_oracle(knot)
            if outcome.failure_found:
                assert isinstance(cert.verdict, Refuted)
            if isinstance(cert.verdict, Certified):
                assert not outcome.failure_found
            if isinstance(cert.verdict, Inconclusive):
                inconclusive += 1
        assert inconclusive <= 3


class TestIntervalCoefficients:
    def test_interval_monotone_family(self):
        from polyknot.scalars import Enclosure

        # omega-shaped knot: c * (t^3 + t^5) + t with c an enclosure
        c = Enclosure.from_fraction(5).pow_frac(F(-1, 2))
        knot = make_knot(2, {(1, 1): 1, (1, 3): c, (1, 5): c})
        cert = certify_embedding(knot)
        assert isinstance(cert.verdict, Certified)

    def test_ambiguous_interval_is_inconclusive(self):
        from polyknot.scalars import Enclosure

        wobble = Enclosure.from_endpoints(F(-1, 10), F(1, 10))
        knot = make_knot(1, {(1, 1): wobble, (1, 3): wobble})
        cert = certify_embedding(knot)
        assert isinstance(cert.verdict, Inconclusive)

    def test_certify_knot_helper(self):
        knot = certify_knot(make_knot(1, {(1, 3): 1, (1, 1): 1}))
        assert isinstance(knot.verdict, Certified)
