"""Finitely-representable open regions and constructive topology witnesses.

Basic opens of the product topology constrain finitely many coefficients;
basic opens of the box topology may constrain all of them, which stays
decidable for finite-support points because the default rules here admit 0
at all but finitely many indices.  The witness constructors return the
explicit radii / box specifications used to compare the five topologies,
and the strictness families produce the knots showing each inclusion is
proper, with every membership claim checkable in certified arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from types import MappingProxyType
from typing import Union

from .certifier import certify_embedding
from .core import (
    Certified,
    CoefficientTable,
    Index,
    PolynomialKnot,
    SequencePoint,
    make_knot,
)
from .errors import (
    BadExponents,
    NotMember,
    ParameterBoundViolated,
    PrecisionExhausted,
)
from .metrics import BallSpec, MetricTag, Membership, Space, ball_contains_tri, p_norm
from .scalars import (
    Enclosure,
    Scalar,
    is_exact,
    lower_bound,
    nth_root_exact,
    to_enclosure,
    upper_bound,
)


# ---------------------------------------------------------------------------
# open intervals and region specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OpenInterval:
    """Open interval with rational endpoints; None marks an unbounded side."""

    lo: Fraction | None
    hi: Fraction | None

    def __post_init__(self):
        lo = None if self.lo is None else Fraction(self.lo)
        hi = None if self.hi is None else Fraction(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if lo is not None and hi is not None and lo >= hi:
            raise ValueError(f"empty open interval ({lo}, {hi})")

    def contains(self, value: Scalar) -> bool:
        """Certified strict membership; raises when an enclosure straddles
        an endpoint."""
        if self.lo is not None:
            if upper_bound(value) <= self.lo:
                return False
            if lower_bound(value) <= self.lo:
                if is_exact(value):
                    return False
                raise PrecisionExhausted("interval membership undecidable")
        if self.hi is not None:
            if lower_bound(value) >= self.hi:
                return False
            if upper_bound(value) >= self.hi:
                if is_exact(value):
                    return False
                raise PrecisionExhausted("interval membership undecidable")
        return True

    def admits_zero(self) -> bool:
        return (self.lo is None or self.lo < 0) and (self.hi is None or self.hi > 0)


class AllReals:
    def interval_at(self, i: int, j: int) -> OpenInterval:
        return OpenInterval(None, None)

    def zero_excluding_indices(self):
        return ()

    def __repr__(self):
        return "AllReals()"

    def __eq__(self, other):
        return isinstance(other, AllReals)


@dataclass(frozen=True)
class SymmetricPowerRule:
    """Interval (base_ij - delta^(4i(j+1)), base_ij + delta^(4i(j+1))) at
    every index; the exponent grows fast enough that the total l^1 mass of
    the box is at most delta^2 (needs delta <= 1/2)."""

    delta: Fraction
    base: CoefficientTable

    def __post_init__(self):
        d = Fraction(self.delta)
        object.__setattr__(self, "delta", d)
        if not 0 < d <= Fraction(1, 2):
            raise ValueError("symmetric power rule needs delta in (0, 1/2]")

    def half_width(self, i: int, j: int) -> Fraction:
        return self.delta ** (4 * i * (j + 1))

    def interval_at(self, i: int, j: int) -> OpenInterval:
        c = self.base.get(i, j)
        w = self.half_width(i, j)
        if not is_exact(c):
            # conservative shrink: certified subset of the true interval
            return OpenInterval(upper_bound(c) - w, lower_bound(c) + w)
        return OpenInterval(c - w, c + w)

    def zero_excluding_indices(self):
        # only indices in the base support can push 0 out of the interval
        return tuple(self.base.support())


@dataclass(frozen=True)
class HarmonicRule:
    """Interval (-1, 3 / (i (j + 1))) at every index; always admits zero."""

    def interval_at(self, i: int, j: int) -> OpenInterval:
        return OpenInterval(Fraction(-1), Fraction(3, i * (j + 1)))

    def zero_excluding_indices(self):
        return ()


BoxRule = Union[AllReals, SymmetricPowerRule, HarmonicRule]


@dataclass(frozen=True)
class ProductOpenSpec:
    """Basic open of the product topology: finitely many interval
    constraints, all other coordinates free."""

    explicit: MappingProxyType

    def __init__(self, explicit):
        clean = {Index(*k): v for k, v in dict(explicit).items()}
        object.__setattr__(self, "explicit", MappingProxyType(clean))

    def interval_at(self, i: int, j: int) -> OpenInterval:
        return self.explicit.get(Index(i, j), OpenInterval(None, None))

    def constrained(self):
        return self.explicit.items()


@dataclass(frozen=True)
class BoxOpenSpec:
    """Basic open of the box topology: a finite explicit part over a default
    rule that decides every remaining index."""

    explicit: MappingProxyType
    rule: BoxRule

    def __init__(self, explicit, rule: BoxRule):
        clean = {Index(*k): v for k, v in dict(explicit).items()}
        object.__setattr__(self, "explicit", MappingProxyType(clean))
        object.__setattr__(self, "rule", rule)

    def interval_at(self, i: int, j: int) -> OpenInterval:
        got = self.explicit.get(Index(i, j))
        return got if got is not None else self.rule.interval_at(i, j)

    def checked_indices(self, table: CoefficientTable):
        keys = set(table.support()) | set(self.explicit)
        keys.update(Index(*k) for k in self.rule.zero_excluding_indices())
        return keys


RegionSpec = Union[ProductOpenSpec, BoxOpenSpec, BallSpec]


def open_contains(spec: ProductOpenSpec | BoxOpenSpec, knot: PolynomialKnot) -> bool:
    """Does every coefficient (implicit zeros included) lie in its interval?

    Decidable because only finitely many indices can fail: the knot support,
    the explicit constraints, and the finitely many rule indices that do not
    admit zero.
    """
    table = knot.table if isinstance(knot, PolynomialKnot) else knot
    if isinstance(spec, ProductOpenSpec):
        keys = set(table.support()) | set(spec.explicit)
    else:
        keys = spec.checked_indices(table)
    for i, j in keys:
        if not spec.interval_at(i, j).contains(table.get(i, j)):
            return False
    return True


def region_contains(region: RegionSpec, point) -> bool:
    if isinstance(region, BallSpec):
        result = ball_contains_tri(region, point)
        if result is Membership.UNDECIDABLE:
            raise PrecisionExhausted("ball membership undecidable")
        return result is Membership.IN
    return open_contains(region, point)


# ---------------------------------------------------------------------------
# inclusion witnesses (one per comparison step)
# ---------------------------------------------------------------------------

PRODUCT_WITNESS_CAP = Fraction(1)


def witness_product_in_inf(spec: ProductOpenSpec, knot: PolynomialKnot) -> Fraction:
    """Radius delta with B_inf(knot, delta) inside the product-open set:
    half the smallest margin of the knot's coefficients to the constraint
    boundaries (capped at 1 when nothing is constrained)."""
    if not open_contains(spec, knot):
        raise NotMember("the knot must lie in the product-open set")
    margin: Fraction | None = None
    for (i, j), interval in spec.constrained():
        value = knot.table.get(i, j)
        if interval.lo is not None:
            m = lower_bound(value) - interval.lo
            margin = m if margin is None else min(margin, m)
        if interval.hi is not None:
            m = interval.hi - upper_bound(value)
            margin = m if margin is None else min(margin, m)
    if margin is None:
        return PRODUCT_WITNESS_CAP
    delta = margin / 2
    if delta <= 0:
        raise NotMember("knot sits on a constraint boundary")
    return min(delta, PRODUCT_WITNESS_CAP)


def _ball_gap_radius(ball: BallSpec, member) -> Scalar:
    d = ball.distance_to(member)
    gap_ok = upper_bound(d) < lower_bound(ball.radius)
    if not gap_ok:
        raise NotMember("membership in the outer ball is not certified")
    radius = ball.radius
    if is_exact(d) and is_exact(radius):
        return (radius - d) / 2
    return (to_enclosure(radius) - to_enclosure(d)) / 2


def witness_inf_in_r(ball: BallSpec, member, r) -> Scalar:
    """Radius delta = (eps - d_inf(center, member)) / 2: the l^r ball of that
    radius around the member sits inside the sup ball, because the sup metric
    never exceeds the l^r metric."""
    if not ball.metric.is_sup:
        raise BadExponents("expected a sup-metric ball")
    MetricTag.lp(r)  # validates r >= 1
    return _ball_gap_radius(ball, member)


def witness_r_in_s(ball: BallSpec, member, s) -> Scalar:
    """Radius delta = (eps - d_r(center, member)) / 2 for the l^s ball inside
    the l^r ball; needs s <= r (power-norm monotonicity points that way)."""
    if ball.metric.is_sup:
        raise BadExponents("expected a finite-exponent ball")
    s = Fraction(s)
    if s < 1 or s > ball.metric.exponent:
        raise BadExponents(f"need 1 <= s <= r = {ball.metric.exponent}, got s={s}")
    return _ball_gap_radius(ball, member)


def witness_s_in_box(ball: BallSpec, member) -> BoxOpenSpec:
    """Box-open neighborhood of the member inside the l^s ball.

    delta = min(1/2, eps - d_s(center, member)); the symmetric power rule's
    interval widths form a geometric family whose total l^1 mass is at most
    delta^2, so every finite-support point of the box stays within the ball.
    """
    if ball.metric.is_sup:
        raise BadExponents("expected a finite-exponent ball")
    d = ball.distance_to(member)
    if not upper_bound(d) < lower_bound(ball.radius):
        raise NotMember("membership in the outer ball is not certified")
    gap = lower_bound(ball.radius) - upper_bound(d)
    delta = min(Fraction(1, 2), gap)
    table = member.table if isinstance(member, PolynomialKnot) else member
    return BoxOpenSpec({}, SymmetricPowerRule(delta, table))


# ---------------------------------------------------------------------------
# strictness families
# ---------------------------------------------------------------------------


class StrictnessKind(enum.Enum):
    PRODUCT_VS_SUP = "p-inf"   # product topology strictly coarser than sup
    SUP_VS_LP = "inf-r"        # sup strictly coarser than l^r
    LP_VS_LP = "r-s"           # l^r strictly coarser than l^s (s < r)
    LP_VS_BOX = "s-b"          # l^s strictly coarser than box


@dataclass(frozen=True)
class MembershipClaim:
    label: str
    region: RegionSpec
    point: PolynomialKnot
    expected: bool

    def holds(self) -> bool:
        return region_contains(self.region, self.point) == self.expected


@dataclass(frozen=True)
class StrictnessInstance:
    kind: StrictnessKind
    n: int
    k: int
    parameters: dict
    member: PolynomialKnot
    base: PolynomialKnot
    claims: tuple

    def verify(self) -> dict:
        """Re-check everything: the member certifies as a knot and every
        membership claim comes out as expected."""
        cert = certify_embedding(self.member)
        results = [{"label": c.label, "expected": c.expected, "holds": c.holds()}
                   for c in self.claims]
        return {
            "kind": self.kind.value,
            "k": self.k,
            "member_certified": isinstance(cert.verdict, Certified),
            "claims": results,
            "all_pass": isinstance(cert.verdict, Certified)
            and all(r["holds"] for r in results),
        }


def _base_knot(n: int) -> PolynomialKnot:
    return make_knot(n, {(1, 1): 1}).with_verdict(Certified())


def _next_integer_above(value: Scalar) -> int:
    """Smallest integer strictly greater than a certified upper bound."""
    ub = upper_bound(value)
    k = int(ub) + 1
    while Fraction(k) <= ub:
        k += 1
    return k


def _odd_coefficient_knot(n: int, k: int, coeff: Scalar) -> PolynomialKnot:
    """coeff * (t^3 + t^5 + ... + t^(2k+1)) + t in the first component."""
    entries = {(1, 1): Fraction(1)}
    for j in range(3, 2 * k + 2, 2):
        entries[(1, j)] = coeff
    return make_knot(n, entries)


def strictness_instance(kind: StrictnessKind | str, *, n: int = 2,
                        r=None, s=None, delta=None, k: int | None = None
                        ) -> StrictnessInstance:
    """Build one properness counterexample with its membership claims.

    The integer k is derived from the kind's bound when not supplied, and
    validated against it when it is; ParameterBoundViolated spells out the
    inequality that failed.
    """
    kind = StrictnessKind(kind)
    phi = _base_knot(n)
    if kind is StrictnessKind.PRODUCT_VS_SUP:
        k = 3 if k is None else int(k)
        if k < 3 or k % 2 == 0:
            raise ParameterBoundViolated(f"need odd k >= 3, got k={k}")
        member = make_knot(n, {(1, k): 1, (1, 1): 1})
        inner = ProductOpenSpec({(1, 1): OpenInterval(0, 2)})
        outer = BallSpec(phi, Fraction(1, 2), MetricTag.sup(), Space.KNOTS_N, n=n)
        claims = (
            MembershipClaim("base in product-open", inner, phi, True),
            MembershipClaim("member in product-open", inner, member, True),
            MembershipClaim("member outside sup ball", outer, member, False),
        )
        params = {"n": n}
        return StrictnessInstance(kind, n, k, params, member, phi, claims)

    if kind is StrictnessKind.SUP_VS_LP:
        r = Fraction(r if r is not None else 2)
        delta = Fraction(delta if delta is not None else Fraction(3, 10))
        if r < 1 or delta <= 0:
            raise ParameterBoundViolated("need r >= 1 and delta > 0")
        bound = _pow_frac_scalar(delta, -r)
        k = _next_integer_above(bound) if k is None else int(k)
        if not Fraction(k) > upper_bound(bound):
            raise ParameterBoundViolated(
                f"need k > delta^(-r) (certified above {upper_bound(bound)}), got k={k}")
        coeff = _pow_frac_scalar(Fraction(k), Fraction(-1) / r)
        member = _odd_coefficient_knot(n, k, coeff)
        inner = BallSpec(phi, delta, MetricTag.sup(), Space.KNOTS_N, n=n)
        outer = BallSpec(phi, Fraction(1, 2), MetricTag.lp(r), Space.KNOTS_N, n=n)
        claims = (
            MembershipClaim("member in sup ball", inner, member, True),
            MembershipClaim("member outside l^r ball", outer, member, False),
        )
        params = {"n": n, "r": str(r), "delta": str(delta)}
        return StrictnessInstance(kind, n, k, params, member, phi, claims)

    if kind is StrictnessKind.LP_VS_LP:
        r = Fraction(r if r is not None else 2)
        s = Fraction(s if s is not None else 1)
        delta = Fraction(delta if delta is not None else Fraction(1, 2))
        if not (r > s >= 1):
            raise ParameterBoundViolated(f"need r > s >= 1, got r={r}, s={s}")
        if delta <= 0:
            raise ParameterBoundViolated("need delta > 0")
        exponent = (r * s) / (s - r)  # negative
        bound = _pow_frac_scalar(delta, exponent)
        k = _next_integer_above(bound) if k is None else int(k)
        if not Fraction(k) > upper_bound(bound):
            raise ParameterBoundViolated(
                f"need k > delta^(rs/(s-r)) (certified above {upper_bound(bound)}), got k={k}")
        coeff = _pow_frac_scalar(Fraction(k), Fraction(-1) / s)
        member = _odd_coefficient_knot(n, k, coeff)
        inner = BallSpec(phi, delta, MetricTag.lp(r), Space.KNOTS_N, n=n)
        outer = BallSpec(phi, Fraction(1, 2), MetricTag.lp(s), Space.KNOTS_N, n=n)
        claims = (
            MembershipClaim("member in l^r ball", inner, member, True),
            MembershipClaim("member outside l^s ball", outer, member, False),
        )
        params = {"n": n, "r": str(r), "s": str(s), "delta": str(delta)}
        return StrictnessInstance(kind, n, k, params, member, phi, claims)

    # LP_VS_BOX
    s = Fraction(s if s is not None else 1)
    delta = Fraction(delta if delta is not None else Fraction(1, 2))
    if s < 1 or delta <= 0:
        raise ParameterBoundViolated("need s >= 1 and delta > 0")
    bound = (4 - delta) / delta
    k = (max(int(bound), 0) + 1 if (max(int(bound), 0) + 1) % 2 == 1
         else max(int(bound), 0) + 2) if k is None else int(k)
    if k % 2 == 0 or not Fraction(k) > bound:
        raise ParameterBoundViolated(
            f"need odd k > (4 - delta)/delta = {bound}, got k={k}")
    member = make_knot(n, {(1, k): Fraction(4, k + 1), (1, 1): 1})
    inner = BallSpec(phi, delta, MetricTag.lp(s), Space.KNOTS_N, n=n)
    outer = BoxOpenSpec({}, HarmonicRule())
    claims = (
        MembershipClaim("base in harmonic box", outer, phi, True),
        MembershipClaim("member in l^s ball", inner, member, True),
        MembershipClaim("member outside harmonic box", outer, member, False),
    )
    params = {"n": n, "s": str(s), "delta": str(delta)}
    return StrictnessInstance(StrictnessKind.LP_VS_BOX, n, k, params, member, phi,
                              claims)


def _pow_frac_scalar(base: Fraction, exponent: Fraction) -> Scalar:
    """base ** exponent, exact when the rational power happens to be
    rational, else a certified enclosure."""
    base, exponent = Fraction(base), Fraction(exponent)
    if exponent.denominator == 1:
        return base ** int(exponent)
    inner = base ** exponent.numerator
    root = nth_root_exact(inner, exponent.denominator) if inner > 0 else None
    if root is not None:
        return root
    return Enclosure.from_fraction(base).pow_frac(exponent)


# ---------------------------------------------------------------------------
# seeded sampling of region members
# ---------------------------------------------------------------------------


def _dyadic(rng: Random, lo: Fraction, hi: Fraction, grain: int = 20) -> Fraction:
    """Uniform dyadic rational strictly inside (lo, hi)."""
    steps = 1 << grain
    u = Fraction(rng.randrange(1, steps), steps)
    return lo + (hi - lo) * u


def sample_ball_member(ball: BallSpec, rng: Random):
    """Random table perturbation of the center with certified membership.

    Perturbs every support coefficient, occasionally activates one extra
    index, and scales the perturbation so its norm is certifiably below the
    radius.
    """
    center = ball.center
    table = center.table if isinstance(center, PolynomialKnot) else center
    is_knot = isinstance(center, PolynomialKnot)
    keys = list(table.entries)
    deltas = {}
    for key in keys:
        deltas[key] = _dyadic(rng, Fraction(-1), Fraction(1))
    if rng.random() < 0.25:
        extra = _fresh_index(ball, table, rng, is_knot)
        if extra is not None:
            deltas[extra] = _dyadic(rng, Fraction(-1), Fraction(1))
    norm = p_norm([abs(v) for v in deltas.values()], ball.metric)
    norm_ub = upper_bound(norm)
    if norm_ub == 0:
        return center
    scale = _dyadic(rng, Fraction(0), Fraction(1)) * lower_bound(ball.radius) / norm_ub
    if is_knot:
        entries = dict(table.entries)
        for key, dv in deltas.items():
            entries[key] = entries.get(key, Fraction(0)) + dv * scale
        dim = max(center.dimension, max((i for i, _ in entries), default=1))
        return PolynomialKnot(CoefficientTable(entries), dim)
    entries = dict(table.entries)
    for key, dv in deltas.items():
        entries[key] = entries.get(key, Fraction(0)) + dv * scale
    return SequencePoint(entries)


def _fresh_index(ball: BallSpec, table, rng: Random, is_knot: bool):
    for _ in range(8):
        if is_knot:
            max_i = ball.n if ball.space is Space.KNOTS_N else \
                table.max_component() + 1
            idx = Index(rng.randint(1, max(1, max_i)),
                        rng.randint(0, table.max_power() + 2))
            if idx not in table.entries:
                return idx
        else:
            top = ball.n if ball.space is Space.SEQUENCES_N else max(table.entries) + 2
            i = rng.randint(1, max(1, top))
            if i not in table.entries:
                return i
    return None


def sample_box_member(box: BoxOpenSpec, base: CoefficientTable,
                      rng: Random) -> CoefficientTable:
    """Random finite-support table inside a box-open set: every touched
    index gets a value strictly inside its interval (with the 1/4-probability
    extra index the rule allows); untouched indices stay at 0, which the
    rules admit."""
    keys = set(base.support()) | set(box.explicit)
    if rng.random() < 0.25:
        i = rng.randint(1, base.max_component() + 1)
        j = rng.randint(0, base.max_power() + 1)
        keys.add(Index(i, j))
    entries = {}
    for i, j in keys:
        interval = box.interval_at(i, j)
        lo = interval.lo if interval.lo is not None else Fraction(-1)
        hi = interval.hi if interval.hi is not None else Fraction(1)
        entries[Index(i, j)] = _dyadic(rng, lo, hi)
    return CoefficientTable(entries)
