"""The coefficientwise metric family on knot space and sequence space.

For exponent r >= 1 the distance is the l^r norm of the coefficient
difference over the (finite) joint support; the sup metric takes the largest
difference.  Results are exact rationals whenever the arithmetic permits
(sup, r = 1, single-term differences, integer r with a perfect-power sum)
and certified enclosures otherwise.  Ball membership is decided by strict
comparison with precision escalation, returning a three-valued answer.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .core import CoefficientTable, PolynomialKnot, SequencePoint
from .errors import BadExponents, NegativeInput, PrecisionExhausted, SpaceMismatch
from .scalars import (
    Enclosure,
    Scalar,
    certainly_less,
    get_precision,
    is_exact,
    local_precision,
    lower_bound,
    MAX_PRECISION_BITS,
    nth_root_exact,
    scalar_diff_abs,
    to_enclosure,
    upper_bound,
)


@dataclass(frozen=True)
class MetricTag:
    """Finite exponent r >= 1, or the sup metric (exponent None)."""

    exponent: Fraction | None

    def __post_init__(self):
        if self.exponent is not None:
            object.__setattr__(self, "exponent", Fraction(self.exponent))
            if self.exponent < 1:
                raise BadExponents("metric exponent must satisfy r >= 1")

    @classmethod
    def lp(cls, r) -> "MetricTag":
        return cls(Fraction(r))

    @classmethod
    def sup(cls) -> "MetricTag":
        return cls(None)

    @property
    def is_sup(self) -> bool:
        return self.exponent is None

    @classmethod
    def parse(cls, text: str) -> "MetricTag":
        text = text.strip().lower()
        if text in ("inf", "infinity", "sup"):
            return cls.sup()
        return cls.lp(Fraction(text))

    def __str__(self):
        if self.is_sup:
            return "inf"
        r = self.exponent
        return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def p_norm(values, tag: MetricTag) -> Scalar:
    """l^r (or sup) norm of finitely many nonnegative scalars."""
    vals = [v for v in values if not (is_exact(v) and v == 0)]
    if not vals:
        return Fraction(0)
    if tag.is_sup:
        if all(is_exact(v) for v in vals):
            return max(Fraction(v) for v in vals)
        return Enclosure.hull(vals)
    r = tag.exponent
    if len(vals) == 1:
        # (|x|^r)^(1/r) = |x| exactly, for any exponent
        return vals[0]
    if r == 1:
        if all(is_exact(v) for v in vals):
            return sum(vals, Fraction(0))
        acc: Scalar = Fraction(0)
        for v in vals:
            acc = to_enclosure(acc) + to_enclosure(v)
        return acc
    if r.denominator == 1 and all(is_exact(v) for v in vals):
        total = sum(Fraction(v) ** int(r) for v in vals)
        root = nth_root_exact(total, int(r))
        if root is not None:
            return root
        return Enclosure.from_fraction(total).pow_frac(1 / r)
    total_enc = Enclosure.from_fraction(0)
    for v in vals:
        total_enc = total_enc + to_enclosure(v).pow_frac(r)
    return total_enc.pow_frac(1 / r)


def _table_of(obj) -> CoefficientTable:
    return obj.table if isinstance(obj, PolynomialKnot) else obj


def distance(a, b, tag: MetricTag) -> Scalar:
    """d_r / d_inf between two coefficient tables (or knots).

    Symmetric, zero exactly on equal tables; exact whenever the input and
    exponent allow, otherwise a certified enclosure.
    """
    ta, tb = _table_of(a), _table_of(b)
    keys = set(ta.entries) | set(tb.entries)
    diffs = [scalar_diff_abs(ta.entries.get(k, Fraction(0)),
                             tb.entries.get(k, Fraction(0))) for k in keys]
    return p_norm(diffs, tag)


def seq_distance(x: SequencePoint, y: SequencePoint, tag: MetricTag) -> Scalar:
    """rho_r / rho_inf between two sequence points."""
    keys = set(x.entries) | set(y.entries)
    diffs = [scalar_diff_abs(x.entries.get(k, Fraction(0)),
                             y.entries.get(k, Fraction(0))) for k in keys]
    return p_norm(diffs, tag)


DEFAULT_NORM_TOL = Fraction(1, 10 ** 12)


def norm_monotonicity_check(values, r, s, tol: Fraction = DEFAULT_NORM_TOL):
    """Evaluate both sides of the power-norm inequality and verify it.

    For r >= s >= 1 and nonnegative entries, the l^r norm never exceeds the
    l^s norm; returns (lhs, rhs, holds) where `holds` certifies there is no
    violation beyond `tol`.
    """
    r, s = Fraction(r), Fraction(s)
    if s < 1 or r < s:
        raise BadExponents(f"need r >= s >= 1, got r={r}, s={s}")
    vals = list(values)
    for v in vals:
        if (is_exact(v) and v < 0) or (not is_exact(v) and lower_bound(v) < 0):
            raise NegativeInput("power-norm inequality needs nonnegative entries")
    lhs = p_norm(vals, MetricTag.lp(r))
    rhs = p_norm(vals, MetricTag.lp(s))
    holds = lower_bound(lhs) <= upper_bound(rhs) + tol
    return lhs, rhs, holds


# -- balls -------------------------------------------------------------------


class Space(enum.Enum):
    KNOTS = "L"         # all polynomial knots
    KNOTS_N = "Ln"      # knots with support in the first n components
    SEQUENCES = "E"     # nonzero finite-support sequences
    SEQUENCES_N = "En"  # with support in the first n indices


class Membership(enum.Enum):
    IN = "in"
    OUT = "out"
    UNDECIDABLE = "undecidable"


Point = Union[PolynomialKnot, SequencePoint]


@dataclass(frozen=True)
class BallSpec:
    """Open metric ball: strict distance-to-center test against the radius."""

    center: Point
    radius: Scalar
    metric: MetricTag
    space: Space
    n: int | None = None

    def __post_init__(self):
        if not (lower_bound(self.radius) > 0 or
                (is_exact(self.radius) and self.radius > 0)):
            raise ValueError("ball radius must be certifiably positive")
        if self.space in (Space.KNOTS_N, Space.SEQUENCES_N) and self.n is None:
            raise ValueError("dimension-restricted spaces need n")
        self._check_point(self.center, "center")

    def _check_point(self, point, role: str):
        if self.space in (Space.KNOTS, Space.KNOTS_N):
            if not isinstance(point, PolynomialKnot):
                raise SpaceMismatch(f"{role} must be a knot for space {self.space.value}")
            if self.space is Space.KNOTS_N:
                top = point.table.max_component()
                if top > self.n:
                    raise SpaceMismatch(
                        f"{role} has components beyond {self.n}")
        else:
            if not isinstance(point, SequencePoint):
                raise SpaceMismatch(f"{role} must be a sequence point for "
                                    f"space {self.space.value}")
            if self.space is Space.SEQUENCES_N and point.max_index() > self.n:
                raise SpaceMismatch(f"{role} has support beyond {self.n}")

    def distance_to(self, point: Point) -> Scalar:
        if isinstance(self.center, PolynomialKnot):
            return distance(self.center, point, self.metric)
        return seq_distance(self.center, point, self.metric)


def ball_contains_tri(ball: BallSpec, point: Point,
                      max_bits: int = MAX_PRECISION_BITS) -> Membership:
    """Three-valued strict membership test with precision escalation."""
    ball._check_point(point, "point")
    bits = get_precision()
    while True:
        with local_precision(bits):
            d = ball.distance_to(point)
            verdict = certainly_less(d, ball.radius)
        if verdict is True:
            return Membership.IN
        if verdict is False:
            return Membership.OUT
        if bits >= max_bits:
            return Membership.UNDECIDABLE
        bits = min(2 * bits, max_bits)


def ball_contains(ball: BallSpec, point: Point) -> bool:
    """Boolean membership; raises PrecisionExhausted when escalation caps out."""
    result = ball_contains_tri(ball, point)
    if result is Membership.UNDECIDABLE:
        raise PrecisionExhausted(
            "ball membership undecidable at the precision cap")
    return result is Membership.IN
