"""Deformations: the linearization homotopy on knot space and the two
contraction homotopies on sequence space.

The linearization homotopy scales the coefficient at (i, j) by s^|j-1|
(with 0^0 = 1), sliding any knot onto its linear part as s goes to 0 while
staying inside knot space the whole way; traces re-certify every sample, and
a certification failure is raised as a hard error because it would contradict
a proved fact.  On sequence space, the shift homotopy interpolates a point
toward its right-shift and the cone homotopy carries the shifted point onto
the basepoint (1, 0, 0, ...); both visibly avoid the excluded zero sequence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .certifier import certify_embedding
from .core import (
    CoefficientTable,
    Index,
    PolynomialKnot,
    SequencePoint,
    is_certified,
)
from .errors import CertificationFailed, NotCertified, OutOfRange
from .scalars import Scalar, is_exact, lower_bound, to_enclosure, upper_bound


class TraceKind(enum.Enum):
    LINEARIZE = "linearize"
    SHIFT_CONTRACT = "shift-contract"
    CONE_CONTRACT = "cone-contract"
    CONTRACT = "contract"  # shift leg followed by cone leg


State = Union[PolynomialKnot, SequencePoint]


@dataclass(frozen=True)
class TraceSample:
    parameter: Scalar
    state: State
    verdict: str


@dataclass(frozen=True)
class HomotopyTrace:
    kind: TraceKind
    samples: tuple

    def __post_init__(self):
        params = [s.parameter for s in self.samples]
        if not params:
            raise ValueError("a trace needs at least one sample")
        if params[0] != 0 or params[-1] != 1:
            raise ValueError("trace parameters must run from 0 to 1")
        for a, b in zip(params, params[1:]):
            if not a < b:
                raise ValueError("trace parameters must be strictly increasing")

    def states(self) -> list[State]:
        return [s.state for s in self.samples]


def _check_unit_interval(s: Scalar):
    if is_exact(s):
        if not 0 <= s <= 1:
            raise OutOfRange(f"homotopy parameter {s} outside [0, 1]")
    elif lower_bound(s) < 0 or upper_bound(s) > 1:
        raise OutOfRange("homotopy parameter enclosure outside [0, 1]")


def linearize_homotopy(s: Scalar, knot: PolynomialKnot) -> PolynomialKnot:
    """Scale the (i, j) coefficient by s^|j-1| and re-certify.

    At s = 1 this is the identity; at s = 0 it is the linear part (constant
    terms carry exponent |0-1| = 1 and die at 0).  The result is certified
    before returning; the homotopy provably preserves knots, so the verdict
    is expected to be Certified for every valid input.
    """
    _check_unit_interval(s)
    if not is_certified(knot):
        raise NotCertified("linearize_homotopy requires a certified knot")
    if is_exact(s) and s == 1:
        return knot
    entries = {}
    for (i, j), c in knot.table.entries.items():
        k = abs(j - 1)
        if k == 0:
            entries[Index(i, j)] = c
        elif is_exact(s):
            entries[Index(i, j)] = c * s ** k if is_exact(c) \
                else to_enclosure(c) * s ** k
        else:
            entries[Index(i, j)] = to_enclosure(c) * to_enclosure(s) ** k
    moved = PolynomialKnot(CoefficientTable(entries), knot.dimension)
    return moved.with_verdict(certify_embedding(moved).verdict)


def trace_linearization(knot: PolynomialKnot, steps: int) -> HomotopyTrace:
    """Uniformly sampled linearization path from the linear part back to the
    knot, each sample re-certified.  Raises CertificationFailed if any sample
    fails: that would falsify a proved statement, so it signals a bug."""
    if steps < 2:
        raise ValueError("a trace needs at least 2 samples")
    if not is_certified(knot):
        raise NotCertified("trace_linearization requires a certified knot")
    samples = []
    for k in range(steps):
        s = Fraction(k, steps - 1)
        moved = linearize_homotopy(s, knot)
        if not is_certified(moved):
            raise CertificationFailed(s, moved.verdict)
        samples.append(TraceSample(s, moved, str(moved.verdict)))
    return HomotopyTrace(TraceKind.LINEARIZE, tuple(samples))


def shift_homotopy(s: Scalar, x: SequencePoint) -> SequencePoint:
    """Interpolate a sequence toward its right-shift.

    Coordinate i moves from x_i to x_{i-1} (with x_0 = 0); at any s > 0 the
    coordinate just past the top of the support equals s * x_top != 0, so the
    path never meets the excluded zero sequence.
    """
    _check_unit_interval(s)
    if is_exact(s):
        if s == 0:
            return x
        if s == 1:
            return SequencePoint({i + 1: v for i, v in x.entries.items()})
    m = x.max_index()
    entries = {}
    for i in range(1, m + 2):
        xi = x.get(i)
        xprev = x.get(i - 1) if i > 1 else Fraction(0)
        entries[i] = _affine(s, xi, xprev)
    return SequencePoint(entries)


def cone_homotopy(s: Scalar, x: SequencePoint) -> SequencePoint:
    """Interpolate the right-shifted sequence toward the basepoint
    (1, 0, 0, ...); the first coordinate equals s on the way, and the shift
    fills the rest, so the path stays nonzero."""
    _check_unit_interval(s)
    m = x.max_index()
    entries = {}
    for i in range(1, m + 2):
        xprev = x.get(i - 1) if i > 1 else Fraction(0)
        target = Fraction(1) if i == 1 else Fraction(0)
        entries[i] = _affine(s, xprev, target)
    return SequencePoint(entries)


def _affine(s: Scalar, frm: Scalar, to: Scalar) -> Scalar:
    """(1 - s) * frm + s * to in whichever arithmetic the inputs demand."""
    if is_exact(s) and is_exact(frm) and is_exact(to):
        return (1 - s) * frm + s * to
    se = to_enclosure(s)
    return (1 - se) * to_enclosure(frm) + se * to_enclosure(to)


def contract_trace(x: SequencePoint, steps_per_leg: int) -> HomotopyTrace:
    """Shift leg then cone leg, concatenated into one strictly increasing
    trace on [0, 1] (the junction state is shared and emitted once); the
    final state is the basepoint (1, 0, 0, ...)."""
    if steps_per_leg < 2:
        raise ValueError("each leg needs at least 2 samples")
    samples = []
    for k in range(steps_per_leg):
        s = Fraction(k, steps_per_leg - 1)
        state = shift_homotopy(s, x)
        samples.append(TraceSample(s / 2, state, "nonzero"))
    junction = shift_homotopy(Fraction(1), x)
    start_cone = cone_homotopy(Fraction(0), x)
    if junction != start_cone:  # pragma: no cover - exact algebraic identity
        raise AssertionError("shift and cone legs disagree at the junction")
    for k in range(1, steps_per_leg):
        s = Fraction(k, steps_per_leg - 1)
        state = cone_homotopy(s, x)
        samples.append(TraceSample(Fraction(1, 2) + s / 2, state, "nonzero"))
    return HomotopyTrace(TraceKind.CONTRACT, tuple(samples))
