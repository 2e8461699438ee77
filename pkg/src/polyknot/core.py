"""Coefficient tables, polynomial knots, and finite-support sequences.

A polynomial map R -> R^n is identified with its table of coefficients
indexed by (component i >= 1, power j >= 0); exact zeros are never stored,
so finite support is structural and equality of maps is table equality.
Sequence points are the nonzero finite-support sequences that serve as
linear parts of knots.

All values are immutable; operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, NamedTuple

from . import unipoly as up
from .errors import (
    EmptyTable,
    IndexOutOfDimension,
    NotCertified,
    SupportExceedsDim,
    ZeroLinearPart,
    ZeroVector,
)
from .scalars import Scalar, exact_is_zero, is_exact


class Index(NamedTuple):
    component: int  # i >= 1
    power: int      # j >= 0


def _as_index(key) -> Index:
    i, j = key
    i, j = int(i), int(j)
    if i < 1 or j < 0:
        raise ValueError(f"invalid coefficient index ({i}, {j})")
    return Index(i, j)


def _as_scalar(value) -> Scalar:
    if isinstance(value, int):
        return Fraction(value)
    return value


# -- verdicts -----------------------------------------------------------------


@dataclass(frozen=True)
class Uncertified:
    def __str__(self):
        return "uncertified"


@dataclass(frozen=True)
class Certified:
    def __str__(self):
        return "certified"


@dataclass(frozen=True)
class Refuted:
    """Witness pair (s, t): a collision when s != t, a derivative zero when
    s == t (scalars may be exact or interval enclosures)."""
    witness: tuple

    def __str__(self):
        return "refuted"


@dataclass(frozen=True)
class Inconclusive:
    depth: int

    def __str__(self):
        return "inconclusive"


Verdict = Uncertified | Certified | Refuted | Inconclusive


def is_certified(obj) -> bool:
    verdict = obj.verdict if isinstance(obj, PolynomialKnot) else obj
    return isinstance(verdict, Certified)


# -- coefficient tables --------------------------------------------------------


class CoefficientTable:
    """Finite-support map Index -> Scalar with exact zeros dropped."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        clean: dict[Index, Scalar] = {}
        for key, value in dict(entries).items():
            idx = _as_index(key)
            val = _as_scalar(value)
            if exact_is_zero(val):
                continue
            clean[idx] = val
        object.__setattr__(self, "entries", MappingProxyType(clean))

    def __setattr__(self, name, value):
        raise AttributeError("CoefficientTable is immutable")

    def __eq__(self, other):
        if isinstance(other, CoefficientTable):
            return dict(self.entries) == dict(other.entries)
        return NotImplemented

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self):
        items = ", ".join(f"({i},{j}): {v}" for (i, j), v in self.sorted_items())
        return f"CoefficientTable({{{items}}})"

    def get(self, i: int, j: int) -> Scalar:
        return self.entries.get(Index(i, j), Fraction(0))

    def sorted_items(self):
        return sorted(self.entries.items(), key=lambda kv: kv[0])

    def support(self) -> set[Index]:
        return set(self.entries)

    def components(self) -> set[int]:
        return {i for i, _ in self.entries}

    def max_component(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    def max_power(self) -> int:
        return max((j for _, j in self.entries), default=0)

    def component_coefficients(self, i: int) -> list[Scalar]:
        """Ascending coefficient list of component i (possibly empty)."""
        powers = {j: v for (c, j), v in self.entries.items() if c == i}
        if not powers:
            return []
        out: list[Scalar] = [Fraction(0)] * (max(powers) + 1)
        for j, v in powers.items():
            out[j] = v
        return out

    def is_exact(self) -> bool:
        return all(is_exact(v) for v in self.entries.values())


# -- knots and sequence points --------------------------------------------------


class PolynomialKnot:
    """A coefficient table with an ambient dimension and a certification
    verdict.

    Equality is table equality alone: a knot *is* its coefficient tuple.
    The dimension declares which ambient space the knot is considered in
    (the same tuple lies in every larger one), and the verdict records what
    has been proved; neither changes the underlying point of knot space.
    """

    __slots__ = ("table", "dimension", "verdict")

    def __init__(self, table: CoefficientTable, dimension: int,
                 verdict: Verdict = Uncertified()):
        if len(table) == 0:
            raise EmptyTable("a polynomial knot needs at least one nonzero coefficient")
        dimension = int(dimension)
        if dimension < 1:
            raise ValueError("dimension must be a positive integer")
        bad = [idx for idx in table.support() if idx.component > dimension]
        if bad:
            raise IndexOutOfDimension(
                f"entries at components beyond dimension {dimension}: {sorted(bad)}")
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "verdict", verdict)

    def __setattr__(self, name, value):
        raise AttributeError("PolynomialKnot is immutable")

    def __eq__(self, other):
        if isinstance(other, PolynomialKnot):
            return self.table == other.table
        return NotImplemented

    def __repr__(self):
        return (f"PolynomialKnot(dim={self.dimension}, verdict={self.verdict}, "
                f"table={self.table!r})")

    def with_verdict(self, verdict: Verdict) -> "PolynomialKnot":
        return PolynomialKnot(self.table, self.dimension, verdict)

    def component_coefficients(self, i: int) -> list[Scalar]:
        return self.table.component_coefficients(i)

    def degree(self) -> int:
        return self.table.max_power()

    def is_exact(self) -> bool:
        return self.table.is_exact()


class SequencePoint:
    """Nonzero finite-support real sequence (an element of the space of
    linear parts).  At least one entry must be certifiably nonzero."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        clean: dict[int, Scalar] = {}
        for key, value in dict(entries).items():
            i = int(key)
            if i < 1:
                raise ValueError(f"invalid sequence index {i}")
            val = _as_scalar(value)
            if exact_is_zero(val):
                continue
            clean[i] = val
        if not any(_certainly_nonzero(v) for v in clean.values()):
            raise ZeroVector("sequence points must be nonzero")
        object.__setattr__(self, "entries", MappingProxyType(clean))

    def __setattr__(self, name, value):
        raise AttributeError("SequencePoint is immutable")

    def __eq__(self, other):
        if isinstance(other, SequencePoint):
            return dict(self.entries) == dict(other.entries)
        return NotImplemented

    def __repr__(self):
        items = ", ".join(f"{i}: {v}" for i, v in self.sorted_items())
        return f"SequencePoint({{{items}}})"

    def get(self, i: int) -> Scalar:
        return self.entries.get(int(i), Fraction(0))

    def sorted_items(self):
        return sorted(self.entries.items())

    def max_index(self) -> int:
        return max(self.entries)

    def is_exact(self) -> bool:
        return all(is_exact(v) for v in self.entries.values())


def _certainly_nonzero(v: Scalar) -> bool:
    if is_exact(v):
        return v != 0
    return v.sign() in (1, -1)


# -- operations -----------------------------------------------------------------


def make_knot(dimension: int, entries) -> PolynomialKnot:
    """Build an uncertified knot from (index, value) pairs.

    Values are normalized (rationals reduced, exact zeros dropped); raises
    EmptyTable when nothing remains and IndexOutOfDimension when a component
    index exceeds the dimension.
    """
    if isinstance(entries, Mapping):
        entries = entries.items()
    table = CoefficientTable({_as_index(k): _as_scalar(v) for k, v in entries})
    return PolynomialKnot(table, dimension, Uncertified())


def evaluate(knot: PolynomialKnot, t: Scalar) -> list[Scalar]:
    """The point of R^n the knot maps ``t`` to; exact when inputs are exact."""
    out = []
    for i in range(1, knot.dimension + 1):
        coeffs = knot.component_coefficients(i)
        out.append(up.eval_scalar(coeffs, t) if coeffs else Fraction(0))
    return out


def linear_part(knot: PolynomialKnot) -> dict[int, Scalar]:
    return {i: v for (i, j), v in knot.table.entries.items() if j == 1}


def project_linear(knot: PolynomialKnot) -> SequencePoint:
    """The degree-1 coefficient row of a certified knot.

    Certification guarantees the derivative at 0 is nonzero, which is exactly
    the statement that this row is a valid sequence point.
    """
    if not is_certified(knot):
        raise NotCertified("project_linear requires a certified knot")
    row = linear_part(knot)
    if not row:
        raise ZeroLinearPart("all degree-1 coefficients vanish")
    return SequencePoint(row)


def embed_linear(x: SequencePoint) -> PolynomialKnot:
    """The linear knot t -> (x_1 t, ..., x_n t) with n the top support index.

    A linear map with nonzero coefficient vector is injective with constant
    nonzero derivative, so the result is certified by construction.
    """
    n = x.max_index()
    table = CoefficientTable({Index(i, 1): v for i, v in x.entries.items()})
    return PolynomialKnot(table, n, Certified())


def truncate_to_dim(x: SequencePoint, n: int) -> tuple[Scalar, ...]:
    """First ``n`` coordinates of a sequence supported there (the map onto
    punctured n-space)."""
    n = int(n)
    if n < 1:
        raise ValueError("n must be a positive integer")
    beyond = [i for i in x.entries if i > n]
    if beyond:
        raise SupportExceedsDim(f"nonzero entries beyond index {n}: {sorted(beyond)}")
    return tuple(x.get(i) for i in range(1, n + 1))


def extend_from_dim(y) -> SequencePoint:
    """Pad a nonzero n-vector with zeros (the inverse of truncation)."""
    entries = {i + 1: _as_scalar(v) for i, v in enumerate(y)}
    try:
        return SequencePoint(entries)
    except ZeroVector:
        raise ZeroVector("extend_from_dim requires a nonzero vector") from None
