"""Dual-mode scalar arithmetic.

A scalar is either an exact ``fractions.Fraction`` or a certified
``Enclosure`` (an interval with outward-rounded binary endpoints, backed by
mpmath).  Exact values stay exact under ring operations; anything
transcendental (powers with non-integer exponents) returns an enclosure
guaranteed to contain the true real value.  All certified decisions are made
by comparing exact rational conversions of the endpoints, so no decision ever
depends on rounding direction assumptions beyond mpmath's outward rounding of
interval arithmetic itself.

Precision is process-global (mpmath's interval context has a single
precision); use :func:`local_precision` to escalate temporarily.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from fractions import Fraction
from typing import Union

from mpmath import iv, mp
from mpmath import libmp

__all__ = [
    "Scalar",
    "Enclosure",
    "DEFAULT_PRECISION_BITS",
    "MAX_PRECISION_BITS",
    "get_precision",
    "local_precision",
    "to_enclosure",
    "is_exact",
    "exact_is_zero",
    "scalar_abs",
    "scalar_diff_abs",
    "certainly_less",
    "certainly_greater_equal",
    "lower_bound",
    "upper_bound",
    "integer_nth_root",
    "nth_root_exact",
    "parse_rational",
    "format_rational",
    "format_scalar",
]

_ENV_VAR = "POLYKNOT_PRECISION_BITS"
DEFAULT_PRECISION_BITS = 128
MAX_PRECISION_BITS = 1024

_current_bits: int | None = None


def get_precision() -> int:
    """Working precision in bits (env override, else the package default)."""
    if _current_bits is not None:
        return _current_bits
    raw = os.environ.get(_ENV_VAR)
    if raw:
        try:
            return max(53, int(raw))
        except ValueError:
            pass
    return DEFAULT_PRECISION_BITS


@contextmanager
def local_precision(bits: int):
    """Temporarily run enclosure arithmetic at ``bits`` of precision."""
    global _current_bits
    saved = _current_bits
    _current_bits = bits
    try:
        yield
    finally:
        _current_bits = saved


def _sync():
    iv.prec = get_precision()


def _raw_to_fraction(raw) -> Fraction:
    return Fraction(*libmp.to_rational(raw))


class Enclosure:
    """Certified interval ``[lo, hi]`` containing one unknown real value."""

    __slots__ = ("_v",)

    def __init__(self, value):
        # value is an mpmath interval; use the classmethods to construct.
        self._v = value

    # -- construction -----------------------------------------------------

    @classmethod
    def from_fraction(cls, q: Fraction | int) -> "Enclosure":
        q = Fraction(q)
        _sync()
        prec = iv.prec
        lo = libmp.from_rational(q.numerator, q.denominator, prec, libmp.round_floor)
        hi = libmp.from_rational(q.numerator, q.denominator, prec, libmp.round_ceiling)
        return cls(iv.make_mpf((lo, hi)))

    @classmethod
    def from_endpoints(cls, lo: Fraction | int, hi: Fraction | int) -> "Enclosure":
        lo, hi = Fraction(lo), Fraction(hi)
        if hi < lo:
            raise ValueError("endpoints out of order")
        _sync()
        prec = iv.prec
        a = libmp.from_rational(lo.numerator, lo.denominator, prec, libmp.round_floor)
        b = libmp.from_rational(hi.numerator, hi.denominator, prec, libmp.round_ceiling)
        return cls(iv.make_mpf((a, b)))

    @classmethod
    def hull(cls, values) -> "Enclosure":
        encs = [to_enclosure(v) for v in values]
        if not encs:
            raise ValueError("hull of nothing")
        lo = min((e._v._mpi_[0] for e in encs), key=_raw_to_fraction)
        hi = max((e._v._mpi_[1] for e in encs), key=_raw_to_fraction)
        return cls(iv.make_mpf((lo, hi)))

    # -- endpoint access ---------------------------------------------------

    def lo_fraction(self) -> Fraction:
        return _raw_to_fraction(self._v._mpi_[0])

    def hi_fraction(self) -> Fraction:
        return _raw_to_fraction(self._v._mpi_[1])

    def mid_fraction(self) -> Fraction:
        return (self.lo_fraction() + self.hi_fraction()) / 2

    def radius_fraction(self) -> Fraction:
        return (self.hi_fraction() - self.lo_fraction()) / 2

    def width_fraction(self) -> Fraction:
        return self.hi_fraction() - self.lo_fraction()

    # -- queries -----------------------------------------------------------

    def contains_zero(self) -> bool:
        return self.lo_fraction() <= 0 <= self.hi_fraction()

    def contains(self, q: Fraction | int) -> bool:
        q = Fraction(q)
        return self.lo_fraction() <= q <= self.hi_fraction()

    def is_point(self) -> bool:
        lo, hi = self._v._mpi_
        return lo == hi

    def sign(self) -> int | None:
        """Certified sign: -1, 0 (exact zero), +1, or None if undecided."""
        lo, hi = self.lo_fraction(), self.hi_fraction()
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        if lo == hi == 0:
            return 0
        return None

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Enclosure):
            return other
        if isinstance(other, (int, Fraction)):
            return Enclosure.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        _sync()
        return Enclosure(self._v + o._v)

    __radd__ = __add__

    def __neg__(self):
        _sync()
        return Enclosure(-self._v)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        _sync()
        return Enclosure(self._v - o._v)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        _sync()
        return Enclosure(o._v - self._v)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        _sync()
        return Enclosure(self._v * o._v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.contains_zero():
            raise ZeroDivisionError("division by an interval containing zero")
        _sync()
        return Enclosure(self._v / o._v)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __abs__(self):
        _sync()
        return Enclosure(abs(self._v))

    def __pow__(self, exponent):
        if isinstance(exponent, int):
            _sync()
            return Enclosure(self._v ** exponent)
        if isinstance(exponent, Fraction):
            return self.pow_frac(exponent)
        return NotImplemented

    def pow_frac(self, exponent: Fraction) -> "Enclosure":
        """``self ** exponent`` for rational exponents; requires a nonnegative
        base when the exponent is not an integer (monotone endpoint powers)."""
        exponent = Fraction(exponent)
        if exponent.denominator == 1:
            return self ** int(exponent)
        lo, hi = self.lo_fraction(), self.hi_fraction()
        if lo < 0:
            raise ValueError("fractional power of a possibly-negative enclosure")
        _sync()
        e = Enclosure.from_fraction(exponent)

        def endpoint_pow(q: Fraction):
            if q == 0:
                if exponent < 0:
                    raise ZeroDivisionError("0 ** negative exponent")
                return Enclosure.from_fraction(0)
            base = Enclosure.from_fraction(q)
            return Enclosure(base._v ** e._v)

        if exponent > 0:
            # monotone increasing on [0, inf)
            return Enclosure(iv.make_mpf((endpoint_pow(lo)._v._mpi_[0],
                                          endpoint_pow(hi)._v._mpi_[1])))
        if lo == 0:
            raise ZeroDivisionError("negative power of an enclosure touching zero")
        # monotone decreasing
        return Enclosure(iv.make_mpf((endpoint_pow(hi)._v._mpi_[0],
                                      endpoint_pow(lo)._v._mpi_[1])))

    def sqrt(self) -> "Enclosure":
        if self.lo_fraction() < 0:
            raise ValueError("sqrt of a possibly-negative enclosure")
        _sync()
        return Enclosure(iv.sqrt(self._v))

    # -- equality is structural (identical endpoints) ----------------------

    def __eq__(self, other):
        if isinstance(other, Enclosure):
            return self._v._mpi_ == other._v._mpi_
        if isinstance(other, (int, Fraction)):
            return self.is_point() and self.lo_fraction() == Fraction(other)
        return NotImplemented

    def __hash__(self):
        return hash(("Enclosure", self._v._mpi_))

    def __repr__(self):
        return f"Enclosure[{self.lo_fraction()}, {self.hi_fraction()}]"

    def __str__(self):
        return format_scalar(self)

    def __float__(self):
        return float(self.mid_fraction())


Scalar = Union[Fraction, Enclosure]


def is_exact(x: Scalar) -> bool:
    return isinstance(x, (Fraction, int))


def exact_is_zero(x: Scalar) -> bool:
    """True only when ``x`` is known to be exactly zero."""
    if is_exact(x):
        return x == 0
    return x.sign() == 0


def to_enclosure(x: Scalar) -> Enclosure:
    if isinstance(x, Enclosure):
        return x
    return Enclosure.from_fraction(x)


def scalar_abs(x: Scalar) -> Scalar:
    return abs(x)


def scalar_diff_abs(a: Scalar, b: Scalar) -> Scalar:
    """``|a - b|`` with an identity shortcut so equal entries give exact 0.

    The shortcut matters for interval scalars: interval subtraction of a value
    from itself widens to ``[-2r, 2r]`` instead of 0, which would break the
    metric axiom ``d(x, x) = 0`` for tables holding irrational coefficients.
    """
    if a == b:
        return Fraction(0)
    if is_exact(a) and is_exact(b):
        return abs(a - b)
    return abs(to_enclosure(a) - to_enclosure(b))


def lower_bound(x: Scalar) -> Fraction:
    return Fraction(x) if is_exact(x) else x.lo_fraction()


def upper_bound(x: Scalar) -> Fraction:
    return Fraction(x) if is_exact(x) else x.hi_fraction()


def certainly_less(a: Scalar, b: Scalar) -> bool | None:
    """Three-valued certified ``a < b``: True/False when decidable, else None."""
    if upper_bound(a) < lower_bound(b):
        return True
    if lower_bound(a) >= upper_bound(b):
        return False
    if is_exact(a) and is_exact(b):
        return a < b
    return None


def certainly_greater_equal(a: Scalar, b: Scalar) -> bool | None:
    r = certainly_less(a, b)
    return None if r is None else not r


def integer_nth_root(n: int, k: int) -> tuple[int, bool]:
    """Floor of the k-th root of n >= 0, and whether it is exact."""
    if n < 0 or k < 1:
        raise ValueError("integer_nth_root needs n >= 0, k >= 1")
    if n in (0, 1) or k == 1:
        return n, True
    r = int(round(n ** (1.0 / k))) if n.bit_length() < 512 else 1 << (n.bit_length() // k + 1)
    # Newton iteration on integers.
    r = max(r, 1)
    while True:
        rk = r ** (k - 1)
        nxt = ((k - 1) * r + n // rk) // k
        if nxt >= r:
            break
        r = nxt
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r, r ** k == n


def nth_root_exact(q: Fraction, k: int) -> Fraction | None:
    """The exact k-th root of a nonnegative rational, or None if irrational."""
    if q < 0:
        raise ValueError("nth_root_exact needs a nonnegative rational")
    rn, okn = integer_nth_root(q.numerator, k)
    if not okn:
        return None
    rd, okd = integer_nth_root(q.denominator, k)
    if not okd:
        return None
    return Fraction(rn, rd)


# -- text forms -------------------------------------------------------------


def parse_rational(text: str) -> Fraction:
    """Parse a 'p/q' or decimal string as an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _format_endpoint(raw, digits: int = 17) -> str:
    return mp.nstr(mp.make_mpf(raw), digits)


def format_scalar(x: Scalar, digits: int = 17) -> str:
    """Exact rationals as 'p/q'; enclosures as '[lo, hi]' decimals."""
    if is_exact(x):
        return format_rational(x)
    lo, hi = x._v._mpi_
    return f"[{_format_endpoint(lo, digits)}, {_format_endpoint(hi, digits)}]"
