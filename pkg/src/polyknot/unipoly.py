"""Exact univariate polynomials over the rationals.

A polynomial is a list of ``Fraction`` coefficients in ascending degree with
no trailing zeros (the zero polynomial is ``[]``).  Everything here is exact;
the only interval-valued entry point is :func:`eval_scalar`, which accepts
mixed rational/enclosure coefficients and arguments.

Root isolation follows the classical Sturm route: squarefree reduction,
sign-variation counts, and bisection from a Cauchy bound.  Isolating
intervals either have rational non-root endpoints and contain exactly one
distinct real root, or are exact points ``(r, r)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

from .errors import ZeroPolynomial
from .scalars import Enclosure, Scalar, is_exact, to_enclosure

Poly = list  # list[Fraction], ascending coefficients


def normalize(coeffs) -> Poly:
    p = [Fraction(c) for c in coeffs]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Poly) -> int:
    return len(p) - 1


def is_zero(p: Poly) -> bool:
    return not p


def leading(p: Poly) -> Fraction:
    return p[-1]


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return normalize(out)


def neg(p: Poly) -> Poly:
    return [-c for c in p]


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def scale(p: Poly, c: Fraction) -> Poly:
    c = Fraction(c)
    if c == 0:
        return []
    return [c * a for a in p]


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return normalize(out)


def divmod_exact(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Euclidean division over the rationals."""
    if is_zero(q):
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    dq, lq = degree(q), leading(q)
    while not is_zero(rem) and degree(rem) >= dq:
        shift = degree(rem) - dq
        factor = rem[-1] / lq
        quo[shift] = factor
        for i, c in enumerate(q):
            rem[shift + i] -= factor * c
        rem = normalize(rem)
    return normalize(quo), rem


def derivative(p: Poly) -> Poly:
    return normalize([i * c for i, c in enumerate(p)][1:])


def evaluate(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def eval_scalar(coeffs, x: Scalar) -> Scalar:
    """Horner evaluation with mixed rational/enclosure coefficients."""
    if is_exact(x) and all(is_exact(c) for c in coeffs):
        return evaluate([Fraction(c) for c in coeffs], Fraction(x))
    acc: Scalar = Fraction(0)
    xe = x if is_exact(x) else to_enclosure(x)
    for c in reversed(list(coeffs)):
        if is_exact(acc) and is_exact(xe):
            acc = acc * xe + c
        else:
            acc = to_enclosure(acc) * to_enclosure(xe) + to_enclosure(c)
    return acc


def integer_primitive(p: Poly) -> Poly:
    """Scale by a positive rational to integer coefficients with content 1.

    Positive scaling preserves signs everywhere, so this is safe inside
    Sturm chains and keeps coefficient growth under control.
    """
    if is_zero(p):
        return []
    den = 1
    for c in p:
        den = den * c.denominator // _int_gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for v in ints:
        g = _int_gcd(g, abs(v))
    return [Fraction(v, g) for v in ints]


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor."""
    a, b = normalize(p), normalize(q)
    while not is_zero(b):
        _, r = divmod_exact(a, b)
        a, b = b, integer_primitive(r)
    if is_zero(a):
        return []
    return scale(a, 1 / leading(a))


def squarefree_part(p: Poly) -> Poly:
    if is_zero(p):
        return []
    g = gcd(p, derivative(p))
    if degree(g) <= 0:
        return integer_primitive(p)
    quo, _ = divmod_exact(p, g)
    return integer_primitive(quo)


def sturm_chain(p: Poly) -> list[Poly]:
    """Sturm chain of the squarefree part of ``p``."""
    f = squarefree_part(p)
    chain = [f, integer_primitive(derivative(f))]
    while not is_zero(chain[-1]) and degree(chain[-1]) > 0:
        _, r = divmod_exact(chain[-2], chain[-1])
        chain.append(integer_primitive(neg(r)))
    if is_zero(chain[-1]):
        chain.pop()
    return chain


def _variations(values) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def variations_at(chain: list[Poly], x: Fraction) -> int:
    return _variations([evaluate(f, x) for f in chain])


def variations_at_inf(chain: list[Poly], positive: bool) -> int:
    if positive:
        return _variations([leading(f) for f in chain if not is_zero(f)])
    return _variations([leading(f) * (-1) ** degree(f) for f in chain if not is_zero(f)])


def count_real_roots(p: Poly, lo: Fraction | None = None, hi: Fraction | None = None,
                     chain: list[Poly] | None = None) -> int:
    """Number of distinct real roots in the open interval (lo, hi).

    Endpoints must not be roots of ``p`` when given (callers here maintain
    that invariant); None means the corresponding infinity.
    """
    if is_zero(p):
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    if degree(p) == 0:
        return 0
    ch = chain if chain is not None else sturm_chain(p)
    va = variations_at_inf(ch, positive=False) if lo is None else variations_at(ch, lo)
    vb = variations_at_inf(ch, positive=True) if hi is None else variations_at(ch, hi)
    return va - vb


def cauchy_bound(p: Poly) -> Fraction:
    """Strict bound: every real root has absolute value < the returned value."""
    if degree(p) < 1:
        return Fraction(1)
    lead = abs(leading(p))
    return 1 + max(abs(c) / lead for c in p[:-1])


def _nonroot_split(f: Poly, lo: Fraction, hi: Fraction) -> Fraction:
    """A point strictly inside (lo, hi) where ``f`` does not vanish."""
    step = hi - lo
    k = 2
    while True:
        mid = lo + step / k
        if mid > lo and mid < hi and evaluate(f, mid) != 0:
            return mid
        k += 1
        if k > 64:
            # f has finitely many roots; dense rational probing must succeed
            # long before this, so reaching here means a logic error.
            raise AssertionError("could not find a non-root split point")


def _isolate_all(f: Poly) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals over the whole line for squarefree ``f``.

    The Cauchy bound is strict, so the initial endpoints are never roots and
    every interval produced has non-root endpoints around exactly one root.
    """
    chain = sturm_chain(f)
    bound = cauchy_bound(f)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound)]
    while stack:
        u, v = stack.pop()
        n = count_real_roots(f, u, v, chain=chain)
        if n == 0:
            continue
        if n == 1:
            out.append((u, v))
            continue
        m = _nonroot_split(f, u, v)
        stack.append((u, m))
        stack.append((m, v))
    out.sort()
    return out


def isolate_real_roots(p: Poly, lo: Fraction | None = None,
                       hi: Fraction | None = None) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals for the distinct real roots of ``p``.

    Each entry is an open interval with non-root rational endpoints holding
    exactly one distinct root, or an exact point ``(r, r)``.  With bounds the
    result is restricted to the closed range ``[lo, hi]``; straddling
    intervals are refined until they fall inside or outside, so no root is
    lost or double-counted at a range endpoint.
    """
    if is_zero(p):
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    f = squarefree_part(p)
    if degree(f) <= 0:
        return []
    intervals = _isolate_all(f)
    if lo is None and hi is None:
        return intervals
    out: list[tuple[Fraction, Fraction]] = []
    for iv in intervals:
        clipped = _clip_to_range(f, iv, lo, hi)
        if clipped is not None:
            out.append(clipped)
    return out


def _clip_to_range(f: Poly, interval: tuple[Fraction, Fraction],
                   lo: Fraction | None, hi: Fraction | None):
    u, v = interval
    while True:
        if u == v:
            ok = (lo is None or u >= lo) and (hi is None or u <= hi)
            return (u, v) if ok else None
        # Isolating intervals hold their root strictly inside, so an interval
        # entirely at or beyond a bound cannot contain an in-range root.
        if lo is not None and v <= lo:
            return None
        if hi is not None and u >= hi:
            return None
        if (lo is None or u >= lo) and (hi is None or v <= hi):
            return (u, v)
        # Straddles a range endpoint: pin an exact hit, otherwise bisect away.
        for b in (lo, hi):
            if b is not None and u < b < v and evaluate(f, b) == 0:
                return (b, b)
        u, v = refine_root(f, (u, v), (v - u) / 2)


def refine_root(p: Poly, interval: tuple[Fraction, Fraction],
                width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval below ``width`` by sign bisection."""
    lo, hi = interval
    if lo == hi:
        return interval
    f = squarefree_part(p)
    slo = evaluate(f, lo)
    shi = evaluate(f, hi)
    if slo == 0 or shi == 0 or (slo > 0) == (shi > 0):
        # The interval came from Sturm isolation of a simple root, so the
        # signs must differ; rebuild via a count if a caller handed us a
        # stale pair.
        raise ValueError("not a sign-isolating interval")
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = evaluate(f, mid)
        if sm == 0:
            return (mid, mid)
        if (sm > 0) == (slo > 0):
            lo, slo = mid, sm
        else:
            hi, shi = mid, sm
    return (lo, hi)


def simplest_rational_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest denominator in the closed interval."""
    if lo > hi:
        lo, hi = hi, lo
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_rational_between(-hi, -lo)

    def simplest_pos(a: Fraction, b: Fraction) -> Fraction:
        ia = a.numerator // a.denominator
        if Fraction(ia) == a:
            return a
        if ia + 1 <= b:
            return Fraction(ia + 1)
        frac = simplest_pos(1 / (b - ia), 1 / (a - ia))
        return ia + 1 / frac

    return simplest_pos(lo, hi)


def rational_root_in(p: Poly, interval: tuple[Fraction, Fraction]) -> Fraction | None:
    """An exact rational root inside an isolating interval, when its
    denominator is modest.

    Refines the interval first; the simplest rational in a tight interval
    around a rational root is that root, so refinement plus one exact
    evaluation recovers planted roots without factoring.
    """
    f = squarefree_part(p)
    lo, hi = refine_root(f, interval, Fraction(1, 10 ** 18))
    if lo == hi:
        return lo
    cand = simplest_rational_between(lo, hi)
    if lo < cand < hi and evaluate(f, cand) == 0:
        return cand
    return None


def root_enclosure(p: Poly, interval: tuple[Fraction, Fraction],
                   width: Fraction = Fraction(1, 10 ** 30)) -> Enclosure:
    lo, hi = refine_root(p, interval, width) if interval[0] != interval[1] else interval
    return Enclosure.from_endpoints(lo, hi)
