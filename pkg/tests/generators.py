"""Random inputs shared by the unit and acceptance suites.

Everything is driven by an explicit ``random.Random`` so failures replay.
Knot candidates come in three flavors: unconstrained tables, guaranteed
embeddings (a linear first component certifies instantly), and planted
failures (even symmetry or a shared derivative root).
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from polyknot import PolynomialKnot, SequencePoint, certify_knot, is_certified, make_knot


def rational(rng: Random, lo: int = -5, hi: int = 5, max_den: int = 4) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def nonzero_rational(rng: Random, lo: int = -5, hi: int = 5,
                     max_den: int = 4) -> Fraction:
    while True:
        q = rational(rng, lo, hi, max_den)
        if q != 0:
            return q


def random_table(rng: Random, dim: int, degree: int, lo: int = -5, hi: int = 5,
                 density: float = 0.5) -> dict:
    entries = {}
    for i in range(1, dim + 1):
        for j in range(0, degree + 1):
            if rng.random() < density:
                entries[(i, j)] = rational(rng, lo, hi)
    if not any(j >= 1 for (_, j) in entries):
        entries[(rng.randint(1, dim), rng.randint(1, degree))] = \
            nonzero_rational(rng, lo, hi)
    return {k: v for k, v in entries.items() if v != 0} or \
        {(1, 1): Fraction(1)}


def random_candidate(rng: Random, max_dim: int = 3, max_degree: int = 5,
                     lo: int = -3, hi: int = 3) -> PolynomialKnot:
    dim = rng.randint(1, max_dim)
    degree = rng.randint(1, max_degree)
    return make_knot(dim, random_table(rng, dim, degree, lo, hi))


def random_certified_knot(rng: Random, max_dim: int = 4, max_degree: int = 6,
                          lo: int = -5, hi: int = 5,
                          tries: int = 40) -> PolynomialKnot:
    """A certified knot from the unconstrained distribution, falling back to
    planting a linear component when the draw is unlucky."""
    for _ in range(tries):
        knot = random_candidate(rng, max_dim, max_degree, lo, hi)
        certified = certify_knot(knot)
        if is_certified(certified):
            return certified
    dim = rng.randint(1, max_dim)
    entries = random_table(rng, dim, rng.randint(1, max_degree), lo, hi)
    entries[(1, 1)] = nonzero_rational(rng, lo, hi)
    entries.pop((1, 0), None)
    for j in range(2, max_degree + 1):
        entries.pop((1, j), None)
    return certify_knot(make_knot(dim, entries))


def planted_even(rng: Random, max_dim: int = 3, max_degree: int = 5,
                 lo: int = -3, hi: int = 3) -> PolynomialKnot:
    """Only even powers: the map factors through t^2, so (-t, t) collide."""
    dim = rng.randint(1, max_dim)
    entries = {}
    for i in range(1, dim + 1):
        for j in range(0, max_degree + 1, 2):
            if rng.random() < 0.6:
                entries[(i, j)] = rational(rng, lo, hi)
    entries = {k: v for k, v in entries.items() if v != 0}
    if not any(j >= 2 for (_i, j) in entries):
        entries[(1, 2)] = nonzero_rational(rng, lo, hi)
    return make_knot(dim, entries)


def planted_derivative_zero(rng: Random, max_dim: int = 3, max_degree: int = 5,
                            lo: int = -3, hi: int = 3) -> PolynomialKnot:
    """Every component is an antiderivative of (t - t0) * (something), so the
    whole derivative vanishes at the shared rational t0."""
    dim = rng.randint(1, max_dim)
    t0 = rational(rng, -2, 2, 2)
    entries = {}
    for i in range(1, dim + 1):
        g_degree = rng.randint(0, max(0, max_degree - 2))
        g = [rational(rng, lo, hi) for _ in range(g_degree + 1)]
        if all(c == 0 for c in g):
            g[0] = Fraction(1)
        # (t - t0) * g has coefficients h; the antiderivative shifts degrees up
        h = [Fraction(0)] * (len(g) + 1)
        for k, c in enumerate(g):
            h[k + 1] += c
            h[k] -= t0 * c
        for k, c in enumerate(h):
            if c != 0:
                entries[(i, k + 1)] = c / (k + 1)
    if not entries:
        entries = {(1, 2): Fraction(1, 2), (1, 1): -t0}
    return make_knot(dim, entries)


def acceptance_candidate(rng: Random) -> tuple[PolynomialKnot, str]:
    """The certifier-vs-oracle mix: roughly half planted failures."""
    roll = rng.random()
    if roll < 0.25:
        return planted_even(rng), "planted-even"
    if roll < 0.5:
        return planted_derivative_zero(rng), "planted-derivative"
    return random_candidate(rng), "random"


def random_sequence_point(rng: Random, max_index: int = 6, lo: int = -5,
                          hi: int = 5) -> SequencePoint:
    entries = {}
    for i in range(1, max_index + 1):
        if rng.random() < 0.5:
            entries[i] = rational(rng, lo, hi)
    entries = {k: v for k, v in entries.items() if v != 0}
    if not entries:
        entries[rng.randint(1, max_index)] = nonzero_rational(rng, lo, hi)
    return SequencePoint(entries)


TREFOIL_ENTRIES = {(1, 3): 1, (1, 1): -3, (2, 4): 1, (2, 2): -4,
                   (3, 5): 1, (3, 1): -10}


def trefoil() -> PolynomialKnot:
    return make_knot(3, TREFOIL_ENTRIES)
