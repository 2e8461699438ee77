"""Sparse bivariate polynomials over the rationals.

Terms are stored as ``{(a, b): coefficient}`` for ``x^a y^b``; the zero
polynomial is the empty dict.  Exact coefficients are ``Fraction``; the
evaluation helpers also accept enclosure coefficients (needed when knot
tables carry certified-interval entries), but the algebraic routines
(gcd, resultant) insist on exact input.

The resultant is computed as the determinant of the Sylvester matrix with
entries in Q[x], by evaluation at enough rational points followed by
Lagrange interpolation; determinant and evaluation commute, so vanishing
leading coefficients at individual sample points are harmless.
"""

from __future__ import annotations

from fractions import Fraction

from . import unipoly as up
from .scalars import Scalar, is_exact, to_enclosure

BiPoly = dict  # {(int, int): Fraction}

X: BiPoly = {(1, 0): Fraction(1)}
Y: BiPoly = {(0, 1): Fraction(1)}


def normalize(terms) -> BiPoly:
    return {k: Fraction(v) for k, v in dict(terms).items() if v != 0}


def constant(c) -> BiPoly:
    c = Fraction(c)
    return {(0, 0): c} if c else {}


def is_zero(p: BiPoly) -> bool:
    return not p


def is_constant(p: BiPoly) -> bool:
    return all(k == (0, 0) for k in p)


def constant_value(p: BiPoly) -> Fraction:
    return p.get((0, 0), Fraction(0))


def deg_x(p: BiPoly) -> int:
    return max((a for a, _ in p), default=-1)


def deg_y(p: BiPoly) -> int:
    return max((b for _, b in p), default=-1)


def total_degree(p: BiPoly) -> int:
    return max((a + b for a, b in p), default=-1)


def add(p: BiPoly, q: BiPoly) -> BiPoly:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, Fraction(0)) + v
    return normalize(out)


def neg(p: BiPoly) -> BiPoly:
    return {k: -v for k, v in p.items()}


def sub(p: BiPoly, q: BiPoly) -> BiPoly:
    return add(p, neg(q))


def scale(p: BiPoly, c: Fraction) -> BiPoly:
    c = Fraction(c)
    if c == 0:
        return {}
    return {k: c * v for k, v in p.items()}


def mul(p: BiPoly, q: BiPoly) -> BiPoly:
    out: BiPoly = {}
    for (a1, b1), v1 in p.items():
        for (a2, b2), v2 in q.items():
            k = (a1 + a2, b1 + b2)
            out[k] = out.get(k, Fraction(0)) + v1 * v2
    return normalize(out)


def diff_x(p: BiPoly) -> BiPoly:
    return normalize({(a - 1, b): a * v for (a, b), v in p.items() if a > 0})


def diff_y(p: BiPoly) -> BiPoly:
    return normalize({(a, b - 1): b * v for (a, b), v in p.items() if b > 0})


def to_nested_y(p: BiPoly) -> list[up.Poly]:
    """Coefficient polynomials in x, indexed by the power of y (ascending)."""
    if not p:
        return []
    ny = deg_y(p) + 1
    nx = deg_x(p) + 1
    rows = [[Fraction(0)] * nx for _ in range(ny)]
    for (a, b), v in p.items():
        rows[b][a] = v
    return [up.normalize(r) for r in rows]


def from_nested_y(rows: list[up.Poly]) -> BiPoly:
    out: BiPoly = {}
    for b, row in enumerate(rows):
        for a, v in enumerate(row):
            if v != 0:
                out[(a, b)] = Fraction(v)
    return out


def swap_vars(p: BiPoly) -> BiPoly:
    return {(b, a): v for (a, b), v in p.items()}


def evaluate(p: BiPoly, x: Scalar, y: Scalar) -> Scalar:
    """Nested Horner evaluation; exact when everything is exact."""
    rows = to_nested_y(p)
    if not rows:
        return Fraction(0)
    exact = is_exact(x) and is_exact(y) and all(is_exact(v) for v in p.values())
    coeffs = [up.eval_scalar(row, x) for row in rows]
    acc: Scalar = Fraction(0)
    for c in reversed(coeffs):
        if exact:
            acc = acc * y + c
        else:
            acc = to_enclosure(acc) * to_enclosure(y) + to_enclosure(c)
    return acc


def eval_x(p: BiPoly, x: Fraction) -> up.Poly:
    """Specialize x, returning a univariate polynomial in y."""
    out: dict[int, Fraction] = {}
    for (a, b), v in p.items():
        out[b] = out.get(b, Fraction(0)) + v * x ** a
    if not out:
        return []
    coeffs = [Fraction(0)] * (max(out) + 1)
    for b, v in out.items():
        coeffs[b] = v
    return up.normalize(coeffs)


def eval_y(p: BiPoly, y: Fraction) -> up.Poly:
    return eval_x(swap_vars(p), y)


# -- determinants and resultants ---------------------------------------------


def _det(matrix: list[list[Fraction]]) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination over Q."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        pv = m[col][col]
        det *= pv
        for r in range(col + 1, n):
            if m[r][col] == 0:
                continue
            f = m[r][col] / pv
            for c in range(col, n):
                m[r][c] -= f * m[col][c]
    return det


def _sylvester_det_at(pc: list[up.Poly], qc: list[up.Poly], x: Fraction) -> Fraction:
    """Sylvester determinant (in y) of p, q with x specialized.

    ``pc`` / ``qc`` are nested-y coefficient polynomials padded to the global
    y-degrees, so the matrix shape is independent of the sample point.
    """
    m = len(pc) - 1
    n = len(qc) - 1
    pv = [up.evaluate(c, x) for c in pc]
    qv = [up.evaluate(c, x) for c in qc]
    size = m + n
    mat = [[Fraction(0)] * size for _ in range(size)]
    for r in range(n):
        for i, v in enumerate(reversed(pv)):
            mat[r][r + i] = v
    for r in range(m):
        for i, v in enumerate(reversed(qv)):
            mat[n + r][r + i] = v
    return _det(mat)


def _lagrange(points: list[tuple[Fraction, Fraction]]) -> up.Poly:
    result: up.Poly = []
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        term = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            term = up.mul(term, [-xj, Fraction(1)])
            denom *= xi - xj
        result = up.add(result, up.scale(term, yi / denom))
    return result


def resultant_y(p: BiPoly, q: BiPoly) -> up.Poly:
    """Resultant of p and q with respect to y, as a polynomial in x.

    Vanishes at every x over which p and q share a common y-root (and also
    where both leading y-coefficients vanish), which is exactly the superset
    property candidate generation needs.
    """
    _require_exact(p)
    _require_exact(q)
    m, n = deg_y(p), deg_y(q)
    if m < 0 or n < 0:
        return []
    if m == 0 and n == 0:
        return [Fraction(1)]
    if m == 0 or n == 0:
        # One operand is free of y: Res = (that operand) ** (other's y-degree).
        flat, power = (p, n) if m == 0 else (q, m)
        base = up.normalize([flat.get((a, 0), Fraction(0))
                             for a in range(deg_x(flat) + 1)])
        out = [Fraction(1)]
        for _ in range(power):
            out = up.mul(out, base)
        return out
    pc = to_nested_y(p)
    qc = to_nested_y(q)
    bound = deg_x(p) * n + deg_x(q) * m
    xs: list[Fraction] = []
    k = 0
    while len(xs) < bound + 1:
        xs.append(Fraction(k))
        k += 1
    points = [(x, _sylvester_det_at(pc, qc, x)) for x in xs]
    return _lagrange(points)


def resultant_x(p: BiPoly, q: BiPoly) -> up.Poly:
    return resultant_y(swap_vars(p), swap_vars(q))


def _require_exact(p: BiPoly):
    if any(not is_exact(v) for v in p.values()):
        raise TypeError("exact rational coefficients required here")


# -- gcd ----------------------------------------------------------------------


def _content_y(rows: list[up.Poly]) -> up.Poly:
    g: up.Poly = []
    for r in rows:
        if up.is_zero(r):
            continue
        g = up.gcd(g, r) if g else up.scale(r, 1 / up.leading(r))
    return g if g else []


def _divide_rows(rows: list[up.Poly], d: up.Poly) -> list[up.Poly]:
    out = []
    for r in rows:
        if up.is_zero(r):
            out.append([])
            continue
        q, rem = up.divmod_exact(r, d)
        if not up.is_zero(rem):
            raise AssertionError("content division must be exact")
        out.append(q)
    return out


def _pseudo_rem(a: list[up.Poly], b: list[up.Poly]) -> list[up.Poly]:
    """Pseudo-remainder of nested-y polynomials over Q[x]."""
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    r = [row[:] for row in a]
    while len(r) - 1 >= db and any(not up.is_zero(row) for row in r):
        while r and up.is_zero(r[-1]):
            r.pop()
        if len(r) - 1 < db:
            break
        shift = len(r) - 1 - db
        lead = r[-1]
        r = [up.mul(row, lb) for row in r]
        for i, brow in enumerate(b):
            r[shift + i] = up.sub(r[shift + i], up.mul(lead, brow))
        while r and up.is_zero(r[-1]):
            r.pop()
    return r


def _primitive(rows: list[up.Poly]) -> list[up.Poly]:
    rows = [up.normalize(r) for r in rows]
    while rows and up.is_zero(rows[-1]):
        rows.pop()
    if not rows:
        return []
    c = _content_y(rows)
    if up.degree(c) > 0:
        rows = _divide_rows(rows, c)
    return rows


def gcd(p: BiPoly, q: BiPoly) -> BiPoly:
    """Greatest common divisor in Q[x, y] (primitive PRS), content included.

    Normalized so the leading term (in lexicographic (y, x) order) has
    coefficient 1.
    """
    _require_exact(p)
    _require_exact(q)
    if is_zero(p):
        return _monic(q)
    if is_zero(q):
        return _monic(p)
    pr = to_nested_y(p)
    qr = to_nested_y(q)
    content = up.gcd(_content_y(pr), _content_y(qr))
    a = _primitive(pr)
    b = _primitive(qr)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _primitive(_pseudo_rem(a, b))
        a, b = b, r
    prim = from_nested_y(a)
    if up.degree(content) > 0:
        content_bp = {(i, 0): c for i, c in enumerate(content) if c != 0}
        prim = mul(prim, content_bp)
    return _monic(prim)


def _monic(p: BiPoly) -> BiPoly:
    if is_zero(p):
        return {}
    key = max(p, key=lambda k: (k[1], k[0]))
    return scale(p, 1 / p[key])


# -- power-sum difference quotients ------------------------------------------


def power_diff_quotient_sym(j: int) -> BiPoly:
    """(s^j - t^j)/(s - t) expressed in e1 = s + t, e2 = s t.

    Satisfies the recurrence H_j = e1 H_{j-1} - e2 H_{j-2} with H_0 = 0 and
    H_1 = 1; cached.
    """
    cache = _H_CACHE
    while len(cache) <= j:
        k = len(cache)
        cache.append(sub(mul(X, cache[k - 1]), mul(Y, cache[k - 2])))
    return cache[j]


_H_CACHE: list[BiPoly] = [dict(), {(0, 0): Fraction(1)}]


def power_diff_quotient_st(j: int) -> BiPoly:
    """(s^j - t^j)/(s - t) as a polynomial in (s, t) directly."""
    return {(m, j - 1 - m): Fraction(1) for m in range(j)}
