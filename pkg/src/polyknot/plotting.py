"""Curve sampling and batch figure emission (CSV rows and SVG polylines)."""

from __future__ import annotations

from fractions import Fraction

from .core import PolynomialKnot, evaluate
from .homotopy import HomotopyTrace
from .scalars import Scalar, is_exact


def _grid(lo: Fraction, hi: Fraction, samples: int) -> list[Fraction]:
    if samples < 2:
        return [lo]
    step = (hi - lo) / (samples - 1)
    return [lo + k * step for k in range(samples)]


def _fmt(x: Fraction) -> str:
    return format(float(x), ".17g")


def _midpoint(v: Scalar) -> Fraction:
    return Fraction(v) if is_exact(v) else v.mid_fraction()


def _radius(v: Scalar) -> Fraction:
    return Fraction(0) if is_exact(v) else v.radius_fraction()


def knot_curve_rows(knot: PolynomialKnot, lo: Fraction, hi: Fraction,
                    samples: int) -> list[tuple[Fraction, list[Scalar]]]:
    return [(t, evaluate(knot, t)) for t in _grid(lo, hi, samples)]


def knot_curve_csv(knot: PolynomialKnot, lo: Fraction, hi: Fraction,
                   samples: int) -> str:
    """One row per parameter value: t, x1..xn, with a +/- radius column per
    coordinate when any value is inexact (17 significant digits of the
    midpoint)."""
    rows = knot_curve_rows(knot, lo, hi, samples)
    inexact = any(not is_exact(v) for _, vals in rows for v in vals)
    header = ["t"]
    for i in range(1, knot.dimension + 1):
        header.append(f"x{i}")
        if inexact:
            header.append(f"x{i}_pm")
    lines = [",".join(header)]
    for t, vals in rows:
        cells = [_fmt(t)]
        for v in vals:
            cells.append(_fmt(_midpoint(v)))
            if inexact:
                cells.append(_fmt(_radius(v)))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


SVG_SIZE = 640
SVG_MARGIN = 40


def knot_curve_svg(knot: PolynomialKnot, lo: Fraction, hi: Fraction,
                   samples: int, components: tuple[int, int]) -> str:
    """A single polyline tracing the selected planar projection."""
    ci, cj = components
    if not (1 <= ci <= knot.dimension and 1 <= cj <= knot.dimension):
        raise ValueError(f"components {components} outside 1..{knot.dimension}")
    rows = knot_curve_rows(knot, lo, hi, samples)
    xs = [float(_midpoint(vals[ci - 1])) for _, vals in rows]
    ys = [float(_midpoint(vals[cj - 1])) for _, vals in rows]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span_x = (x1 - x0) or 1.0
    span_y = (y1 - y0) or 1.0
    inner = SVG_SIZE - 2 * SVG_MARGIN

    def to_px(x, y):
        px = SVG_MARGIN + (x - x0) / span_x * inner
        py = SVG_SIZE - SVG_MARGIN - (y - y0) / span_y * inner
        return f"{px:.2f},{py:.2f}"

    points = " ".join(to_px(x, y) for x, y in zip(xs, ys))
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">\n'
        f'  <rect width="{SVG_SIZE}" height="{SVG_SIZE}" fill="white"/>\n'
        f'  <polyline fill="none" stroke="black" stroke-width="1.5" '
        f'points="{points}"/>\n'
        f"</svg>\n"
    )


def trace_frame_documents(trace: HomotopyTrace, lo: Fraction, hi: Fraction,
                          samples: int, fmt: str,
                          components: tuple[int, int]) -> list[tuple[str, str]]:
    """One rendered frame per trace sample, named with zero-padded indices."""
    width = max(3, len(str(len(trace.samples) - 1)))
    out = []
    for idx, sample in enumerate(trace.samples):
        state = sample.state
        if not isinstance(state, PolynomialKnot):
            raise ValueError("only knot traces can be plotted as curves")
        if fmt == "csv":
            content = knot_curve_csv(state, lo, hi, samples)
        else:
            content = knot_curve_svg(state, lo, hi, samples, components)
        out.append((f"{idx:0{width}d}", content))
    return out
