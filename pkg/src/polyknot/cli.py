"""Command-line interface.

Subcommands: verify, distance, project, embed-linear, linearize, contract,
witness, plot.  Exit codes: 0 success/certified, 1 refuted, 2 inconclusive,
3 trace certification failure (a bug signal), 64 usage error, 65 unreadable
or malformed input.  Output files are written atomically.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from random import Random

from . import formats, plotting
from .certifier import certify_embedding, sampling_oracle
from .core import Certified, PolynomialKnot, SequencePoint, make_knot
from .errors import (
    BadExponents,
    CertificationFailed,
    ParameterBoundViolated,
    ParseError,
    PolyknotError,
)
from .homotopy import contract_trace, trace_linearization
from .metrics import BallSpec, MetricTag, Space, ball_contains, distance, seq_distance
from .scalars import (
    format_scalar,
    lower_bound,
    parse_rational,
    upper_bound,
)
from .witnesses import (
    BoxOpenSpec,
    OpenInterval,
    ProductOpenSpec,
    StrictnessKind,
    open_contains,
    sample_ball_member,
    sample_box_member,
    strictness_instance,
    witness_inf_in_r,
    witness_product_in_inf,
    witness_r_in_s,
    witness_s_in_box,
)

EXIT_CERTIFIED = 0
EXIT_REFUTED = 1
EXIT_INCONCLUSIVE = 2
EXIT_TRACE_FAILURE = 3
EXIT_USAGE = 64
EXIT_INPUT = 65


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="polyknot",
                     description="certified polynomial-knot toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="certify a knot file")
    p.add_argument("path")
    p.add_argument("--oracle", action="store_true",
                   help="also run the floating-point grid oracle")
    p.add_argument("--depth", type=int, default=40,
                   help="subdivision depth limit")

    p = sub.add_parser("distance", help="distance between two documents")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p.add_argument("--metric", required=True,
                   help="'inf' or a rational/decimal exponent r >= 1")

    p = sub.add_parser("project", help="linear part of a certified knot")
    p.add_argument("path")
    p.add_argument("--out")

    p = sub.add_parser("embed-linear", help="linear knot from a sequence file")
    p.add_argument("path")
    p.add_argument("--out")

    p = sub.add_parser("linearize", help="trace the linearization homotopy")
    p.add_argument("path")
    p.add_argument("--steps", type=int, default=11)
    p.add_argument("--out")

    p = sub.add_parser("contract", help="trace the contraction homotopies")
    p.add_argument("path")
    p.add_argument("--steps", type=int, default=11,
                   help="samples per leg")
    p.add_argument("--out")

    p = sub.add_parser("witness", help="topology witnesses and strictness "
                                       "instances")
    p.add_argument("--kind", required=True,
                   choices=["p-inf", "inf-r", "r-s", "s-b", "s-box"])
    p.add_argument("--r")
    p.add_argument("--s")
    p.add_argument("--delta")
    p.add_argument("--epsilon")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--constraint", action="append", default=[],
                   metavar="i,j,lo,hi",
                   help="product-open constraint (repeatable)")
    p.add_argument("--out")

    p = sub.add_parser("plot", help="emit CSV rows or an SVG polyline")
    p.add_argument("path")
    p.add_argument("--range", nargs=2, metavar=("A", "B"),
                   default=["-2", "2"])
    p.add_argument("--samples", type=int, default=401)
    p.add_argument("--format", choices=["csv", "svg"], default="csv")
    p.add_argument("--components", nargs=2, type=int, default=[1, 2],
                   metavar=("I", "J"))
    p.add_argument("--out")
    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    handler = {
        "verify": _cmd_verify,
        "distance": _cmd_distance,
        "project": _cmd_project,
        "embed-linear": _cmd_embed_linear,
        "linearize": _cmd_linearize,
        "contract": _cmd_contract,
        "witness": _cmd_witness,
        "plot": _cmd_plot,
    }[args.command]
    try:
        return handler(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        formats.write_text_atomic(out, text)


def _load_knot(path: str) -> PolynomialKnot:
    return formats.parse_knot(_read(path), where=path)


def _load_sequence(path: str) -> SequencePoint:
    return formats.parse_sequence(_read(path), where=path)


# -- subcommands -----------------------------------------------------------------


def _cmd_verify(args) -> int:
    knot = _load_knot(args.path)
    cert = certify_embedding(knot, depth_limit=args.depth)
    sys.stdout.write(formats.serialize_certificate(cert))
    if args.oracle:
        outcome = sampling_oracle(knot)
        print(f"oracle: {outcome}")
        if cert.is_certified() and outcome.failure_found:
            print("oracle DISAGREES with certificate", file=sys.stderr)
        else:
            print("oracle agrees with certificate")
    return formats.verdict_exit_code(cert.verdict)


def _cmd_distance(args) -> int:
    doc_a = formats.detect_and_parse(_read(args.path_a), args.path_a)
    doc_b = formats.detect_and_parse(_read(args.path_b), args.path_b)
    try:
        tag = MetricTag.parse(args.metric)
    except (BadExponents, ValueError) as exc:
        raise _UsageError(str(exc)) from None
    if isinstance(doc_a, PolynomialKnot) and isinstance(doc_b, PolynomialKnot):
        value = distance(doc_a, doc_b, tag)
    elif isinstance(doc_a, SequencePoint) and isinstance(doc_b, SequencePoint):
        value = seq_distance(doc_a, doc_b, tag)
    else:
        raise _UsageError("operands live in different spaces")
    print(format_scalar(value))
    return EXIT_CERTIFIED


def _cmd_project(args) -> int:
    from .core import project_linear

    knot = _load_knot(args.path)
    cert = certify_embedding(knot)
    if not cert.is_certified():
        print(f"not certified: {cert.verdict}", file=sys.stderr)
        return formats.verdict_exit_code(cert.verdict)
    seq = project_linear(knot.with_verdict(cert.verdict))
    _emit(formats.serialize_sequence(seq), args.out)
    return EXIT_CERTIFIED


def _cmd_embed_linear(args) -> int:
    from .core import embed_linear

    seq = _load_sequence(args.path)
    knot = embed_linear(seq)
    _emit(formats.serialize_knot(knot), args.out)
    return EXIT_CERTIFIED


def _cmd_linearize(args) -> int:
    if args.steps < 2:
        raise _UsageError("--steps must be at least 2")
    knot = _load_knot(args.path)
    cert = certify_embedding(knot)
    if not cert.is_certified():
        print(f"input not certified: {cert.verdict}", file=sys.stderr)
        return formats.verdict_exit_code(cert.verdict)
    try:
        trace = trace_linearization(knot.with_verdict(cert.verdict), args.steps)
    except CertificationFailed as exc:
        print(f"certification failed along the trace at parameter "
              f"{exc.parameter}: implementation bug", file=sys.stderr)
        return EXIT_TRACE_FAILURE
    _emit(formats.serialize_trace(trace), args.out)
    return EXIT_CERTIFIED


def _cmd_contract(args) -> int:
    if args.steps < 2:
        raise _UsageError("--steps must be at least 2")
    seq = _load_sequence(args.path)
    trace = contract_trace(seq, args.steps)
    _emit(formats.serialize_trace(trace), args.out)
    return EXIT_CERTIFIED


# -- witness subcommand -------------------------------------------------------------


def _parse_flag_rational(args, name: str) -> Fraction | None:
    raw = getattr(args, name)
    if raw is None:
        return None
    try:
        return parse_rational(str(raw))
    except ValueError as exc:
        raise _UsageError(f"--{name}: {exc}") from None


def _cmd_witness(args) -> int:
    r = _parse_flag_rational(args, "r")
    s = _parse_flag_rational(args, "s")
    delta = _parse_flag_rational(args, "delta")
    epsilon = _parse_flag_rational(args, "epsilon")
    # Strictness families carry --delta (or no region data at all for p-inf);
    # inclusion witnesses carry --epsilon / --constraint.
    if args.kind == "s-b":
        strict_mode = True
    elif args.kind == "s-box":
        strict_mode = False
    elif args.kind == "p-inf":
        strict_mode = not (args.constraint or epsilon is not None)
    else:
        strict_mode = delta is not None
    try:
        if strict_mode:
            report = _strictness_report(args, r, s, delta)
        else:
            report = _inclusion_report(args, r, s, epsilon)
    except ParameterBoundViolated as exc:
        raise _UsageError(str(exc)) from None
    except (BadExponents, PolyknotError) as exc:
        raise _UsageError(str(exc)) from None
    text = formats.canonical_json(report)
    sys.stdout.write(text)
    if args.out is not None:
        formats.write_text_atomic(args.out, text)
    return EXIT_CERTIFIED if report["all_pass"] else EXIT_REFUTED


def _strictness_report(args, r, s, delta) -> dict:
    kind = {"p-inf": StrictnessKind.PRODUCT_VS_SUP,
            "inf-r": StrictnessKind.SUP_VS_LP,
            "r-s": StrictnessKind.LP_VS_LP,
            "s-b": StrictnessKind.LP_VS_BOX}[args.kind]
    inst = strictness_instance(kind, n=args.n, r=r, s=s, delta=delta, k=args.k)
    verification = inst.verify()
    return {
        "mode": "strictness",
        "kind": args.kind,
        "seed": args.seed,
        "parameters": {**inst.parameters, "k": inst.k},
        "member": formats.knot_to_document(_exact_or_report_knot(inst.member)),
        "claims": verification["claims"],
        "member_certified": verification["member_certified"],
        "all_pass": verification["all_pass"],
    }


def _exact_or_report_knot(knot: PolynomialKnot) -> PolynomialKnot:
    """Round interval coefficients to printable rationals for the report
    (display only; the verification above used the certified values)."""
    if knot.is_exact():
        return knot
    entries = {}
    for (i, j), v in knot.table.entries.items():
        if hasattr(v, "mid_fraction"):
            entries[(i, j)] = v.mid_fraction().limit_denominator(10 ** 12)
        else:
            entries[(i, j)] = v
    return make_knot(knot.dimension, entries)


def _base_phi(n: int) -> PolynomialKnot:
    return make_knot(n, {(1, 1): 1}).with_verdict(Certified())


def _parse_constraints(raw_list) -> ProductOpenSpec:
    explicit = {}
    for raw in raw_list:
        parts = raw.split(",")
        if len(parts) != 4:
            raise _UsageError(f"--constraint needs i,j,lo,hi: {raw!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
            lo = None if parts[2] in ("-inf", "") else parse_rational(parts[2])
            hi = None if parts[3] in ("inf", "") else parse_rational(parts[3])
        except ValueError as exc:
            raise _UsageError(f"--constraint {raw!r}: {exc}") from None
        explicit[(i, j)] = OpenInterval(lo, hi)
    return ProductOpenSpec(explicit)


def _inclusion_report(args, r, s, epsilon) -> dict:
    rng = Random(args.seed)
    n = args.n
    phi = _base_phi(n)
    total = args.samples
    if args.kind == "p-inf":
        spec = _parse_constraints(args.constraint)
        delta = witness_product_in_inf(spec, phi)
        inner = BallSpec(phi, delta, MetricTag.sup(), Space.KNOTS_N, n=n)
        passed = sum(open_contains(spec, sample_ball_member(inner, rng))
                     for _ in range(total))
        payload = {"delta": str(delta)}
    elif args.kind == "inf-r":
        if r is None or epsilon is None:
            raise _UsageError("inf-r inclusion needs --r and --epsilon")
        outer = BallSpec(phi, epsilon, MetricTag.sup(), Space.KNOTS_N, n=n)
        delta = witness_inf_in_r(outer, phi, r)
        inner = BallSpec(phi, lower_bound(delta), MetricTag.lp(r),
                         Space.KNOTS_N, n=n)
        passed = sum(ball_contains(outer, sample_ball_member(inner, rng))
                     for _ in range(total))
        payload = {"delta": format_scalar(delta)}
    elif args.kind == "r-s":
        if r is None or s is None or epsilon is None:
            raise _UsageError("r-s inclusion needs --r, --s, and --epsilon")
        outer = BallSpec(phi, epsilon, MetricTag.lp(r), Space.KNOTS_N, n=n)
        delta = witness_r_in_s(outer, phi, s)
        inner = BallSpec(phi, lower_bound(delta), MetricTag.lp(s),
                         Space.KNOTS_N, n=n)
        passed = sum(ball_contains(outer, sample_ball_member(inner, rng))
                     for _ in range(total))
        payload = {"delta": format_scalar(delta)}
    elif args.kind == "s-box":
        if epsilon is None:
            raise _UsageError("s-box inclusion needs --epsilon")
        s_exp = s if s is not None else Fraction(1)
        outer = BallSpec(phi, epsilon, MetricTag.lp(s_exp), Space.KNOTS_N, n=n)
        box = witness_s_in_box(outer, phi)
        delta = box.rule.delta
        passed = 0
        for _ in range(total):
            table = sample_box_member(box, phi.table, rng)
            point = PolynomialKnot(table, max(n, table.max_component()))
            ok = open_contains(box, point) and ball_contains(outer, point)
            d1 = distance(phi, point, MetricTag.lp(1))
            ok = ok and upper_bound(d1) <= delta * delta
            passed += ok
        payload = {
            "delta": str(delta),
            "box": {"rule": "symmetric-power", "delta": str(delta),
                    "center": formats.knot_to_document(phi)},
        }
    else:  # pragma: no cover - argparse limits choices
        raise _UsageError(f"unknown kind {args.kind}")
    return {
        "mode": "inclusion",
        "kind": args.kind,
        "seed": args.seed,
        "parameters": {k: v for k, v in
                       (("n", n), ("r", str(r) if r is not None else None),
                        ("s", str(s) if s is not None else None),
                        ("epsilon", str(epsilon) if epsilon is not None else None))
                       if v is not None},
        **payload,
        "samples": {"total": total, "passed": passed},
        "all_pass": passed == total,
    }


# -- plot subcommand -----------------------------------------------------------------


def _cmd_plot(args) -> int:
    try:
        lo = parse_rational(args.range[0])
        hi = parse_rational(args.range[1])
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    if lo >= hi:
        raise _UsageError("--range needs a < b")
    if args.samples < 2:
        raise _UsageError("--samples must be at least 2")
    doc = formats.detect_and_parse(_read(args.path), args.path)
    components = tuple(args.components)
    if isinstance(doc, PolynomialKnot):
        if args.format == "csv":
            content = plotting.knot_curve_csv(doc, lo, hi, args.samples)
        else:
            try:
                content = plotting.knot_curve_svg(doc, lo, hi, args.samples,
                                                  components)
            except ValueError as exc:
                raise _UsageError(str(exc)) from None
        _emit(content, args.out)
        return EXIT_CERTIFIED
    from .homotopy import HomotopyTrace

    if isinstance(doc, HomotopyTrace):
        if args.out is None:
            raise _UsageError("plotting a trace needs --out for frame files")
        try:
            frames = plotting.trace_frame_documents(doc, lo, hi, args.samples,
                                                    args.format, components)
        except ValueError as exc:
            raise _UsageError(str(exc)) from None
        base, ext = os.path.splitext(args.out)
        if not ext:
            ext = "." + args.format
        for suffix, content in frames:
            formats.write_text_atomic(f"{base}_{suffix}{ext}", content)
        print(f"wrote {len(frames)} frames to {base}_*{ext}")
        return EXIT_CERTIFIED
    raise _UsageError("plot needs a knot or trace document")


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
