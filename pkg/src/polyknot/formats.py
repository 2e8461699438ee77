"""Text formats for knots, sequences, traces, certificates, and reports.

Documents are UTF-8 JSON.  Coefficient values travel as exact strings:
"p/q" rationals or decimal literals, both parsed as exact rationals (never
binary floats).  Canonical serialization sorts coefficient entries by
(i, j) and is byte-stable, so parse/serialize round trips are identity on
the text.  Interval-valued tables are in-memory objects; they appear in
reports as decimal interval strings but are not a file interchange format.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction

from .core import (
    Certified,
    Inconclusive,
    PolynomialKnot,
    Refuted,
    SequencePoint,
    Uncertified,
    make_knot,
)
from .certifier import CertCertificate
from .errors import ParseError
from .homotopy import HomotopyTrace, TraceKind, TraceSample
from .scalars import format_rational, format_scalar, is_exact, parse_rational


# -- scalars -------------------------------------------------------------------


def scalar_to_text(value) -> str:
    if is_exact(value):
        return format_rational(value)
    return format_scalar(value)


def _exact_value_text(value, where: str) -> str:
    if not is_exact(value):
        raise ParseError("interval-valued entries cannot be written to exact "
                         "text documents", where)
    return format_rational(value)


# -- knot documents --------------------------------------------------------------


def knot_to_document(knot: PolynomialKnot) -> dict:
    return {
        "dimension": knot.dimension,
        "coefficients": [
            {"i": i, "j": j, "value": _exact_value_text(v, f"entry ({i},{j})")}
            for (i, j), v in knot.table.sorted_items()
        ],
    }


def serialize_knot(knot: PolynomialKnot) -> str:
    return canonical_json(knot_to_document(knot))


def knot_from_document(doc, where: str = "knot document") -> PolynomialKnot:
    if not isinstance(doc, dict):
        raise ParseError("expected a JSON object", where)
    if "dimension" not in doc:
        raise ParseError("missing field 'dimension'", where)
    if "coefficients" not in doc:
        raise ParseError("missing field 'coefficients'", where)
    dim = doc["dimension"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError("'dimension' must be a positive integer", where)
    coeffs = doc["coefficients"]
    if not isinstance(coeffs, list):
        raise ParseError("'coefficients' must be a list", where)
    entries = {}
    for pos, rec in enumerate(coeffs):
        loc = f"{where}, coefficients[{pos}]"
        if not isinstance(rec, dict):
            raise ParseError("each coefficient must be an object", loc)
        for field in ("i", "j", "value"):
            if field not in rec:
                raise ParseError(f"missing field '{field}'", loc)
        i, j = rec["i"], rec["j"]
        if not isinstance(i, int) or i < 1:
            raise ParseError("'i' must be a positive integer", loc)
        if not isinstance(j, int) or j < 0:
            raise ParseError("'j' must be a nonnegative integer", loc)
        try:
            value = parse_rational(str(rec["value"]))
        except ValueError as exc:
            raise ParseError(str(exc), loc) from None
        if (i, j) in entries:
            raise ParseError(f"duplicate index ({i}, {j})", loc)
        entries[(i, j)] = value
    try:
        return make_knot(dim, entries)
    except Exception as exc:
        raise ParseError(str(exc), where) from None


def parse_knot(text: str, where: str = "knot document") -> PolynomialKnot:
    return knot_from_document(_load_json(text, where), where)


# -- sequence documents -----------------------------------------------------------


def sequence_to_document(x: SequencePoint) -> dict:
    return {
        "entries": [
            {"i": i, "value": _exact_value_text(v, f"entry {i}")}
            for i, v in x.sorted_items()
        ],
    }


def serialize_sequence(x: SequencePoint) -> str:
    return canonical_json(sequence_to_document(x))


def sequence_from_document(doc, where: str = "sequence document") -> SequencePoint:
    if not isinstance(doc, dict) or "entries" not in doc:
        raise ParseError("expected an object with field 'entries'", where)
    entries = {}
    for pos, rec in enumerate(doc["entries"]):
        loc = f"{where}, entries[{pos}]"
        if not isinstance(rec, dict) or "i" not in rec or "value" not in rec:
            raise ParseError("each entry needs fields 'i' and 'value'", loc)
        i = rec["i"]
        if not isinstance(i, int) or i < 1:
            raise ParseError("'i' must be a positive integer", loc)
        try:
            value = parse_rational(str(rec["value"]))
        except ValueError as exc:
            raise ParseError(str(exc), loc) from None
        if i in entries:
            raise ParseError(f"duplicate index {i}", loc)
        entries[i] = value
    try:
        return SequencePoint(entries)
    except Exception as exc:
        raise ParseError(str(exc), where) from None


def parse_sequence(text: str, where: str = "sequence document") -> SequencePoint:
    return sequence_from_document(_load_json(text, where), where)


# -- trace documents ---------------------------------------------------------------


def _state_to_document(state) -> dict:
    if isinstance(state, PolynomialKnot):
        return knot_to_document(state)
    return sequence_to_document(state)


def _state_from_document(doc, where: str):
    if isinstance(doc, dict) and "dimension" in doc:
        return knot_from_document(doc, where)
    return sequence_from_document(doc, where)


def trace_to_document(trace: HomotopyTrace) -> dict:
    return {
        "kind": trace.kind.value,
        "steps": len(trace.samples),
        "source": _state_to_document(trace.samples[-1].state
                                     if trace.kind is TraceKind.LINEARIZE
                                     else trace.samples[0].state),
        "samples": [
            {
                "parameter": _exact_value_text(s.parameter, "trace parameter"),
                "state": _state_to_document(s.state),
                "verdict": s.verdict,
            }
            for s in trace.samples
        ],
    }


def serialize_trace(trace: HomotopyTrace) -> str:
    return canonical_json(trace_to_document(trace))


def parse_trace(text: str, where: str = "trace document") -> HomotopyTrace:
    doc = _load_json(text, where)
    if not isinstance(doc, dict) or "kind" not in doc or "samples" not in doc:
        raise ParseError("expected an object with 'kind' and 'samples'", where)
    try:
        kind = TraceKind(doc["kind"])
    except ValueError:
        raise ParseError(f"unknown trace kind {doc['kind']!r}", where) from None
    samples = []
    for pos, rec in enumerate(doc["samples"]):
        loc = f"{where}, samples[{pos}]"
        for field in ("parameter", "state", "verdict"):
            if field not in rec:
                raise ParseError(f"missing field '{field}'", loc)
        try:
            parameter = parse_rational(str(rec["parameter"]))
        except ValueError as exc:
            raise ParseError(str(exc), loc) from None
        state = _state_from_document(rec["state"], loc)
        samples.append(TraceSample(parameter, state, str(rec["verdict"])))
    try:
        return HomotopyTrace(kind, tuple(samples))
    except ValueError as exc:
        raise ParseError(str(exc), where) from None


# -- certificates and reports -------------------------------------------------------


def certificate_to_document(cert: CertCertificate) -> dict:
    doc: dict = {"verdict": str(cert.verdict)}
    if cert.rule:
        doc["rule"] = cert.rule
    if isinstance(cert.verdict, Inconclusive):
        doc["depth"] = cert.verdict.depth
    if cert.witness is not None:
        s, t = cert.witness
        doc["witness"] = {"s": scalar_to_text(s), "t": scalar_to_text(t)}
    doc["evidence"] = list(cert.evidence)
    return doc


def serialize_certificate(cert: CertCertificate) -> str:
    return canonical_json(certificate_to_document(cert))


# -- shared helpers -------------------------------------------------------------------


def _load_json(text: str, where: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: "
                         f"{exc.msg}", where) from None


def canonical_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def detect_and_parse(text: str, where: str):
    """Parse a document as knot, sequence, or trace based on its fields."""
    doc = _load_json(text, where)
    if isinstance(doc, dict) and "samples" in doc and "kind" in doc:
        return parse_trace(text, where)
    if isinstance(doc, dict) and "dimension" in doc:
        return knot_from_document(doc, where)
    if isinstance(doc, dict) and "entries" in doc:
        return sequence_from_document(doc, where)
    raise ParseError("unrecognized document shape", where)


def write_text_atomic(path: str, text: str):
    """Write via a temporary file and rename, so failures leave no partial
    output behind."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".polyknot-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def verdict_exit_code(verdict) -> int:
    """The CLI exit-code table: 0 certified, 1 refuted, 2 inconclusive."""
    if isinstance(verdict, Certified):
        return 0
    if isinstance(verdict, Refuted):
        return 1
    if isinstance(verdict, (Inconclusive, Uncertified)):
        return 2
    raise TypeError(f"not a verdict: {verdict!r}")
