"""JSON and plain-text rendering of class-number reports."""

from __future__ import annotations

from fractions import Fraction

from .formulas import NORM, ClassNumberReport

REPORT_SCHEMA = "torusclass-report/1"


def encode_value(x):
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    return x


def decode_value(x):
    if isinstance(x, dict) and set(x) == {"num", "den"}:
        return Fraction(x["num"], x["den"])
    return x


def result_symbol(kind: str) -> str:
    return "h_{T,S}" if kind == NORM else "h_{T',S}"


def format_value(x) -> str:
    if isinstance(x, Fraction) and x.denominator == 1:
        return str(x.numerator)
    return str(x)


def report_to_json(r: ClassNumberReport) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "torus": r.torus_kind,
        "extension": r.extension_label,
        "S": [str(v) for v in r.S],
        "terms": {k: encode_value(v) for k, v in r.terms.items()},
        "h": encode_value(r.h_result),
        "is_integral": r.is_integral,
        "tamagawa": encode_value(r.tamagawa),
        "crosschecks": [
            {"term": c.term, "closed_form": c.closed_form, "brute_force": c.brute_force,
             "agree": c.agree, "asserted": c.asserted}
            for c in r.crosschecks
        ],
    }


def render_text(r: ClassNumberReport) -> str:
    kind = "norm-one torus" if r.torus_kind == NORM else "dual torus"
    S = "{" + ", ".join(str(v) for v in r.S) + "}"
    lines = [f"{kind} of {r.extension_label}, S = {S}", ""]
    width = max(len(k) for k in r.terms)
    lines.append(f"{'term':<{width}}  value")
    for k, v in r.terms.items():
        lines.append(f"{k:<{width}}  {format_value(v)}")
    if r.crosschecks:
        lines.append("")
        cw = max(len(c.term) for c in r.crosschecks)
        lines.append(f"{'crosscheck':<{cw}}  closed  brute  status")
        for c in r.crosschecks:
            status = "agree" if c.agree else ("DISAGREE" if c.asserted else "differs (not asserted)")
            lines.append(f"{c.term:<{cw}}  {c.closed_form:>6}  {c.brute_force:>5}  {status}")
    lines.append("")
    tail = "" if r.is_integral else "  (NOT A POSITIVE INTEGER: inputs inconsistent)"
    lines.append(f"{result_symbol(r.torus_kind)} = {format_value(r.h_result)}{tail}")
    return "\n".join(lines)
