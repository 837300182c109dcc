"""
Hurwitz CF Toolkit - Report Rendering

This module turns toolkit results into reports and renders them as JSON, CSV
or a plain-text table. All integers leave as decimal strings and exact values
as canonical literals, so identical requests give byte-identical output.
"""

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from rich.console import Console
from rich.table import Table

from .exact_reals import enclose, format_enclosure, format_exact
from .types import (
    CDQuantities, CheckRow, ConstantCheck, Convergent, Enclosure, GCount, LinkageRow, OutputFormat,
    PartialQuotientSeq, RatioCheck, SandwichReport, SCHEMA_VERSION, TransformResult,
    VerificationReport, XRhoResult
)

CHECK_COLUMNS = ("n", "a_n", "q_n", "check_name", "lhs", "rhs", "pass")
WITNESS_COLUMNS = ("p", "q", "quality")
TRACE_COLUMNS = ("n", "b_n", "in_S", "in_Sprime", "settled")


@dataclass
class Report:
    """
    A JSON document plus the table used for CSV and plain output.

    With ``records`` the JSON form is JSON lines: the document on the first
    line, then one record per line.
    """
    fields: Dict[str, Any]
    columns: Sequence[str] = ()
    rows: List[Sequence[Any]] = field(default_factory=list)
    records: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def has_table(self) -> bool:
        return bool(self.columns)


def _int(value: Optional[int]) -> Optional[str]:
    return None if value is None else str(value)


def _flag(value: bool) -> str:
    return "true" if value else "false"


def enclosure_fields(enclosure: Enclosure) -> Dict[str, str]:
    return {
        "lo": format_exact(enclosure.lo),
        "hi": format_exact(enclosure.hi),
        "decimal": format_enclosure(enclosure),
    }


def _convergent_pairs(convergents: Sequence[Convergent]) -> List[List[str]]:
    return [[str(c.p), str(c.q)] for c in convergents]


def expansion_report(seq: PartialQuotientSeq, convergents: Sequence[Convergent]) -> Report:
    fields = {
        "schema": SCHEMA_VERSION,
        "kind": seq.kind.value,
        "terms": [str(t) for t in seq.terms],
        "finite": seq.finite,
        "convergents": _convergent_pairs(convergents),
    }
    rows = []
    for index, term in enumerate(seq.terms):
        p, q = (convergents[index].p, convergents[index].q) if index < len(convergents) else ("", "")
        rows.append((index, term, p, q))
    return Report(fields, ("n", "a_n", "p_n", "q_n"), rows)


def transform_report(result: TransformResult) -> Report:
    trace = result.trace
    steps = [
        {"n": str(step.index), "b_n": str(step.b), "in_S": step.in_ones,
         "in_Sprime": step.selected, "settled": step.settled}
        for step in trace.steps
    ]
    fields = {
        "schema": SCHEMA_VERSION,
        "S": [str(step.index) for step in trace.steps if step.in_ones],
        "S_prime": [str(step.index) for step in trace.steps if step.selected],
        "funny": [{"c": str(term.c), "epsilon": str(term.epsilon)} for term in result.funny.terms],
        "terms": [str(t) for t in result.hurwitz.terms],
        "omitted": [str(index) for index in trace.omitted],
        "finite": trace.finite,
        "tie_adjusted": trace.tie_adjusted,
    }
    rows = [(s.index, s.b, _flag(s.in_ones), _flag(s.selected), _flag(s.settled)) for s in trace.steps]
    return Report(fields, TRACE_COLUMNS, rows, steps)


def _check_row(row: CheckRow) -> Dict[str, Any]:
    return {
        "n": _int(row.n),
        "a_n": _int(row.a_n),
        "q_n": _int(row.q_n),
        "check_name": row.check_name,
        "lhs": row.lhs,
        "rhs": row.rhs,
        "pass": row.passed,
    }


def verification_report(reports: Sequence[VerificationReport]) -> Report:
    """One report, or several for a sampled run, merged in input order"""
    fields: Dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "prop": reports[0].prop if reports else "",
        "passed": all(report.passed for report in reports),
        "checks": sum(len(report.rows) for report in reports),
        "failures": sum(len(report.failures) for report in reports),
        "subjects": [
            {"subject": report.subject, "passed": report.passed,
             "rows": [_check_row(row) for row in report.rows]}
            for report in reports
        ],
    }
    rows = [
        ("" if row.n is None else row.n, "" if row.a_n is None else row.a_n,
         "" if row.q_n is None else row.q_n, row.check_name, row.lhs, row.rhs, _flag(row.passed))
        for report in reports for row in report.rows
    ]
    return Report(fields, CHECK_COLUMNS, rows)


def xrho_report(result: XRhoResult, subject: str, witnesses: bool = False,
                decimal: bool = False) -> Report:
    fields: Dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "x": subject,
        "delta": format_exact(result.delta),
        "rho": str(result.rho),
        "method": result.method.value,
        "count": str(result.count),
        "log_rho": enclosure_fields(result.log_rho),
        "x_rho": enclosure_fields(result.value),
    }
    rows: List[Sequence[Any]] = []
    if witnesses:
        fields["witnesses"] = [
            {"p": str(r.p), "q": str(r.q), "quality": format_exact(r.quality), "source": r.source}
            for r in result.records
        ]
        rows = [(r.p, r.q, _render_quality(r.quality, decimal)) for r in result.records]
        return Report(fields, WITNESS_COLUMNS, rows)
    return Report(fields)


def _render_quality(value: Any, decimal: bool) -> str:
    if decimal:
        enclosure = enclose(value, 96)
        if enclosure is not None:
            return format_enclosure(enclosure)
    return format_exact(value)


def sandwich_report(report: SandwichReport, subject: str) -> Report:
    fields = {
        "schema": SCHEMA_VERSION,
        "x": subject,
        "n": str(report.n),
        "delta": format_exact(report.delta),
        "counts": [str(report.count_lower), str(report.count_mid), str(report.count_upper)],
        "counts_ok": report.counts_ok,
        "q_n": str(report.q_n),
        "product_lower": format_exact(report.product_lower),
        "product_upper": format_exact(report.product_upper),
        "log_sum_lower": enclosure_fields(report.logsum_lower),
        "log_sum_upper": enclosure_fields(report.logsum_upper),
        "log_q_n": enclosure_fields(report.log_qn),
        "log_ok": report.log_ok,
        "passed": report.passed,
    }
    return Report(fields)


def cd_report(quantities: CDQuantities, subject: str) -> Report:
    fields = {
        "schema": SCHEMA_VERSION,
        "x": subject,
        "n": str(quantities.n),
        "window": [str(quantities.window[0]), str(quantities.window[1])],
        "finite_index_proxy": True,
        "delta": format_exact(quantities.delta),
        "alpha_n": enclosure_fields(quantities.alpha_n),
        "alpha_minus": enclosure_fields(quantities.alpha_minus),
        "alpha_plus": enclosure_fields(quantities.alpha_plus),
        "densities": {
            threshold: {"lower": format_exact(low), "upper": format_exact(high)}
            for threshold, (low, high) in quantities.densities.items()
        },
        "e_n": format_exact(quantities.e_n),
        "f_n": format_exact(quantities.f_n),
        "rate_lower": enclosure_fields(quantities.rate_lower),
        "rate_upper": enclosure_fields(quantities.rate_upper),
    }
    rows = [(threshold, format_exact(low), format_exact(high))
            for threshold, (low, high) in quantities.densities.items()]
    return Report(fields, ("threshold", "density_lower", "density_upper"), rows)


def gcount_report(result: GCount, params: Dict[str, str], ratios: RatioCheck,
                  witnesses: bool = False, linkage: Sequence[LinkageRow] = ()) -> Report:
    fields: Dict[str, Any] = {"schema": SCHEMA_VERSION, **params,
                              "rho": str(result.rho), "count": str(result.count)}
    fields["ratio_check"] = {
        "min_q": str(ratios.min_q),
        "tolerance": format_exact(ratios.tolerance),
        "checked": str(ratios.checked),
        "max_deviation": format_exact(ratios.max_deviation) if ratios.max_deviation is not None else None,
        "passed": ratios.passed,
    }
    if linkage:
        fields["linkage"] = [
            {"rho": str(row.rho), "g_count": str(row.g_count), "x_count": str(row.x_count),
             "gap": str(row.gap)}
            for row in linkage
        ]
    if witnesses:
        fields["witnesses"] = [
            {"p": str(w.p), "q": str(w.q), "value": format_exact(w.value),
             "ratio": format_exact(r.ratio), "deviation": format_exact(r.deviation),
             "bound": format_exact(r.bound), "within_bound": r.within_bound}
            for w, r in zip(result.witnesses, ratios.rows)
        ]
        return Report(fields, ("p", "q", "value", "ratio", "deviation", "within_bound"),
                      [(w.p, w.q, format_exact(w.value), format_exact(r.ratio), format_exact(r.deviation),
                        _flag(r.within_bound)) for w, r in zip(result.witnesses, ratios.rows)])
    if linkage:
        return Report(fields, ("rho", "g_count", "x_count", "gap"),
                      [(row.rho, row.g_count, row.x_count, row.gap) for row in linkage])
    return Report(fields)


def constant_report(check: ConstantCheck) -> Report:
    return Report({
        "schema": SCHEMA_VERSION,
        "lhs": enclosure_fields(check.lhs),
        "rhs": enclosure_fields(check.rhs),
        "passed": check.passed,
    })


def _scalar_rows(fields: Dict[str, Any]) -> List[Sequence[Any]]:
    rows = []
    for key, value in fields.items():
        if isinstance(value, dict) and "decimal" in value:
            rows.append((key, value["decimal"]))
        elif isinstance(value, bool):
            rows.append((key, _flag(value)))
        elif isinstance(value, (str, int)):
            rows.append((key, str(value)))
        elif isinstance(value, list) and all(isinstance(v, str) for v in value):
            rows.append((key, ",".join(value)))
    return rows


def render_json(report: Report) -> str:
    if report.records:
        lines = [report.fields, *report.records]
        return "".join(json.dumps(line, separators=(",", ":"), ensure_ascii=False) + "\n" for line in lines)
    return json.dumps(report.fields, indent=2, ensure_ascii=False) + "\n"


def render_csv(report: Report) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if report.has_table:
        writer.writerow(report.columns)
        writer.writerows(report.rows)
    else:
        writer.writerow(("field", "value"))
        writer.writerows(_scalar_rows(report.fields))
    return buffer.getvalue()


def render_plain(report: Report) -> str:
    console = Console(file=io.StringIO(), width=120, color_system=None, force_terminal=False)
    summary = Table(show_header=False, box=None)
    for key, value in _scalar_rows(report.fields):
        summary.add_row(key, value)
    console.print(summary)
    if report.has_table:
        table = Table(*report.columns)
        for row in report.rows:
            table.add_row(*(str(cell) for cell in row))
        console.print(table)
    return console.file.getvalue()


def render(report: Report, output_format: OutputFormat) -> str:
    if output_format is OutputFormat.CSV:
        return render_csv(report)
    if output_format is OutputFormat.PLAIN:
        return render_plain(report)
    return render_json(report)
