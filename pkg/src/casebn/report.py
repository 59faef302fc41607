"""Structured output shared by the command line and the HTTP service.

One canonical JSON encoding (sorted keys, compact separators) is the
machine contract: identical inputs must produce byte-identical payloads
whichever surface rendered them.
"""

from __future__ import annotations

import json

from .casemodel import PosteriorTrace
from .dna import LrReport
from .network import Distribution


def to_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def distribution_payload(dist: Distribution) -> dict:
    return dict(dist.probabilities)


def trace_payload(trace: PosteriorTrace) -> dict:
    return {
        "scenario": trace.scenario,
        "watched": list(trace.watched),
        "steps": [
            {
                "index": step.index,
                "label": step.label,
                "evidence": dict(step.evidence),
                "posteriors": {
                    var: distribution_payload(d) for var, d in step.posteriors.items()
                },
            }
            for step in trace.steps
        ],
    }


def lr_report_payload(report: LrReport) -> dict:
    return {
        "markers": [
            {"marker": m.marker, "p_hp": m.p_hp, "p_hd": m.p_hd, "lr": m.lr}
            for m in report.markers
        ],
        "product_rule_lr": report.product_rule,
        "exact_lr": report.exact,
        "mixture": {pop: w for pop, w in report.mixture.items()},
        "profile": {m: list(pair) for m, pair in report.profile.genotypes.items()},
    }


def validation_payload(name: str, violations: list[str]) -> dict:
    return {"network": name, "ok": not violations, "violations": violations}


def marginals_payload(
    session_id: str, evidence: dict[str, str], marginals: dict[str, Distribution]
) -> dict:
    return {
        "session": session_id,
        "evidence": dict(evidence),
        "marginals": {var: distribution_payload(d) for var, d in marginals.items()},
    }


def error_payload(message: str, violations: list[str] | None = None) -> dict:
    return {"error": message, "violations": violations or []}


# --- Human-readable tables --------------------------------------------------


def trace_table(trace: PosteriorTrace) -> str:
    lines = [f"scenario: {trace.scenario}"]
    header = ["step", "label"] + [
        f"{var}={state}"
        for var in trace.watched
        for state in trace.steps[0].posteriors[var].probabilities
    ]
    rows = []
    for step in trace.steps:
        cells = [str(step.index), step.label]
        for var in trace.watched:
            for p in step.posteriors[var].probabilities.values():
                cells.append(f"{p:.4f}")
        rows.append(cells)
    lines += _format_table(header, rows)
    return "\n".join(lines) + "\n"


def lr_table(report: LrReport) -> str:
    header = ["marker", "P(E|Hp)", "P(E|Hd)", "LR"]
    rows = [
        [m.marker, f"{m.p_hp:.4f}", f"{m.p_hd:.4f}", f"{m.lr:.4f}"]
        for m in report.markers
    ]
    rows.append(["product rule", "", "", f"{report.product_rule:.4f}"])
    rows.append(["exact", "", "", f"{report.exact:.4f}"])
    return "\n".join(_format_table(header, rows)) + "\n"


def _format_table(header: list[str], rows: list[list[str]]) -> list[str]:
    widths = [
        max(len(header[i]), *(len(r[i]) for r in rows)) if rows else len(header[i])
        for i in range(len(header))
    ]
    def fmt(cells):
        return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    sep = "-" * (sum(widths) + 2 * (len(widths) - 1))
    return [fmt(header), sep] + [fmt(r) for r in rows]
