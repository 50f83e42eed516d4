"""Text and structured rendering of verification results."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .checker import PRIMITIVE, REJECTED, VERIFIED, TheoryResult, VerificationReport
from .deduction import provenance


@dataclass
class FileResult:
    path: str
    theory: TheoryResult


def summary(results: list[FileResult]) -> str:
    reports = [r for f in results for r in f.theory.reports]
    verified = sum(r.verdict == VERIFIED for r in reports)
    primitives = [r.number for r in reports if r.verdict == PRIMITIVE]
    rejected = sum(r.verdict == REJECTED for r in reports)
    text = f"{verified} verified, {len(primitives)} primitive"
    if primitives:
        text += f" ({', '.join(primitives)})"
    if rejected:
        text += f", {rejected} rejected"
    return text


def _block(report: VerificationReport, path: str, trace: bool) -> list[str]:
    head = f"{report.kind} {report.number}: {report.verdict}"
    if report.verdict == PRIMITIVE:
        return [head + " (admitted without proof)"]
    out = [head + f" ({report.fact_count} facts)"]
    for d in report.diagnostics:
        out.append(f"  error {d.render(path)}")
    for g in report.goals:
        out.append(f"  goal {g['judgment']}  [fact #{g['fact']}]")
    for p in report.diagrammatic_posits:
        out.append(f"  diagrammatic posit: {p}")
    if report.primitive_dependencies:
        out.append(f"  primitive dependencies: {', '.join(report.primitive_dependencies)}")
    for line in report.reconstructed:
        out.append(f"  reconstructed: {line}")
    if trace and report.env is not None:
        out.append("  production (topological order):")
        for node in report.production_trace:
            after = f"  after {', '.join(map(str, node['after']))}" if node["after"] else ""
            out.append(f"    [{node['step']}] {node['op']}: {node['detail']}{after}")
        out.append("  deduction:")
        for node in report.deduction_trace:
            out.append(f"    {node['label']} {node['op']}: {', '.join(node['conclusions'])}")
        for g in report.goals:
            out.append(f"  provenance of {g['judgment']}:")
            out += ["    " + line for line in provenance(report.env, g["fact"]).render()]
    return out


def render_text(results: list[FileResult], trace: bool = False) -> str:
    lines = []
    for f in results:
        lines.append(f"== {f.path}")
        for r in f.theory.reports:
            lines += _block(r, f.path, trace)
    lines.append(summary(results))
    return "\n".join(lines) + "\n"


def render_structured(results: list[FileResult]) -> str:
    payload = {
        "files": [
            {
                "path": f.path,
                "theory": f.theory.name,
                "verdict": VERIFIED if f.theory.verified else REJECTED,
                "reports": [r.to_dict() for r in f.theory.reports],
            }
            for f in results
        ],
        "summary": summary(results),
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
