"""Text and JSON renderings of validation results.

Both renderings are produced from the same :class:`ValidationReport`.
"""

from __future__ import annotations

import json
from importlib import resources

from .engine import LabelledGraph, ValidationReport
from .rdf import IRI, Term


def term_str(t: Term) -> str:
    return t.value if isinstance(t, IRI) else t.n3()


def labelling_rows(lg: LabelledGraph) -> list[dict]:
    return [{"node": term_str(x), "labels": sorted(lg.label[x])} for x in sorted(lg.label)]


def report_to_dict(report: ValidationReport) -> dict:
    return {
        "valid": report.valid,
        "focusNode": term_str(report.focus_node) if report.focus_node is not None else None,
        "shape": report.shape,
        "labelling": labelling_rows(report.labelling) if report.labelling is not None else [],
        "violations": [
            {
                "node": term_str(v.node),
                "name": v.name,
                "constraint": str(v.constraint),
                "reasons": [str(r) for r in v.reasons],
                "extension": v.extension,
            }
            for v in report.violations
        ],
    }


def report_to_json(report: ValidationReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def report_schema() -> dict:
    text = (resources.files("shaperec") / "report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def report_to_text(report: ValidationReport, color: bool = False) -> str:
    d = report_to_dict(report)
    verdict = "valid" if d["valid"] else "invalid"
    if color:
        verdict = ("\x1b[32m" if d["valid"] else "\x1b[31m") + verdict + "\x1b[0m"
    lines = [f"{d['focusNode']} against {d['shape']}: {verdict}"]
    labelled = [row for row in d["labelling"] if row["labels"]]
    if labelled:
        lines.append("labels:")
        lines.extend(f"  {row['node']}: {', '.join(row['labels'])}" for row in labelled)
    if d["violations"]:
        lines.append(f"violations ({len(d['violations'])}):")
        for v in d["violations"]:
            flag = " [extension]" if v["extension"] else ""
            lines.append(f"  {v['node']} as {v['name']}{flag}")
            lines.extend(f"    - {r}" for r in v["reasons"])
    return "\n".join(lines) + "\n"
