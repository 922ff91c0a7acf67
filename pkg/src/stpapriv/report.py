"""Statistics, the traceability matrix and JSON export."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Optional

from stpapriv.dsl import SCHEMA_VERSION
from stpapriv.model import (
    AnalysisModel, Assessment, GuideCategory, LinddunCategory, LinkKind,
)
from stpapriv.structure import EdgeKind

MATRIX_COLUMNS = ("scenario", "pcca", "constraint", "vulnerability", "consequence")


@dataclass(frozen=True)
class Stats:
    counts: dict[str, int]
    linddun_histogram: dict[LinddunCategory, int]
    pcca_by_category: dict[GuideCategory, int]
    unassessed_pccas: int

    def to_dict(self) -> dict:
        return {
            "counts": dict(self.counts),
            "linddun_histogram": {k.value: v for k, v in self.linddun_histogram.items()},
            "pcca_by_category": {k.value: v for k, v in self.pcca_by_category.items()},
            "unassessed_pccas": self.unassessed_pccas,
        }

    def flat(self) -> list[tuple[str, int]]:
        rows = list(self.counts.items())
        rows += [(f"linddun.{k.value}", v) for k, v in self.linddun_histogram.items()]
        rows += [(f"pcca.{k.value}", v) for k, v in self.pcca_by_category.items()]
        rows.append(("unassessed_pccas", self.unassessed_pccas))
        return rows


def stats(model: AnalysisModel) -> Stats:
    edges = model.structure.edges
    counts = {
        "goals": len(model.goals),
        "stakeholders": len(model.stakeholders),
        "consequences": len(model.consequences),
        "vulnerabilities": len(model.vulnerabilities),
        "constraints": len(model.constraints),
        "requirements": len(model.requirements),
        "nodes": len(model.structure.nodes),
        "control_actions": sum(e.kind is EdgeKind.CONTROL_ACTION for e in edges),
        "feedback": sum(e.kind is EdgeKind.FEEDBACK for e in edges),
        "pccas": len(model.pccas),
        "scenarios": len(model.scenarios),
        "links": len(model.links),
    }
    histogram = {cat: 0 for cat in LinddunCategory}
    for consequence in model.consequences:
        for tag in consequence.linddun_tags:
            histogram[tag] += 1
    by_category = {cat: 0 for cat in GuideCategory}
    for pcca in model.pccas:
        by_category[pcca.category] += 1
    unassessed = sum(p.assessment is Assessment.UNASSESSED for p in model.pccas)
    return Stats(counts, histogram, by_category, unassessed)


@dataclass(frozen=True)
class TraceRow:
    consequence: str
    vulnerability: Optional[str] = None
    constraint: Optional[str] = None
    pcca: Optional[str] = None
    scenario: Optional[str] = None

    def cells(self) -> tuple[str, ...]:
        return tuple(getattr(self, c) or "" for c in MATRIX_COLUMNS)


def traceability_matrix(model: AnalysisModel) -> list[TraceRow]:
    """One row per maximal chain scenario -> pcca -> constraint -> vulnerability -> consequence.

    Chains are followed backwards from every consequence; where a step has no
    upstream artifact the chain stops and the remaining cells stay empty.
    """
    rows: list[TraceRow] = []
    for consequence in model.consequences:
        c = consequence.id
        vulns = model.neighbors(c, LinkKind.CAUSED_BY, "outgoing")
        if not vulns:
            rows.append(TraceRow(c))
        for v in vulns:
            constraints = model.neighbors(v, LinkKind.PREVENTS, "incoming")
            if not constraints:
                rows.append(TraceRow(c, v))
            for k in constraints:
                pccas = model.neighbors(k, LinkKind.VIOLATES, "incoming")
                if not pccas:
                    rows.append(TraceRow(c, v, k))
                for p in pccas:
                    scenarios = model.neighbors(p, LinkKind.EXPLAINS, "incoming")
                    if not scenarios:
                        rows.append(TraceRow(c, v, k, p))
                    rows.extend(TraceRow(c, v, k, p, s) for s in scenarios)
    rows.sort(key=lambda r: (r.consequence, r.vulnerability or "", r.constraint or "",
                             r.pcca or "", r.scenario or ""))
    return rows


def render_matrix(rows: list[TraceRow], fmt: str = "markdown") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(",".join(MATRIX_COLUMNS) + "\r\n")
        writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
        for row in rows:
            writer.writerow(row.cells())
        return buf.getvalue()
    if fmt == "markdown":
        lines = ["| " + " | ".join(MATRIX_COLUMNS) + " |",
                 "|" + "|".join("---" for _ in MATRIX_COLUMNS) + "|"]
        for row in rows:
            lines.append("| " + " | ".join(row.cells()) + " |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown matrix format {fmt!r}")


def model_to_dict(model: AnalysisModel) -> dict:
    """The interchange document; key order is part of the format."""
    def plain(items):
        return [{"id": a.id, "statement": a.statement} for a in items]

    return {
        "schema_version": SCHEMA_VERSION,
        "model": model.name,
        "description": model.description,
        "goals": plain(model.goals),
        "stakeholders": [{"id": s.id, "name": s.name, "role": s.role_note}
                         for s in model.stakeholders],
        "consequences": [
            {"id": c.id, "statement": c.statement,
             "linddun": [t.value for t in LinddunCategory if t in c.linddun_tags]}
            for c in model.consequences
        ],
        "vulnerabilities": plain(model.vulnerabilities),
        "constraints": [
            {"id": c.id, "statement": c.statement, "origin": c.origin.value}
            for c in model.constraints
        ],
        "requirements": plain(model.requirements),
        "structure": {
            "nodes": [{"id": n.id, "kind": n.kind.value, "label": n.label}
                      for n in model.structure.nodes],
            "edges": [
                {"id": e.id, "kind": e.kind.value, "label": e.label, "from": e.source,
                 "to": e.target, "data": sorted(e.data_tags)}
                for e in model.structure.edges
            ],
        },
        "pccas": [
            {"id": p.id, "statement": p.statement, "action": p.action,
             "category": p.category.value, "assessment": p.assessment.value,
             "rationale": p.rationale}
            for p in model.pccas
        ],
        "scenarios": plain(model.scenarios),
        "links": [{"kind": link.kind.value, "from": link.source, "to": link.target}
                  for link in model.links],
    }


def export_json(model: AnalysisModel) -> str:
    return json.dumps(model_to_dict(model), indent=2, ensure_ascii=False) + "\n"


def render_stats(s: Stats, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(s.to_dict(), indent=2) + "\n"
    rows = s.flat()
    if fmt == "text":
        return "".join(f"{k}={v}\n" for k, v in rows)
    if fmt == "markdown":
        return "| metric | value |\n|---|---|\n" + "".join(f"| {k} | {v} |\n" for k, v in rows)
    if fmt == "csv":
        return "metric,value\r\n" + "".join(f"{k},{v}\r\n" for k, v in rows)
    raise ValueError(f"unknown stats format {fmt!r}")

