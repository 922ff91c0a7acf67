"""Completeness and traceability rules for an analysis model.

Every rule operationalizes one linking or derivation obligation of the method
(see ``RULES`` for the step each one belongs to). Rule codes are frozen: new
rules are appended, never renumbered.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from stpapriv.diagnostics import Diagnostic, Severity
from stpapriv.model import (
    AnalysisModel, ArtifactKind, Assessment, LinkKind, LINK_SIGNATURES,
)
from stpapriv.structure import EdgeKind, control_actions, detect_open_loops, self_loops


@dataclass(frozen=True)
class Rule:
    code: str
    severity: Severity
    description: str
    step: str


RULES: tuple[Rule, ...] = (
    Rule("R001", Severity.ERROR, "dangling reference in a link or artifact field", "model integrity"),
    Rule("R010", Severity.WARNING, "adverse consequence not linked to any vulnerability", "Step 0.4"),
    Rule("R011", Severity.WARNING, "vulnerability not linked to any adverse consequence", "Step 0.4"),
    Rule("R012", Severity.ERROR, "vulnerability not prevented by any privacy constraint", "Step 0.5"),
    Rule("R013", Severity.WARNING, "privacy constraint not enforced by any control action", "Step 1.2"),
    Rule("R020", Severity.WARNING, "control action has no PCCA in any guide category", "Step 1.2"),
    Rule("R021", Severity.WARNING, "PCCA has not been assessed", "Step 1.2"),
    Rule("R022", Severity.ERROR, "hazardous PCCA violates no privacy constraint", "Step 1.3"),
    Rule("R030", Severity.WARNING, "hazardous PCCA explained by no causal scenario", "Step 2"),
    Rule("R031", Severity.WARNING, "causal scenario explains no PCCA", "Step 2"),
    Rule("R040", Severity.WARNING, "adverse consequence has no LINDDUN category", "Step 0.2"),
    Rule("R050", Severity.INFO, "open-loop control action (no feedback loop)", "Step 0.7"),
    Rule("R051", Severity.INFO, "self-loop edge in the control structure", "Step 0.7"),
)
RULES_BY_CODE = {r.code: r for r in RULES}


def list_rules() -> list[Rule]:
    return list(RULES)


@dataclass
class RuleConfig:
    severity_overrides: dict[str, Severity] = field(default_factory=dict)
    strict: bool = False

    def __post_init__(self) -> None:
        unknown = sorted(set(self.severity_overrides) - set(RULES_BY_CODE))
        if unknown:
            raise ValueError(f"unknown rule code(s): {', '.join(unknown)}")
        self.severity_overrides = {k: Severity(v) for k, v in self.severity_overrides.items()}

    def severity(self, code: str) -> Severity:
        return self.severity_overrides.get(code, RULES_BY_CODE[code].severity)


# each check yields (code, message, related ids)
Finding = tuple[str, str, tuple[str, ...]]


def _dangling(model: AnalysisModel) -> Iterator[Finding]:
    for link in model.links:
        expected = LINK_SIGNATURES[link.kind]
        for end, kind in zip((link.source, link.target), expected):
            if end not in model:
                yield "R001", f"{link.kind.value} link refers to unknown id {end!r}", (end,)
            elif model.resolve(end)[0] is not kind:
                yield "R001", f"{link.kind.value} link endpoint {end!r} is not a {kind.value}", (end,)
    for edge in model.structure.edges:
        for end in (edge.source, edge.target):
            if end not in model or model.resolve(end)[0] is not ArtifactKind.NODE:
                yield "R001", f"edge {edge.id!r} refers to unknown node {end!r}", (edge.id, end)
    for pcca in model.pccas:
        if pcca.action not in model or model.resolve(pcca.action)[0] is not ArtifactKind.CONTROL_ACTION:
            yield "R001", f"PCCA {pcca.id!r} refers to unknown control action {pcca.action!r}", (pcca.id,)


def _consequences(model: AnalysisModel) -> Iterator[Finding]:
    for c in model.consequences:
        if not model.neighbors(c.id, LinkKind.CAUSED_BY, "outgoing"):
            yield "R010", f"adverse consequence {c.id!r} is not linked to any vulnerability", (c.id,)
        if not c.linddun_tags:
            yield "R040", f"adverse consequence {c.id!r} has no LINDDUN category", (c.id,)


def _vulnerabilities(model: AnalysisModel) -> Iterator[Finding]:
    for v in model.vulnerabilities:
        if not model.neighbors(v.id, LinkKind.CAUSED_BY, "incoming"):
            yield "R011", f"vulnerability {v.id!r} is not linked to any adverse consequence", (v.id,)
        if not model.neighbors(v.id, LinkKind.PREVENTS, "incoming"):
            yield "R012", f"vulnerability {v.id!r} is not prevented by any privacy constraint", (v.id,)


def _constraints(model: AnalysisModel) -> Iterator[Finding]:
    for c in model.constraints:
        if not model.neighbors(c.id, LinkKind.ENFORCED_BY, "outgoing"):
            yield "R013", f"privacy constraint {c.id!r} is not enforced by any control action", (c.id,)


def _pccas(model: AnalysisModel) -> Iterator[Finding]:
    covered = {p.action for p in model.pccas}
    for action in control_actions(model.structure):
        if action.id not in covered:
            yield ("R020", f"control action {action.id!r} ({action.label}) has no PCCA in any "
                           "guide category", (action.id,))
    for p in model.pccas:
        if p.assessment is Assessment.UNASSESSED:
            yield "R021", f"PCCA {p.id!r} has not been assessed", (p.id,)
        elif p.assessment is Assessment.HAZARDOUS:
            if not model.neighbors(p.id, LinkKind.VIOLATES, "outgoing"):
                yield "R022", f"hazardous PCCA {p.id!r} violates no privacy constraint", (p.id,)
            if not model.neighbors(p.id, LinkKind.EXPLAINS, "incoming"):
                yield "R030", f"hazardous PCCA {p.id!r} is explained by no causal scenario", (p.id,)


def _scenarios(model: AnalysisModel) -> Iterator[Finding]:
    for s in model.scenarios:
        if not model.neighbors(s.id, LinkKind.EXPLAINS, "outgoing"):
            yield "R031", f"causal scenario {s.id!r} explains no PCCA", (s.id,)


def _structure(model: AnalysisModel) -> Iterator[Finding]:
    labels = {e.id: e.label for e in model.structure.edges}
    for edge_id in detect_open_loops(model.structure):
        yield "R050", f"control action {edge_id!r} ({labels[edge_id]}) is open-loop: no feedback returns to its issuer", (edge_id,)
    kinds = {e.id: e.kind for e in model.structure.edges}
    for edge_id in self_loops(model.structure):
        what = "control action" if kinds[edge_id] is EdgeKind.CONTROL_ACTION else "feedback"
        yield "R051", f"{what} {edge_id!r} starts and ends at the same node", (edge_id,)


CHECKS: tuple[Callable[[AnalysisModel], Iterator[Finding]], ...] = (
    _dangling, _consequences, _vulnerabilities, _constraints, _pccas, _scenarios, _structure,
)


def run_checks(model: AnalysisModel, config: RuleConfig | None = None) -> list[Diagnostic]:
    """Evaluate every rule and return diagnostics in report order.

    Order is severity (errors first), then rule code, then the first related
    artifact id, so the output does not depend on evaluation order.
    """
    config = config or RuleConfig()
    diagnostics = []
    for check in CHECKS:
        for code, message, ids in check(model):
            span = next((model.spans[i] for i in ids if i in model.spans), None)
            diagnostics.append(Diagnostic(code, config.severity(code), message, span, ids))
    diagnostics.sort(key=lambda d: (-d.severity.rank, d.code,
                                    d.related_ids[0] if d.related_ids else "", d.message))
    return diagnostics


def exit_status(diagnostics: list[Diagnostic], strict: bool = False) -> int:
    failing = {Severity.ERROR, Severity.WARNING} if strict else {Severity.ERROR}
    return 1 if any(d.severity in failing for d in diagnostics) else 0
