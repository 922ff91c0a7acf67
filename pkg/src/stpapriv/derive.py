"""Suggested artifacts: negation constraints, the guide-word candidate matrix,
and corresponding constraints for hazardous PCCAs.

Suggestions are scaffolding for the analyst. They are printed as paste-ready
items and never written back into a source file.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from stpapriv.dsl import quote
from stpapriv.model import (
    AnalysisModel, ArtifactKind, Assessment, ConstraintOrigin, GuideCategory, LinkKind,
)
from stpapriv.structure import control_actions


class SuggestionKind(str, Enum):
    CONSTRAINT = "Constraint"
    PCCA_CANDIDATE = "PccaCandidate"


@dataclass(frozen=True)
class Suggestion:
    kind: SuggestionKind
    statement: str
    seeds: tuple[str, ...]
    category: Optional[GuideCategory] = None
    proposed_id: str = ""

    def __post_init__(self) -> None:
        if not self.seeds:
            raise ValueError("a suggestion needs at least one seed artifact")
        if (self.category is not None) != (self.kind is SuggestionKind.PCCA_CANDIDATE):
            raise ValueError("category is required for PCCA candidates and only for them")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "id": self.proposed_id,
            "statement": self.statement,
            "seeds": list(self.seeds),
            "category": self.category.value if self.category else None,
        }


NEGATION_TEMPLATE = "The system must prevent the state: {}"
CORRESPONDING_TEMPLATE = "The system must not reach: {}"

CANDIDATE_TEMPLATES = {
    GuideCategory.NOT_PROVIDED: "Not providing '{label}' when <condition>",
    GuideCategory.PROVIDED_CAUSES_VULNERABILITY: "Providing '{label}' when <condition>",
    GuideCategory.WRONG_TIMING_OR_ORDER:
        "Providing '{label}' too early, too late, or out of order relative to <event>",
    GuideCategory.STOPPED_TOO_SOON_OR_APPLIED_TOO_LONG:
        "Stopping '{label}' too soon or applying it too long",
}

_CATEGORY_SUFFIX = {
    GuideCategory.NOT_PROVIDED: "NP",
    GuideCategory.PROVIDED_CAUSES_VULNERABILITY: "PV",
    GuideCategory.WRONG_TIMING_OR_ORDER: "WT",
    GuideCategory.STOPPED_TOO_SOON_OR_APPLIED_TOO_LONG: "SD",
}


class _Ids:
    """Hands out ids that clash neither with the model nor with each other."""

    def __init__(self, model: AnalysisModel) -> None:
        self.model = model
        self.taken: set[str] = set()

    def __call__(self, base: str) -> str:
        candidate, n = base, 2
        while candidate in self.model or candidate in self.taken:
            candidate = f"{base}-{n}"
            n += 1
        self.taken.add(candidate)
        return candidate


def suggest_constraints(model: AnalysisModel) -> list[Suggestion]:
    ids = _Ids(model)
    return [
        Suggestion(SuggestionKind.CONSTRAINT, NEGATION_TEMPLATE.format(v.statement), (v.id,),
                   proposed_id=ids(f"{v.id}-PC"))
        for v in model.vulnerabilities
        if not model.neighbors(v.id, LinkKind.PREVENTS, "incoming")
    ]


def generate_pcca_candidates(model: AnalysisModel) -> list[Suggestion]:
    covered = {(p.action, p.category) for p in model.pccas}
    ids = _Ids(model)
    out = []
    for action in control_actions(model.structure):
        for category in GuideCategory:
            if (action.id, category) in covered:
                continue
            out.append(Suggestion(
                SuggestionKind.PCCA_CANDIDATE,
                CANDIDATE_TEMPLATES[category].format(label=action.label),
                (action.id,), category, ids(f"{action.id}-{_CATEGORY_SUFFIX[category]}"),
            ))
    return out


def derive_corresponding_constraints(model: AnalysisModel) -> list[Suggestion]:
    ids = _Ids(model)
    return [
        Suggestion(SuggestionKind.CONSTRAINT, CORRESPONDING_TEMPLATE.format(p.statement), (p.id,),
                   proposed_id=ids(f"{p.id}-PC"))
        for p in model.pccas
        if p.assessment is Assessment.HAZARDOUS
        and not model.neighbors(p.id, LinkKind.VIOLATES, "outgoing")
    ]


def to_dsl(suggestion: Suggestion, model: AnalysisModel) -> str:
    """Render a suggestion as an item that can be pasted into a ``.stpa`` file."""
    if suggestion.kind is SuggestionKind.PCCA_CANDIDATE:
        return (f"pcca {suggestion.proposed_id} {quote(suggestion.statement)}\n"
                f"  action {suggestion.seeds[0]}\n"
                f"  category {suggestion.category.keyword}\n")
    seed = suggestion.seeds[0]
    kind, _ = model.resolve(seed)
    if kind is ArtifactKind.VULNERABILITY:
        return (f"constraint {suggestion.proposed_id} {quote(suggestion.statement)}\n"
                f"  prevents {seed}\n"
                f"  origin {ConstraintOrigin.NEGATION_SUGGESTED.keyword}\n")
    # Violates is authored on the PCCA, so the link has to be added there by hand
    return (f"# then add 'violates {suggestion.proposed_id}' to pcca {seed}\n"
            f"constraint {suggestion.proposed_id} {quote(suggestion.statement)}\n")


def render(suggestions: list[Suggestion], model: AnalysisModel, fmt: str = "dsl") -> str:
    if fmt == "json":
        return json.dumps([s.to_dict() for s in suggestions], indent=2, ensure_ascii=False) + "\n"
    if fmt == "dsl":
        return "\n".join(to_dsl(s, model) for s in suggestions)
    raise ValueError(f"unknown suggestion format {fmt!r}")
