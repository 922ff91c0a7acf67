"""Artifact types, the global identifier namespace and the typed link table."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Optional, Union

from stpapriv.structure import ControlStructure, Edge, EdgeKind, Node

ID_PATTERN = re.compile(r"[A-Za-z][A-Za-z0-9_-]*\Z")


class ModelError(Exception):
    """Base class for model construction failures."""


class InvalidArgument(ModelError, ValueError):
    pass


class DuplicateId(ModelError):
    pass


class DanglingReference(ModelError):
    pass


class LinkSignatureError(ModelError):
    pass


class NotFound(ModelError, LookupError):
    pass


def _normalize(text: str) -> str:
    return text.replace("_", "").replace("-", "").lower()


class _Parseable(str, Enum):
    """Enum whose members parse from CamelCase, snake_case or kebab-case."""

    @classmethod
    def parse(cls, text: str):
        key = _normalize(text)
        for member in cls:
            if _normalize(member.value) == key:
                return member
        alias = cls._aliases().get(key)
        if alias is not None:
            return cls(alias)
        raise ValueError(f"unknown {cls.__name__} {text!r}")

    @classmethod
    def _aliases(cls) -> dict[str, str]:
        return {}

    @property
    def keyword(self) -> str:
        return re.sub(r"(?<!^)(?=[A-Z])", "_", self.value).lower()


class LinddunCategory(_Parseable):
    LINKABILITY = "Linkability"
    IDENTIFIABILITY = "Identifiability"
    NON_REPUDIATION = "NonRepudiation"
    DETECTABILITY = "Detectability"
    INFORMATION_DISCLOSURE = "InformationDisclosure"
    UNAWARENESS = "Unawareness"
    NON_COMPLIANCE = "NonCompliance"

    @classmethod
    def _aliases(cls) -> dict[str, str]:
        # common misspelling found in the literature
        return {"unwareness": "Unawareness"}


class GuideCategory(_Parseable):
    NOT_PROVIDED = "NotProvided"
    PROVIDED_CAUSES_VULNERABILITY = "ProvidedCausesVulnerability"
    WRONG_TIMING_OR_ORDER = "WrongTimingOrOrder"
    STOPPED_TOO_SOON_OR_APPLIED_TOO_LONG = "StoppedTooSoonOrAppliedTooLong"


class Assessment(_Parseable):
    HAZARDOUS = "Hazardous"
    NOT_APPLICABLE = "NotApplicable"
    UNASSESSED = "Unassessed"


class ConstraintOrigin(_Parseable):
    ANALYST_AUTHORED = "AnalystAuthored"
    NEGATION_SUGGESTED = "NegationSuggested"


class ArtifactKind(str, Enum):
    GOAL = "Goal"
    STAKEHOLDER = "Stakeholder"
    ADVERSE_CONSEQUENCE = "AdverseConsequence"
    VULNERABILITY = "Vulnerability"
    PRIVACY_CONSTRAINT = "PrivacyConstraint"
    DESIGN_REQUIREMENT = "DesignRequirement"
    NODE = "Node"
    CONTROL_ACTION = "ControlAction"
    FEEDBACK = "Feedback"
    PCCA = "Pcca"
    CAUSAL_SCENARIO = "CausalScenario"


def _require_text(value: str, what: str) -> None:
    if not isinstance(value, str) or not value.strip():
        raise InvalidArgument(f"{what} must be non-empty")


def _require_id(value: str) -> None:
    if not isinstance(value, str) or not ID_PATTERN.match(value):
        raise InvalidArgument(f"invalid identifier {value!r}")


@dataclass(frozen=True)
class Goal:
    id: str
    statement: str


@dataclass(frozen=True)
class Stakeholder:
    id: str
    name: str
    role_note: Optional[str] = None


@dataclass(frozen=True)
class AdverseConsequence:
    id: str
    statement: str
    linddun_tags: frozenset[LinddunCategory] = frozenset()


@dataclass(frozen=True)
class Vulnerability:
    id: str
    statement: str


@dataclass(frozen=True)
class PrivacyConstraint:
    id: str
    statement: str
    origin: ConstraintOrigin = ConstraintOrigin.ANALYST_AUTHORED


@dataclass(frozen=True)
class DesignRequirement:
    id: str
    statement: str


@dataclass(frozen=True)
class Pcca:
    """A privacy-compromising control action: a screened guide-word candidate."""

    id: str
    statement: str
    action: str
    category: GuideCategory
    assessment: Assessment = Assessment.UNASSESSED
    rationale: Optional[str] = None


@dataclass(frozen=True)
class CausalScenario:
    id: str
    statement: str


Artifact = Union[
    Goal, Stakeholder, AdverseConsequence, Vulnerability, PrivacyConstraint,
    DesignRequirement, Node, Edge, Pcca, CausalScenario,
]


class LinkKind(str, Enum):
    CAUSED_BY = "CausedBy"
    PREVENTS = "Prevents"
    ENFORCED_BY = "EnforcedBy"
    VIOLATES = "Violates"
    EXPLAINS = "Explains"

    @property
    def signature(self) -> tuple[ArtifactKind, ArtifactKind]:
        return LINK_SIGNATURES[self]


LINK_SIGNATURES: dict[LinkKind, tuple[ArtifactKind, ArtifactKind]] = {
    LinkKind.CAUSED_BY: (ArtifactKind.ADVERSE_CONSEQUENCE, ArtifactKind.VULNERABILITY),
    LinkKind.PREVENTS: (ArtifactKind.PRIVACY_CONSTRAINT, ArtifactKind.VULNERABILITY),
    LinkKind.ENFORCED_BY: (ArtifactKind.PRIVACY_CONSTRAINT, ArtifactKind.CONTROL_ACTION),
    LinkKind.VIOLATES: (ArtifactKind.PCCA, ArtifactKind.PRIVACY_CONSTRAINT),
    LinkKind.EXPLAINS: (ArtifactKind.CAUSAL_SCENARIO, ArtifactKind.PCCA),
}


@dataclass(frozen=True)
class Link:
    kind: LinkKind
    source: str
    target: str


def kind_of(artifact: Artifact) -> ArtifactKind:
    if isinstance(artifact, Edge):
        if artifact.kind is EdgeKind.CONTROL_ACTION:
            return ArtifactKind.CONTROL_ACTION
        return ArtifactKind.FEEDBACK
    try:
        return _KIND_BY_TYPE[type(artifact)]
    except KeyError:
        raise InvalidArgument(f"not an artifact: {artifact!r}") from None


_KIND_BY_TYPE = {
    Goal: ArtifactKind.GOAL,
    Stakeholder: ArtifactKind.STAKEHOLDER,
    AdverseConsequence: ArtifactKind.ADVERSE_CONSEQUENCE,
    Vulnerability: ArtifactKind.VULNERABILITY,
    PrivacyConstraint: ArtifactKind.PRIVACY_CONSTRAINT,
    DesignRequirement: ArtifactKind.DESIGN_REQUIREMENT,
    Node: ArtifactKind.NODE,
    Pcca: ArtifactKind.PCCA,
    CausalScenario: ArtifactKind.CAUSAL_SCENARIO,
}


def _validate(artifact: Artifact) -> None:
    _require_id(artifact.id)
    if isinstance(artifact, Stakeholder):
        _require_text(artifact.name, "stakeholder name")
    elif isinstance(artifact, (Node, Edge)):
        _require_text(artifact.label, "label")
    else:
        _require_text(artifact.statement, "statement")
    if isinstance(artifact, AdverseConsequence):
        # emptiness is reported by the rule engine, not rejected here
        if not all(isinstance(t, LinddunCategory) for t in artifact.linddun_tags):
            raise InvalidArgument("LINDDUN tags must be LinddunCategory members")


@dataclass
class AnalysisModel:
    """A complete STPA-Priv analysis.

    Construct with :func:`new_model` and populate through :meth:`add_artifact`
    and :meth:`link`; the fields are exposed read-only by convention.
    Equality is structural and ignores the order in which links were added.
    """

    name: str
    description: Optional[str] = None
    goals: list[Goal] = field(default_factory=list)
    stakeholders: list[Stakeholder] = field(default_factory=list)
    consequences: list[AdverseConsequence] = field(default_factory=list)
    vulnerabilities: list[Vulnerability] = field(default_factory=list)
    constraints: list[PrivacyConstraint] = field(default_factory=list)
    requirements: list[DesignRequirement] = field(default_factory=list)
    structure: ControlStructure = field(default_factory=ControlStructure)
    pccas: list[Pcca] = field(default_factory=list)
    scenarios: list[CausalScenario] = field(default_factory=list)
    # source spans by artifact id, filled by the parser; not part of equality
    spans: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        _require_text(self.name, "model name")
        self._index: dict[str, tuple[ArtifactKind, Artifact]] = {}
        self._links: dict[Link, None] = {}
        self._outgoing: dict[tuple[str, LinkKind], list[str]] = {}
        self._incoming: dict[tuple[str, LinkKind], list[str]] = {}
        self._pcca_keys: set[tuple[str, GuideCategory, str]] = set()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AnalysisModel):
            return NotImplemented
        return (
            self.name == other.name
            and self.description == other.description
            and self.goals == other.goals
            and self.stakeholders == other.stakeholders
            and self.consequences == other.consequences
            and self.vulnerabilities == other.vulnerabilities
            and self.constraints == other.constraints
            and self.requirements == other.requirements
            and self.structure == other.structure
            and self.pccas == other.pccas
            and self.scenarios == other.scenarios
            and self._links.keys() == other._links.keys()
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def links(self) -> list[Link]:
        return list(self._links)

    def __contains__(self, artifact_id: object) -> bool:
        return artifact_id in self._index

    def __len__(self) -> int:
        return len(self._index)

    def artifacts(self) -> Iterator[tuple[ArtifactKind, Artifact]]:
        """Every artifact in registration order."""
        return iter(self._index.values())

    def add_artifact(self, artifact: Artifact, span=None) -> str:
        _validate(artifact)
        kind = kind_of(artifact)
        if artifact.id in self._index:
            first = self.spans.get(artifact.id)
            where = ""
            if first is not None and span is not None:
                where = f" (declared at {first} and {span})"
            elif first is not None:
                where = f" (first declared at {first})"
            raise DuplicateId(f"duplicate identifier {artifact.id!r}{where}")
        if isinstance(artifact, Edge):
            for end in (artifact.source, artifact.target):
                found = self._index.get(end)
                if found is None:
                    raise DanglingReference(f"edge {artifact.id!r} refers to unknown node {end!r}")
                if found[0] is not ArtifactKind.NODE:
                    raise LinkSignatureError(
                        f"edge {artifact.id!r} endpoint {end!r} is a {found[0].value}, not a node")
        if isinstance(artifact, Pcca):
            found = self._index.get(artifact.action)
            if found is None:
                raise DanglingReference(f"PCCA {artifact.id!r} refers to unknown action {artifact.action!r}")
            if found[0] is not ArtifactKind.CONTROL_ACTION:
                raise LinkSignatureError(
                    f"PCCA {artifact.id!r} action {artifact.action!r} is a {found[0].value}, "
                    "not a control action")
            key = (artifact.action, artifact.category, artifact.statement)
            if key in self._pcca_keys:
                raise DuplicateId(
                    f"PCCA {artifact.id!r} repeats an existing (action, category, statement) entry")
            self._pcca_keys.add(key)

        self._collection_for(artifact).append(artifact)
        self._index[artifact.id] = (kind, artifact)
        if span is not None:
            self.spans[artifact.id] = span
        return artifact.id

    def _collection_for(self, artifact: Artifact) -> list:
        if isinstance(artifact, Node):
            return self.structure.nodes
        if isinstance(artifact, Edge):
            return self.structure.edges
        return {
            Goal: self.goals,
            Stakeholder: self.stakeholders,
            AdverseConsequence: self.consequences,
            Vulnerability: self.vulnerabilities,
            PrivacyConstraint: self.constraints,
            DesignRequirement: self.requirements,
            Pcca: self.pccas,
            CausalScenario: self.scenarios,
        }[type(artifact)]

    def link(self, kind: LinkKind, source: str, target: str) -> None:
        """Record a typed association; relinking an existing triple does nothing."""
        kind = LinkKind(kind)
        expected_from, expected_to = kind.signature
        for end, expected in ((source, expected_from), (target, expected_to)):
            found = self._index.get(end)
            if found is None:
                raise DanglingReference(f"{kind.value} link refers to unknown id {end!r}")
            if found[0] is not expected:
                raise LinkSignatureError(
                    f"{kind.value} expects {expected_from.value} -> {expected_to.value}, "
                    f"but {end!r} is a {found[0].value}")
        entry = Link(kind, source, target)
        if entry in self._links:
            return
        self._links[entry] = None
        self._outgoing.setdefault((source, kind), []).append(target)
        self._incoming.setdefault((target, kind), []).append(source)

    def resolve(self, artifact_id: str) -> tuple[ArtifactKind, Artifact]:
        try:
            return self._index[artifact_id]
        except KeyError:
            raise NotFound(f"unknown identifier {artifact_id!r}") from None

    def get(self, artifact_id: str) -> Optional[Artifact]:
        found = self._index.get(artifact_id)
        return None if found is None else found[1]

    def neighbors(self, artifact_id: str, kind: LinkKind, direction: str = "outgoing") -> list[str]:
        """Ids linked to ``artifact_id`` by ``kind``, in link-table order."""
        if artifact_id not in self._index:
            raise NotFound(f"unknown identifier {artifact_id!r}")
        if direction == "outgoing":
            table = self._outgoing
        elif direction == "incoming":
            table = self._incoming
        else:
            raise InvalidArgument(f"direction must be 'outgoing' or 'incoming', not {direction!r}")
        return list(table.get((artifact_id, LinkKind(kind)), ()))


def new_model(name: str, description: Optional[str] = None) -> AnalysisModel:
    return AnalysisModel(name=name, description=description)


def build_model(name: str, artifacts: Iterable[Artifact] = (), links: Iterable[tuple] = (),
                description: Optional[str] = None) -> AnalysisModel:
    """Convenience constructor: add ``artifacts`` in order, then each ``(kind, from, to)``."""
    model = new_model(name, description)
    for artifact in artifacts:
        model.add_artifact(artifact)
    for kind, source, target in links:
        model.link(kind, source, target)
    return model
