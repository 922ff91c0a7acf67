"""Machine-checkable STPA-Priv privacy analyses.

The usual flow is :func:`parse` a ``.stpa`` file, :func:`run_checks` on the
model, then derive suggestions or render reports from it.
"""
from stpapriv.checks import RuleConfig, list_rules, run_checks
from stpapriv.derive import (
    derive_corresponding_constraints, generate_pcca_candidates, suggest_constraints,
)
from stpapriv.diagnostics import Diagnostic, Severity, SourceSpan
from stpapriv.dsl import format_model, load_json, parse
from stpapriv.model import (
    AdverseConsequence, AnalysisModel, ArtifactKind, Assessment, CausalScenario,
    ConstraintOrigin, DesignRequirement, Goal, GuideCategory, LinddunCategory, Link, LinkKind,
    Pcca, PrivacyConstraint, Stakeholder, Vulnerability, new_model,
)
from stpapriv.report import export_json, render_matrix, stats, traceability_matrix
from stpapriv.structure import (
    ControlStructure, Edge, EdgeKind, Node, NodeKind, control_actions, detect_open_loops,
    export_dot, find_feedback_loops,
)

__version__ = "0.1.0"
