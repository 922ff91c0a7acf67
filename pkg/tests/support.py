"""Shared test helpers: fixture access, random generators and independent oracles.

The oracles here deliberately avoid the package's own query helpers
(``neighbors``, ``find_feedback_loops``) so they can check them.
"""
from __future__ import annotations

import itertools
import json
import random
import re
from pathlib import Path

import networkx as nx

from stpapriv.dsl import load_json, parse
from stpapriv.model import (
    AdverseConsequence, AnalysisModel, Assessment, CausalScenario, ConstraintOrigin,
    DesignRequirement, Goal, GuideCategory, LinddunCategory, LinkKind, Pcca, PrivacyConstraint,
    Stakeholder, Vulnerability,
)
from stpapriv.report import model_to_dict
from stpapriv.structure import ControlStructure, Edge, EdgeKind, Node, NodeKind

ROOT = Path(__file__).resolve().parent.parent
FIXTURE = ROOT / "fixtures" / "ehealth.stpa"


def load_fixture() -> AnalysisModel:
    model, diags = parse(FIXTURE.read_text(encoding="utf-8"), str(FIXTURE))
    assert model is not None, diags
    return model


def edit(model: AnalysisModel, change) -> AnalysisModel:
    """Copy ``model`` through its JSON document, letting ``change`` edit the dict."""
    doc = model_to_dict(model)
    change(doc)
    rebuilt, diags = load_json(json.dumps(doc))
    assert rebuilt is not None, diags
    return rebuilt


def drop_link(model: AnalysisModel, kind: LinkKind, source: str, target: str) -> AnalysisModel:
    def change(doc):
        entry = {"kind": kind.value, "from": source, "to": target}
        assert entry in doc["links"], entry
        doc["links"].remove(entry)
    return edit(model, change)


def strip_pccas(model: AnalysisModel) -> AnalysisModel:
    def change(doc):
        doc["pccas"] = []
        doc["links"] = [l for l in doc["links"] if l["kind"] not in ("Violates", "Explains")]
    return edit(model, change)


# --------------------------------------------------------------------------
# random models

_CHARS = ("abcxyzABC019 _-,.;:#'\"\\\t\n\r()<>" "äöüßéñ漢字🙂" "  ")
_ID_FIRST = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
_ID_REST = _ID_FIRST + "0123456789_-"
_TAG_POOL = ("location", "blood_sugar", "usage", "crash-report", "blood sugar", "x,y", 'q"t', "ß")


def random_text(rng: random.Random) -> str:
    while True:
        text = "".join(rng.choice(_CHARS) for _ in range(rng.randint(1, 14)))
        if text.strip():
            return text


def random_ids(rng: random.Random, count: int) -> list[str]:
    ids: set[str] = set()
    while len(ids) < count:
        ids.add(rng.choice(_ID_FIRST) + "".join(rng.choice(_ID_REST) for _ in range(rng.randint(0, 6))))
    out = sorted(ids)
    rng.shuffle(out)
    return out


def random_model(rng: random.Random) -> AnalysisModel:
    sizes = {k: rng.randint(0, n) for k, n in [
        ("goal", 3), ("stakeholder", 3), ("consequence", 4), ("vulnerability", 4),
        ("constraint", 4), ("requirement", 2), ("node", 5), ("edge", 7), ("pcca", 4),
        ("scenario", 3),
    ]}
    if sizes["node"] == 0:
        sizes["edge"] = 0
    ids = iter(random_ids(rng, sum(sizes.values())))
    maybe = lambda: random_text(rng) if rng.random() < 0.5 else None  # noqa: E731

    model = AnalysisModel(name=random_text(rng))
    model.description = maybe()
    for _ in range(sizes["goal"]):
        model.add_artifact(Goal(next(ids), random_text(rng)))
    for _ in range(sizes["stakeholder"]):
        model.add_artifact(Stakeholder(next(ids), random_text(rng), maybe()))
    for _ in range(sizes["consequence"]):
        tags = frozenset(rng.sample(list(LinddunCategory), rng.randint(1, 3)))
        model.add_artifact(AdverseConsequence(next(ids), random_text(rng), tags))
    for _ in range(sizes["vulnerability"]):
        model.add_artifact(Vulnerability(next(ids), random_text(rng)))
    for _ in range(sizes["constraint"]):
        model.add_artifact(PrivacyConstraint(next(ids), random_text(rng), rng.choice(list(ConstraintOrigin))))
    for _ in range(sizes["requirement"]):
        model.add_artifact(DesignRequirement(next(ids), random_text(rng)))
    for _ in range(sizes["node"]):
        model.add_artifact(Node(next(ids), rng.choice(list(NodeKind)), random_text(rng)))
    node_ids = [n.id for n in model.structure.nodes]
    for _ in range(sizes["edge"]):
        tags = frozenset(rng.sample(_TAG_POOL, rng.randint(0, 3)))
        model.add_artifact(Edge(next(ids), rng.choice(list(EdgeKind)), random_text(rng),
                                rng.choice(node_ids), rng.choice(node_ids), tags))
    actions = [e.id for e in model.structure.edges if e.kind is EdgeKind.CONTROL_ACTION]
    used = set()
    for _ in range(sizes["pcca"] if actions else 0):
        key = (rng.choice(actions), rng.choice(list(GuideCategory)), random_text(rng))
        if key in used:
            continue
        used.add(key)
        model.add_artifact(Pcca(next(ids), key[2], key[0], key[1], rng.choice(list(Assessment)),
                                maybe()))
    for _ in range(sizes["scenario"]):
        model.add_artifact(CausalScenario(next(ids), random_text(rng)))

    by_kind = {
        "AdverseConsequence": [a.id for a in model.consequences],
        "Vulnerability": [a.id for a in model.vulnerabilities],
        "PrivacyConstraint": [a.id for a in model.constraints],
        "ControlAction": actions,
        "Pcca": [a.id for a in model.pccas],
        "CausalScenario": [a.id for a in model.scenarios],
    }
    for kind in LinkKind:
        sources, targets = (by_kind[k.value] for k in kind.signature)
        if not sources or not targets:
            continue
        for _ in range(rng.randint(0, 5)):
            model.link(kind, rng.choice(sources), rng.choice(targets))
    return model


def features(model: AnalysisModel) -> set[str]:
    """Which artifact kinds, link kinds and enum members a model exercises."""
    out = {kind.value for kind, _ in model.artifacts()}
    out |= {f"link:{l.kind.value}" for l in model.links}
    for c in model.consequences:
        out |= {f"linddun:{t.value}" for t in c.linddun_tags}
    out |= {f"origin:{c.origin.value}" for c in model.constraints}
    out |= {f"node:{n.kind.value}" for n in model.structure.nodes}
    out |= {f"edge:{e.kind.value}" for e in model.structure.edges}
    for p in model.pccas:
        out |= {f"category:{p.category.value}", f"assessment:{p.assessment.value}"}
    return out


def all_features() -> set[str]:
    out = {"Goal", "Stakeholder", "AdverseConsequence", "Vulnerability", "PrivacyConstraint",
           "DesignRequirement", "Node", "ControlAction", "Feedback", "Pcca", "CausalScenario"}
    out |= {f"link:{k.value}" for k in LinkKind}
    out |= {f"linddun:{k.value}" for k in LinddunCategory}
    out |= {f"origin:{k.value}" for k in ConstraintOrigin}
    out |= {f"node:{k.value}" for k in NodeKind}
    out |= {f"edge:{k.value}" for k in EdgeKind}
    out |= {f"category:{k.value}" for k in GuideCategory}
    out |= {f"assessment:{k.value}" for k in Assessment}
    return out


def random_structure(rng: random.Random, max_nodes: int = 12, max_edges: int = 18) -> ControlStructure:
    n = rng.randint(1, max_nodes)
    nodes = [Node(f"n{i}", rng.choice(list(NodeKind)), f"node {i}") for i in range(n)]
    edges = []
    for i in range(rng.randint(0, max_edges)):
        src, dst = rng.choice(nodes).id, rng.choice(nodes).id
        edges.append(Edge(f"e{i:02d}", rng.choice(list(EdgeKind)), f"edge {i}", src, dst))
    rng.shuffle(nodes)
    rng.shuffle(edges)
    return ControlStructure(nodes, edges)


# --------------------------------------------------------------------------
# oracles


def brute_force_loops(structure: ControlStructure) -> list[tuple[str, ...]]:
    """All simple cycles via networkx over nodes, expanded over parallel edges."""
    graph = nx.DiGraph()
    graph.add_nodes_from(n.id for n in structure.nodes)
    parallel: dict[tuple[str, str], list[Edge]] = {}
    for e in structure.edges:
        graph.add_edge(e.source, e.target)
        parallel.setdefault((e.source, e.target), []).append(e)
    loops = set()
    for cycle in nx.simple_cycles(graph):
        hops = [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]
        for choice in itertools.product(*(parallel[h] for h in hops)):
            if {e.kind for e in choice} != {EdgeKind.CONTROL_ACTION, EdgeKind.FEEDBACK}:
                continue
            ids = [e.id for e in choice]
            rotations = [tuple(ids[i:] + ids[:i]) for i in range(len(ids))]
            loops.add(min(rotations))
    return sorted(loops)


def brute_force_open_loops(structure: ControlStructure) -> list[str]:
    closed = {e for loop in brute_force_loops(structure) for e in loop}
    return [e.id for e in structure.edges if e.kind is EdgeKind.CONTROL_ACTION and e.id not in closed]


def enumerate_chains(model: AnalysisModel) -> list[tuple]:
    """Maximal consequence-rooted chains by direct scans of the link list.

    Returns tuples (consequence, vulnerability, constraint, pcca, scenario)
    padded with ``None``, sorted the way the matrix sorts them.
    """
    links = model.links

    def upstream(kind, node, forward):
        if forward:
            return [l.target for l in links if l.kind is kind and l.source == node]
        return [l.source for l in links if l.kind is kind and l.target == node]

    steps = [(LinkKind.CAUSED_BY, True), (LinkKind.PREVENTS, False),
             (LinkKind.VIOLATES, False), (LinkKind.EXPLAINS, False)]
    chains = []

    def walk(chain):
        depth = len(chain) - 1
        nxt = []
        if depth < len(steps):
            kind, forward = steps[depth]
            nxt = upstream(kind, chain[-1], forward)
        if not nxt:
            chains.append(tuple(chain) + (None,) * (5 - len(chain)))
        for item in nxt:
            walk(chain + [item])

    for c in model.consequences:
        walk([c.id])
    return sorted(chains, key=lambda t: tuple(x or "" for x in t))


_DOT_TOKEN = re.compile(r'\s+|//[^\n]*|(?P<arrow>->|--)|(?P<punct>[{}\[\];,=])'
                        r'|(?P<id>[A-Za-z_\u0080-\uffff][A-Za-z_0-9\u0080-\uffff]*|-?(?:\.\d+|\d+(?:\.\d*)?))'
                        r'|(?P<quoted>"(?:[^"\\]|\\.)*")', re.S)


def validate_dot(text: str) -> dict:
    """Structural check of a DOT digraph; returns statement counts or raises AssertionError."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _DOT_TOKEN.match(text, pos)
        assert m and m.end() > pos, f"DOT lexical error at offset {pos}: {text[pos:pos + 20]!r}"
        if m.lastgroup:
            tokens.append((m.lastgroup, m.group()))
        pos = m.end()
    tokens.append(("eof", ""))
    i = 0

    def peek():
        return tokens[i]

    def take(kind=None, value=None):
        nonlocal i
        tok = tokens[i]
        assert kind is None or tok[0] == kind, f"expected {kind}, got {tok}"
        assert value is None or tok[1] == value, f"expected {value!r}, got {tok}"
        i += 1
        return tok

    def is_id(tok):
        return tok[0] in ("id", "quoted")

    def attr_list():
        while peek() == ("punct", "["):
            take()
            while peek() != ("punct", "]"):
                assert is_id(take()), "attribute name"
                take("punct", "=")
                assert is_id(take()), "attribute value"
                if peek() in (("punct", ","), ("punct", ";")):
                    take()
            take("punct", "]")

    counts = {"nodes": 0, "edges": 0}
    assert take("id")[1] == "digraph"
    if is_id(peek()):
        take()
    take("punct", "{")
    while peek() != ("punct", "}"):
        first = take()
        assert is_id(first), f"statement must start with an id, got {first}"
        if peek()[0] == "arrow":
            while peek()[0] == "arrow":
                assert take()[1] == "->", "digraph edges use ->"
                assert is_id(take())
            counts["edges"] += 1
        elif peek() == ("punct", "="):
            take()
            assert is_id(take())
        else:
            counts["nodes"] += 1
        attr_list()
        if peek() == ("punct", ";"):
            take()
    take("punct", "}")
    assert peek()[0] == "eof", "trailing content after graph"
    return counts
