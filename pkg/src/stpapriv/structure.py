"""Control structure: typed nodes and edges, feedback-loop search, DOT export."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class NodeKind(str, Enum):
    CONTROLLER = "Controller"
    CONTROLLED_PROCESS = "ControlledProcess"
    SENSOR = "Sensor"
    ACTUATOR = "Actuator"
    EXTERNAL_ENTITY = "ExternalEntity"


class EdgeKind(str, Enum):
    CONTROL_ACTION = "ControlAction"
    FEEDBACK = "Feedback"


@dataclass(frozen=True)
class Node:
    id: str
    kind: NodeKind
    label: str


@dataclass(frozen=True)
class Edge:
    id: str
    kind: EdgeKind
    label: str
    source: str
    target: str
    data_tags: frozenset[str] = frozenset()


@dataclass
class ControlStructure:
    nodes: list[Node] = field(default_factory=list)
    edges: list[Edge] = field(default_factory=list)


Loop = tuple[str, ...]


def control_actions(structure: ControlStructure) -> list[Edge]:
    return [e for e in structure.edges if e.kind is EdgeKind.CONTROL_ACTION]


def _strongly_connected(nodes: list[str], adjacency: dict[str, list[Edge]]) -> dict[str, int]:
    """Iterative Tarjan; maps node id to component number."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    comp: dict[str, int] = {}
    stack: list[str] = []
    on_stack: set[str] = set()
    counter = 0
    n_comp = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            out = adjacency.get(v, [])
            recurse = False
            while i < len(out):
                w = out[i].target
                i += 1
                if w not in index:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = n_comp
                    if w == v:
                        break
                n_comp += 1
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comp


def _canonical_rotation(cycle: list[str]) -> Loop:
    start = cycle.index(min(cycle))
    return tuple(cycle[start:] + cycle[:start])


def find_feedback_loops(structure: ControlStructure) -> list[Loop]:
    """Simple directed cycles that use at least one control action and one feedback edge.

    Each loop is a tuple of edge ids rotated to start at its smallest id; the
    result is sorted, so it does not depend on declaration order.
    """
    node_ids = sorted({n.id for n in structure.nodes}
                      | {e.source for e in structure.edges}
                      | {e.target for e in structure.edges})
    adjacency: dict[str, list[Edge]] = {}
    for edge in sorted(structure.edges, key=lambda e: e.id):
        adjacency.setdefault(edge.source, []).append(edge)
    component = _strongly_connected(node_ids, adjacency)
    rank = {node: i for i, node in enumerate(node_ids)}

    loops: set[Loop] = set()
    for start in node_ids:
        # cycles whose smallest node is `start`, staying inside its component
        floor = rank[start]
        home = component[start]
        path: list[Edge] = []
        on_path = {start}
        frames = [iter(adjacency.get(start, []))]
        while frames:
            edge = next(frames[-1], None)
            if edge is None:
                frames.pop()
                if path:
                    on_path.discard(path.pop().target)
                continue
            nxt = edge.target
            if nxt == start:
                cycle = path + [edge]
                kinds = {e.kind for e in cycle}
                if len(kinds) == 2:
                    loops.add(_canonical_rotation([e.id for e in cycle]))
                continue
            if nxt in on_path or rank[nxt] < floor or component[nxt] != home:
                continue
            path.append(edge)
            on_path.add(nxt)
            frames.append(iter(adjacency.get(nxt, [])))
    return sorted(loops)


def detect_open_loops(structure: ControlStructure) -> list[str]:
    """Control-action edge ids that take part in no feedback loop, in declaration order."""
    closed = {edge_id for loop in find_feedback_loops(structure) for edge_id in loop}
    return [e.id for e in control_actions(structure) if e.id not in closed]


def self_loops(structure: ControlStructure) -> list[str]:
    return [e.id for e in structure.edges if e.source == e.target]


_SHAPES = {
    NodeKind.CONTROLLER: "shape=box",
    NodeKind.CONTROLLED_PROCESS: "shape=ellipse",
    NodeKind.SENSOR: "shape=diamond",
    NodeKind.ACTUATOR: "shape=trapezium",
    NodeKind.EXTERNAL_ENTITY: "shape=box, style=dashed",
}


def dot_quote(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"')
    escaped = escaped.replace("\r\n", "\\n").replace("\n", "\\n").replace("\r", "\\n")
    return f'"{escaped}"'


def export_dot(structure: ControlStructure) -> str:
    lines = ['digraph "control_structure" {']
    for node in structure.nodes:
        lines.append(f"  {dot_quote(node.id)} [label={dot_quote(node.label)}, {_SHAPES[node.kind]}];")
    for edge in structure.edges:
        style = "solid" if edge.kind is EdgeKind.CONTROL_ACTION else "dashed"
        lines.append(
            f"  {dot_quote(edge.source)} -> {dot_quote(edge.target)} "
            f"[id={dot_quote(edge.id)}, label={dot_quote(edge.label)}, style={style}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
