"""Design-time dataflow facts derived from interaction contracts.

The interaction graph has one node per source (qualified name), context,
controller and invoked action method (`Interface.method`).  Push edges carry
a `guaranteed` flag: publications of sources and of always-publishing contexts
are guaranteed, those of maybe-publishing contexts only possible.  Pull edges
run from the consumer to the pulled element and never propagate impact; a pull
is initiated by the consumer, publication of the pulled value activates nobody.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import ArchitectureModel

PUSH = "push"
PULL = "pull"
INVOKE = "invoke"


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    kind: str  # PUSH | PULL | INVOKE
    guaranteed: bool = True  # meaningful for PUSH edges only


@dataclass(frozen=True)
class InteractionGraph:
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    kinds: dict[str, str]  # node -> "source" | "context" | "controller" | "action"

    def outgoing(self, node: str, *kinds: str) -> list[Edge]:
        return [e for e in self.edges if e.src == node and (not kinds or e.kind in kinds)]

    def incoming(self, node: str, *kinds: str) -> list[Edge]:
        return [e for e in self.edges if e.dst == node and (not kinds or e.kind in kinds)]


class UnknownElementError(Exception):
    """Raised (code E001) when an analysis is asked about a missing element."""

    code = "E001"


def build_graph(model: ArchitectureModel) -> InteractionGraph:
    """Interaction graph of a fully checked model.

    One push edge per (producer, activation disjunct), one pull edge per data
    requirement, one invoke edge per whitelisted controller action method.
    """
    if not model.resolved:
        raise ValueError("build_graph requires a resolved model")
    nodes: list[str] = []
    kinds: dict[str, str] = {}

    def add_node(name: str, kind: str) -> None:
        if name not in kinds:
            nodes.append(name)
            kinds[name] = kind

    for src in model.sources():
        add_node(src.qualified, "source")
    for ctx in model.contexts:
        add_node(ctx.name, "context")
    for ctl in model.controllers:
        add_node(ctl.name, "controller")

    edges: list[Edge] = []
    for op in model.operators():
        for ref in op.contract.activation:
            guaranteed = ref.kind == "source"
            if ref.kind == "context":
                producer = model.context(ref.target)
                guaranteed = producer is not None and producer.contract.publish == "always"
            edges.append(Edge(ref.target, op.name, PUSH, guaranteed))
        for req in op.contract.requirements:
            edges.append(Edge(op.name, req.target, PULL))
    for ctl in model.controllers:
        for inv in ctl.contract.invocations:
            add_node(inv.qualified, "action")
            edges.append(Edge(ctl.name, inv.qualified, INVOKE))
    return InteractionGraph(tuple(nodes), tuple(edges), kinds)


def _require_node(graph: InteractionGraph, name: str, kind: str | None = None) -> None:
    if name not in graph.kinds or (kind is not None and graph.kinds[name] != kind):
        what = f"{kind} " if kind else ""
        raise UnknownElementError(f"unknown {what}element '{name}'")


def _forward_closure(graph: InteractionGraph, start: str, *, guaranteed_only: bool,
                     follow_invokes: bool) -> set[str]:
    reached: set[str] = set()
    frontier = [start]
    while frontier:
        node = frontier.pop()
        for edge in graph.outgoing(node, PUSH):
            if guaranteed_only and not edge.guaranteed:
                continue
            if edge.dst not in reached:
                reached.add(edge.dst)
                frontier.append(edge.dst)
        if follow_invokes:
            for edge in graph.outgoing(node, INVOKE):
                reached.add(edge.dst)
    reached.discard(start)
    return reached


def may_impact(graph: InteractionGraph, source: str) -> set[str]:
    """Everything possibly activated by one publication of the source.

    Forward closure over push edges of either flavour plus the invoke edges of
    reached controllers; equals the union over all runs of the operational
    semantics of the elements activated after the stimulus.
    """
    _require_node(graph, source, "source")
    return _forward_closure(graph, source, guaranteed_only=False, follow_invokes=True)


def must_impact(graph: InteractionGraph, source: str) -> set[str]:
    """Operators activated in every run after one publication of the source.

    Closure over guaranteed push edges only.  Invoke edges are excluded: the
    contract licenses invocations but never forces them, so no action method
    is a must-impact.
    """
    _require_node(graph, source, "source")
    return _forward_closure(graph, source, guaranteed_only=True, follow_invokes=False)


def activators_of(graph: InteractionGraph, element: str) -> set[str]:
    """Everything whose publication can lead to this element being triggered.

    Backward closure over push edges; for an action method the invoke edges
    into it are crossed first.  Pull edges never count as activation.
    """
    _require_node(graph, element)
    reached: set[str] = set()
    frontier = [element]
    while frontier:
        node = frontier.pop()
        for edge in graph.incoming(node, PUSH, INVOKE):
            if edge.src not in reached:
                reached.add(edge.src)
                frontier.append(edge.src)
    reached.discard(element)
    return reached


def dead_elements(graph: InteractionGraph) -> set[str]:
    """Elements whose presence has no effect on any run.

    A source or context is dead when nothing is activated by its publications
    and nothing pulls its value (W031 for sources, W030 for operators).
    Controllers and invoked action methods are live by construction; so is any
    operator, since activation conditions are non-empty and acyclic, but
    unreachable nodes are still reported defensively for hand-built graphs.
    """
    dead: set[str] = set()
    for node in graph.nodes:
        kind = graph.kinds[node]
        if kind in ("source", "context"):
            if not graph.outgoing(node, PUSH) and not graph.incoming(node, PULL):
                dead.add(node)
    reachable: set[str] = set()
    for node in graph.nodes:
        if graph.kinds[node] == "source":
            reachable.add(node)
            reachable |= _forward_closure(graph, node, guaranteed_only=False,
                                          follow_invokes=True)
    dead |= {n for n in graph.nodes if n not in reachable and graph.kinds[n] != "source"}
    return dead


def dead_element_code(graph: InteractionGraph, element: str) -> str:
    return "W031" if graph.kinds.get(element) == "source" else "W030"


def _edge_style(edge: Edge) -> str:
    if edge.kind == PULL:
        return "dotted"
    if edge.kind == INVOKE:
        return "bold"
    return "solid" if edge.guaranteed else "dashed"


def to_dot(graph: InteractionGraph) -> str:
    """Deterministic Graphviz rendering; nodes and edges in lexicographic order."""
    lines = ["digraph interactions {"]
    for node in sorted(graph.nodes):
        lines.append(f'  "{node}";')
    for src, dst, style in sorted((e.src, e.dst, _edge_style(e)) for e in graph.edges):
        lines.append(f'  "{src}" -> "{dst}" [style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
