"""Style and contract checks over a resolved model.

Each check is a pure function returning a CheckReport; running them in any
order yields the same multiset of diagnostics.  A model passing all checks has
a finite run-to-completion reaction semantics: the push graph is acyclic, so
every reaction chain from a source stimulus terminates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagnostics import Diagnostic, error
from .model import ArchitectureModel, ContextOperator, ControlOperator


@dataclass(frozen=True)
class CheckReport:
    diagnostics: tuple[Diagnostic, ...] = ()

    @property
    def ok(self) -> bool:
        return not any(d.severity == "error" for d in self.diagnostics)


def _require_resolved(model: ArchitectureModel) -> None:
    if not model.resolved:
        raise ValueError("checks require a resolved model")


def check_layering(model: ArchitectureModel) -> CheckReport:
    """Layer rules: contexts publish, controllers command exactly one action."""
    _require_resolved(model)
    diags: list[Diagnostic] = []
    for ctx in model.contexts:
        for inv in ctx.contract.invocations:
            diags.append(error(
                "E003",
                f"context '{ctx.name}' invokes action '{inv.qualified}'; "
                "only control operators command actions", inv.span))
    for ctl in model.controllers:
        contract = ctl.contract
        if contract.publish is not None:
            diags.append(error(
                "E003",
                f"controller '{ctl.name}' declares a publish emission; "
                "only context operators publish", contract.publish_span))
        for ref in contract.activation:
            if ref.kind == "source":
                diags.append(error(
                    "E003",
                    f"controller '{ctl.name}' is activated by source '{ref.target}'; "
                    "controllers react to context publications only", ref.span))
        for req in contract.requirements:
            diags.append(error(
                "E012",
                f"controller '{ctl.name}' declares a data requirement on '{req.text}'; "
                "the control layer is purely reactive", req.span))
        interfaces = []
        for inv in contract.invocations:
            if inv.interface not in interfaces:
                interfaces.append(inv.interface)
        if len(interfaces) > 1:
            diags.append(error(
                "E003",
                f"controller '{ctl.name}' commands methods of several action interfaces "
                f"({', '.join(interfaces)}); a controller commands one action",
                contract.invocations[0].span))
    return CheckReport(tuple(diags))


def check_types(model: ArchitectureModel) -> CheckReport:
    """Value-type rules: ascriptions match their target, disjuncts are homogeneous."""
    _require_resolved(model)
    diags: list[Diagnostic] = []
    for op in model.operators():
        contract = op.contract
        for req in contract.requirements:
            if req.declared is not None and req.value_type is not None \
                    and req.declared != req.value_type:
                diags.append(error(
                    "E002",
                    f"requirement '{req.text}' in '{op.name}' is declared as "
                    f"{req.declared.render()} but the target publishes "
                    f"{req.value_type.render()}", req.span))
        types = [ref.value_type for ref in contract.activation if ref.value_type is not None]
        if types and any(t != types[0] for t in types):
            spellings = ", ".join(sorted({t.render() for t in types}))
            diags.append(error(
                "E013",
                f"activation disjuncts of '{op.name}' carry heterogeneous value types "
                f"({spellings})", contract.activation[0].span))
    return CheckReport(tuple(diags))


def push_successors(model: ArchitectureModel) -> dict[str, list[str]]:
    """Publisher -> activated operators, from the activation conditions.

    Keys are canonical publisher names (qualified sources, context names);
    successor lists follow model declaration order.
    """
    succ: dict[str, list[str]] = {}
    for src in model.sources():
        succ[src.qualified] = []
    for ctx in model.contexts:
        succ.setdefault(ctx.name, [])
    for op in model.operators():
        for ref in op.contract.activation:
            if ref.target is not None:
                succ.setdefault(ref.target, []).append(op.name)
    return succ


def check_push_acyclicity(model: ArchitectureModel) -> CheckReport:
    """Rejects cycles over push edges; pull edges are ignored.

    Acyclicity is what makes the dataflow analyses and the verifier exact:
    a reaction activates each operator at most once per propagated token and
    always reaches quiescence.
    """
    _require_resolved(model)
    succ = push_successors(model)
    colour: dict[str, int] = {}  # 0 visiting, 1 done
    stack: list[str] = []

    def visit(node: str) -> list[str] | None:
        colour[node] = 0
        stack.append(node)
        for nxt in succ.get(node, ()):
            state = colour.get(nxt)
            if state == 0:
                return stack[stack.index(nxt):] + [nxt]
            if state is None:
                cycle = visit(nxt)
                if cycle is not None:
                    return cycle
        stack.pop()
        colour[node] = 1
        return None

    for name in sorted(succ):
        if name not in colour:
            cycle = visit(name)
            if cycle is not None:
                head = model.context(cycle[0])
                span = head.span if head is not None else None
                witness = ", ".join(cycle)
                diag = error("E004", f"push cycle [{witness}]",
                             span) if span is not None else error(
                    "E004", f"push cycle [{witness}]")
                return CheckReport((diag,))
    return CheckReport()


ALL_CHECKS = (check_layering, check_types, check_push_acyclicity)


def check_model(model: ArchitectureModel) -> CheckReport:
    """All wellformedness checks on a resolved model, in canonical order."""
    diags: list[Diagnostic] = []
    for check in ALL_CHECKS:
        diags.extend(check(model).diagnostics)
    return CheckReport(tuple(diags))
