"""Core data model: taxonomies, operators, interaction contracts, resolution.

The model is a plain immutable object graph.  Parsing produces a *raw* model
whose references are unbound text; `resolve` returns a new model with every
reference bound to its declaration (kind, canonical target name, value type).
All structural-validity errors that do not depend on layering or dataflow are
reported here; layering/type/cycle rules live in `sccadl.checks`.

Spans never participate in equality, so a reparsed pretty-print compares equal
to the original model.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .diagnostics import SYNTHETIC, Diagnostic, SourceSpan, error


@dataclass(frozen=True)
class DataType:
    """Structural value type: Bool, Int, a named enum, or a named opaque type."""

    kind: str  # "Bool" | "Int" | "Enum" | "Opaque"
    name: str | None = None
    literals: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("Bool", "Int", "Enum", "Opaque"):
            raise ValueError(f"bad type kind {self.kind}")
        if self.kind in ("Enum", "Opaque") and not self.name:
            raise ValueError(f"{self.kind} type needs a name")
        if self.kind == "Enum":
            if not self.literals:
                raise ValueError("enum literal list is empty")
            if len(set(self.literals)) != len(self.literals):
                raise ValueError("enum literal list has duplicates")

    def render(self) -> str:
        """Surface-syntax spelling of the type."""
        if self.kind in ("Bool", "Int"):
            return self.kind
        return self.name or ""

    def tag(self) -> str:
        """Unambiguous compact form used by the descriptor and generated code."""
        if self.kind in ("Bool", "Int"):
            return self.kind
        if self.kind == "Opaque":
            return f"Opaque({self.name})"
        return f"Enum({self.name},{'|'.join(self.literals or ())})"


BOOL = DataType("Bool")
INT = DataType("Int")


def opaque(name: str) -> DataType:
    return DataType("Opaque", name)


def enum_type(name: str, literals: tuple[str, ...]) -> DataType:
    return DataType("Enum", name, tuple(literals))


@dataclass(frozen=True)
class Source:
    """Environment input declared by a device class; publishes values of one type."""

    name: str
    value_type: DataType
    owner: str  # device class name
    span: SourceSpan = field(default=SYNTHETIC, compare=False)

    @property
    def qualified(self) -> str:
        return f"{self.owner}.{self.name}"


@dataclass(frozen=True)
class ActionMethod:
    name: str
    params: tuple[tuple[str, DataType], ...] = ()
    span: SourceSpan = field(default=SYNTHETIC, compare=False)


@dataclass(frozen=True)
class ActionInterface:
    name: str
    methods: tuple[ActionMethod, ...]
    span: SourceSpan = field(default=SYNTHETIC, compare=False)

    def method(self, name: str) -> ActionMethod | None:
        for m in self.methods:
            if m.name == name:
                return m
        return None


@dataclass(frozen=True)
class DeviceClass:
    name: str
    sources: tuple[Source, ...] = ()
    provides: tuple[str, ...] = ()  # action interface names
    span: SourceSpan = field(default=SYNTHETIC, compare=False)


@dataclass(frozen=True)
class EventRef:
    """One activation disjunct: a publication of a source or context operator.

    `text` is the reference as written (`X` or `Device.x`); resolution fills
    `kind`, the canonical `target` name and the publisher's `value_type`.
    """

    text: str
    span: SourceSpan = field(default=SYNTHETIC, compare=False)
    kind: str | None = None  # "source" | "context"
    target: str | None = None  # canonical name (sources qualified)
    value_type: DataType | None = None


@dataclass(frozen=True)
class DataRequirement:
    """A pull interaction: reading a source or a context's last published value."""

    text: str
    declared: DataType | None = None  # optional `as T` ascription as written
    span: SourceSpan = field(default=SYNTHETIC, compare=False)
    kind: str | None = None
    target: str | None = None
    value_type: DataType | None = None  # copied from the target by resolve


@dataclass(frozen=True)
class Invocation:
    """One `do METHOD on INTERFACE` clause of a controller contract."""

    method: str
    interface: str
    span: SourceSpan = field(default=SYNTHETIC, compare=False)
    params: tuple[tuple[str, DataType], ...] | None = None  # bound by resolve

    @property
    def qualified(self) -> str:
        return f"{self.interface}.{self.method}"


@dataclass(frozen=True)
class InteractionContract:
    """Triplet of activation condition, data requirements and emissions.

    `publish` is "always"/"maybe" for context operators and None for
    controllers; `invocations` is non-empty only for controllers.  The parser
    is deliberately permissive (a context may carry invocations, a controller
    a publish clause or requirements) so that the style checks can point at
    the offending clause instead of failing the parse.
    """

    activation: tuple[EventRef, ...]
    requirements: tuple[DataRequirement, ...] = ()
    publish: str | None = None  # "always" | "maybe" | None
    publish_span: SourceSpan = field(default=SYNTHETIC, compare=False)
    invocations: tuple[Invocation, ...] = ()


@dataclass(frozen=True)
class ContextOperator:
    name: str
    output_type: DataType
    contract: InteractionContract
    span: SourceSpan = field(default=SYNTHETIC, compare=False)


@dataclass(frozen=True)
class ControlOperator:
    name: str
    contract: InteractionContract
    span: SourceSpan = field(default=SYNTHETIC, compare=False)


@dataclass(frozen=True)
class ArchitectureModel:
    devices: tuple[DeviceClass, ...] = ()
    interfaces: tuple[ActionInterface, ...] = ()
    contexts: tuple[ContextOperator, ...] = ()
    controllers: tuple[ControlOperator, ...] = ()
    resolved: bool = False

    def operators(self) -> tuple:
        return self.contexts + self.controllers

    def sources(self) -> tuple[Source, ...]:
        return tuple(s for d in self.devices for s in d.sources)

    def context(self, name: str) -> ContextOperator | None:
        for c in self.contexts:
            if c.name == name:
                return c
        return None

    def controller(self, name: str) -> ControlOperator | None:
        for c in self.controllers:
            if c.name == name:
                return c
        return None

    def interface(self, name: str) -> ActionInterface | None:
        for i in self.interfaces:
            if i.name == name:
                return i
        return None

    def source(self, qualified: str) -> Source | None:
        for s in self.sources():
            if s.qualified == qualified:
                return s
        return None


EMPTY_MODEL = ArchitectureModel()


class _Scope:
    """Symbol tables for one model, with duplicate detection."""

    def __init__(self, model: ArchitectureModel, diags: list[Diagnostic]):
        self.contexts: dict[str, ContextOperator] = {}
        self.controllers: dict[str, ControlOperator] = {}
        self.interfaces: dict[str, ActionInterface] = {}
        self.devices: dict[str, DeviceClass] = {}
        self.sources: dict[str, Source] = {}  # by qualified name
        self.by_bare_source: dict[str, list[Source]] = {}

        flat: dict[str, SourceSpan] = {}

        def declare(name: str, span: SourceSpan, what: str) -> None:
            if name in flat:
                diags.append(error(
                    "E005", f"duplicate name '{name}' ({what}); first declared at {flat[name]}", span))
            else:
                flat[name] = span

        for dev in model.devices:
            declare(dev.name, dev.span, "device class")
            self.devices.setdefault(dev.name, dev)
            seen: dict[str, SourceSpan] = {}
            for src in dev.sources:
                if src.name in seen:
                    diags.append(error(
                        "E005", f"duplicate source '{src.name}' in device '{dev.name}'", src.span))
                    continue
                seen[src.name] = src.span
                self.sources[src.qualified] = src
                self.by_bare_source.setdefault(src.name, []).append(src)
        for iface in model.interfaces:
            declare(iface.name, iface.span, "action interface")
            self.interfaces.setdefault(iface.name, iface)
            seen = {}
            for m in iface.methods:
                if m.name in seen:
                    diags.append(error(
                        "E005", f"duplicate method '{m.name}' in interface '{iface.name}'", m.span))
                seen[m.name] = m.span
                pseen: set[str] = set()
                for pname, _ in m.params:
                    if pname in pseen:
                        diags.append(error(
                            "E005",
                            f"duplicate parameter '{pname}' in method '{iface.name}.{m.name}'",
                            m.span))
                    pseen.add(pname)
        for ctx in model.contexts:
            declare(ctx.name, ctx.span, "context operator")
            self.contexts.setdefault(ctx.name, ctx)
        for ctl in model.controllers:
            declare(ctl.name, ctl.span, "control operator")
            self.controllers.setdefault(ctl.name, ctl)

    def lookup_publisher(self, text: str) -> tuple[str, str, DataType] | str:
        """Bind an event/data reference; returns (kind, canonical, type) or an error message.

        Bare names bind to a context first, then to a source whose bare name is
        unique across devices; qualified names bind to `Device.source`.
        """
        if "." in text:
            dev_name, src_name = text.split(".", 1)
            src = self.sources.get(text)
            if src is None:
                if dev_name not in self.devices:
                    return f"unknown device class '{dev_name}'"
                return f"device '{dev_name}' has no source '{src_name}'"
            return ("source", src.qualified, src.value_type)
        if text in self.contexts:
            ctx = self.contexts[text]
            return ("context", ctx.name, ctx.output_type)
        candidates = self.by_bare_source.get(text, [])
        if len(candidates) == 1:
            src = candidates[0]
            return ("source", src.qualified, src.value_type)
        if len(candidates) > 1:
            owners = ", ".join(sorted(s.qualified for s in candidates))
            return f"ambiguous source reference '{text}' (candidates: {owners})"
        return f"unknown reference '{text}'"


def _resolve_contract(owner: str, contract: InteractionContract, scope: _Scope,
                      diags: list[Diagnostic]) -> InteractionContract:
    activation = []
    seen_targets: set[str] = set()
    for ref in contract.activation:
        bound = scope.lookup_publisher(ref.text)
        if isinstance(bound, str):
            diags.append(error("E001", bound, ref.span))
            activation.append(ref)
            continue
        kind, target, vtype = bound
        if target in seen_targets:
            diags.append(error(
                "E007", f"duplicate activation disjunct '{ref.text}' in '{owner}'", ref.span))
            continue
        seen_targets.add(target)
        activation.append(replace(ref, kind=kind, target=target, value_type=vtype))

    requirements = []
    seen_targets = set()
    for req in contract.requirements:
        bound = scope.lookup_publisher(req.text)
        if isinstance(bound, str):
            diags.append(error("E001", bound, req.span))
            requirements.append(req)
            continue
        kind, target, vtype = bound
        if target == owner:
            diags.append(error(
                "E009", f"'{owner}' requires data from itself", req.span))
            continue
        if target in seen_targets:
            diags.append(error(
                "E008", f"duplicate data requirement '{req.text}' in '{owner}'", req.span))
            continue
        seen_targets.add(target)
        requirements.append(replace(req, kind=kind, target=target, value_type=vtype))

    invocations = []
    seen_methods: set[str] = set()
    for inv in contract.invocations:
        iface = scope.interfaces.get(inv.interface)
        if iface is None:
            diags.append(error(
                "E001", f"unknown action interface '{inv.interface}'", inv.span))
            invocations.append(inv)
            continue
        method = iface.method(inv.method)
        if method is None:
            diags.append(error(
                "E001", f"interface '{inv.interface}' has no method '{inv.method}'", inv.span))
            invocations.append(inv)
            continue
        if inv.qualified in seen_methods:
            diags.append(error(
                "E008", f"duplicate invocation of '{inv.qualified}' in '{owner}'", inv.span))
            continue
        seen_methods.add(inv.qualified)
        invocations.append(replace(inv, params=method.params))

    return replace(contract, activation=tuple(activation),
                   requirements=tuple(requirements), invocations=tuple(invocations))


def resolve(model: ArchitectureModel) -> tuple[ArchitectureModel | None, list[Diagnostic]]:
    """Bind every reference of a raw model; returns (resolved model, diagnostics).

    The model is None when any error was reported.  Layering, typing and
    acyclicity are deliberately not enforced here so that a structurally bound
    model is available to the style checks even when it violates them.
    """
    diags: list[Diagnostic] = []
    scope = _Scope(model, diags)

    for dev in model.devices:
        if not dev.sources and not dev.provides:
            diags.append(error(
                "E006", f"device class '{dev.name}' declares no source and provides no action",
                dev.span))
        for iface_name in dev.provides:
            if iface_name not in scope.interfaces:
                diags.append(error(
                    "E001", f"unknown action interface '{iface_name}'", dev.span))

    contexts = tuple(
        replace(c, contract=_resolve_contract(c.name, c.contract, scope, diags))
        for c in model.contexts)
    controllers = tuple(
        replace(c, contract=_resolve_contract(c.name, c.contract, scope, diags))
        for c in model.controllers)

    if any(d.severity == "error" for d in diags):
        return None, diags
    return replace(model, contexts=contexts, controllers=controllers, resolved=True), diags
