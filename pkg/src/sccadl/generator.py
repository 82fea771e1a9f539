"""Framework generation: contracts projected to callbacks, skeletons, descriptor.

Every interaction contract maps to one callback per activation disjunct:
the disjunct names the callback (`onNew<Disjunct>`) and provides its first
parameter; each data requirement becomes a pull-capability parameter; each
whitelisted action method an invoke-capability parameter; the emission decides
the return type (mandatory value for always-publish, optional for
maybe-publish, nothing for controllers).  A developer completing a skeleton
can therefore express exactly the interactions the contract licenses: pulls
and invocations are reachable only through the capability parameters, and
publication happens by returning.

Generation is deterministic (same model, same bytes) and confined to
`<out>/generated/`: developer subclasses live elsewhere and survive
regeneration; incompatible architecture changes then surface as conformance
failures against the regenerated skeletons.
"""

from __future__ import annotations

import json
import keyword
import re
import shutil
from dataclasses import dataclass
from pathlib import Path

from .diagnostics import Diagnostic, warning
from .model import ArchitectureModel, ContextOperator, ControlOperator, DataType

FORMAT_VERSION = "sccadl-fw/1"


class GenerationError(Exception):
    """Filesystem failure while writing generated output (code E040)."""

    code = "E040"


def _upper_first(name: str) -> str:
    return name[:1].upper() + name[1:]


def _lower_first(name: str) -> str:
    return name[:1].lower() + name[1:]


def _snake(name: str) -> str:
    step = re.sub(r"([A-Z]+)([A-Z][a-z])", r"\1_\2", name.replace(".", "_"))
    step = re.sub(r"([a-z0-9])([A-Z])", r"\1_\2", step)
    return step.lower()


def _bare(name: str) -> str:
    return name.split(".")[-1]


def _safe_param(name: str) -> str:
    return name + "_" if keyword.iskeyword(name) else name


@dataclass(frozen=True)
class CallbackSignature:
    """One abstract operation of an operator skeleton, fully determined by the contract."""

    owner: str
    name: str
    trigger: str  # canonical publisher of the activation disjunct
    activation_param: tuple[str, DataType]
    pull_params: tuple[tuple[str, str, DataType], ...]  # (param, target, value type)
    invoke_params: tuple[tuple[str, str, str, tuple[tuple[str, DataType], ...]], ...]
    return_kind: str  # "value" | "optional" | "nothing"
    return_type: DataType | None


def map_contract(operator: ContextOperator | ControlOperator) -> tuple[CallbackSignature, ...]:
    """Project one resolved operator's contract onto its callback signatures.

    One callback per activation disjunct, in declaration order; parameter
    names are derived from the contract and deduplicated deterministically.
    """
    contract = operator.contract
    if isinstance(operator, ContextOperator):
        return_kind = "value" if contract.publish == "always" else "optional"
        return_type: DataType | None = operator.output_type
    else:
        return_kind, return_type = "nothing", None

    taken = {"self", "value"}

    def fresh(base: str) -> str:
        name = _safe_param(base)
        candidate, i = name, 1
        while candidate in taken:
            i += 1
            candidate = f"{name}_{i}"
        taken.add(candidate)
        return candidate

    pull_params = tuple(
        (fresh(_lower_first(_bare(req.target))), req.target, req.value_type)
        for req in contract.requirements)
    invoke_params = tuple(
        (fresh(_lower_first(inv.method) + "On" + _upper_first(inv.interface)),
         inv.interface, inv.method, inv.params or ())
        for inv in contract.invocations)

    signatures = []
    used_names: set[str] = set()
    for ref in contract.activation:
        name = "onNew" + _upper_first(_bare(ref.target))
        candidate, i = name, 1
        while candidate in used_names:
            i += 1
            candidate = f"{name}_{i}"
        used_names.add(candidate)
        signatures.append(CallbackSignature(
            owner=operator.name,
            name=candidate,
            trigger=ref.target,
            activation_param=("value", ref.value_type),
            pull_params=pull_params,
            invoke_params=invoke_params,
            return_kind=return_kind,
            return_type=return_type,
        ))
    return tuple(signatures)


# Descriptor ---------------------------------------------------------------


def _modules(model: ArchitectureModel) -> dict[str, str]:
    """Element -> generated module name; collisions get a numeric suffix."""
    names: dict[str, str] = {}
    seen: set[str] = set()

    def assign(element: str, base: str) -> None:
        candidate, i = base, 1
        while candidate in seen:
            i += 1
            candidate = f"{base}_{i}"
        seen.add(candidate)
        names[element] = candidate

    for op in model.operators():
        assign(op.name, _snake(op.name))
    for src in model.sources():
        assign(src.qualified, "source_" + _snake(src.qualified))
    for iface in model.interfaces:
        assign(iface.name, "action_" + _snake(iface.name))
    return names


def _type_doc(t: DataType) -> str:
    return t.tag()


def emit_descriptor(model: ArchitectureModel) -> dict:
    """Machine-readable regeneration contract for the framework surface."""
    if not model.resolved:
        raise ValueError("emit_descriptor requires a resolved model")
    modules = _modules(model)
    operators = []
    for op in model.operators():
        callbacks = []
        for sig in map_contract(op):
            entry = {
                "name": sig.name,
                "trigger": sig.trigger,
                "activation": {"param": sig.activation_param[0],
                               "type": _type_doc(sig.activation_param[1])},
                "pulls": [{"param": p, "target": t, "type": _type_doc(vt)}
                          for p, t, vt in sig.pull_params],
                "invokes": [{"param": p, "interface": i, "method": m,
                             "params": [{"name": n, "type": _type_doc(vt)}
                                        for n, vt in ps]}
                            for p, i, m, ps in sig.invoke_params],
                "returns": {"kind": sig.return_kind},
            }
            if sig.return_type is not None:
                entry["returns"]["type"] = _type_doc(sig.return_type)
            callbacks.append(entry)
        operators.append({
            "name": op.name,
            "kind": "context" if isinstance(op, ContextOperator) else "controller",
            "module": modules[op.name],
            "callbacks": callbacks,
        })
    sources = [{
        "name": s.qualified,
        "type": _type_doc(s.value_type),
        "module": modules[s.qualified],
        "entry": "publish",
    } for s in model.sources()]
    actions = [{
        "name": iface.name,
        "module": modules[iface.name],
        "methods": [{"name": m.name,
                     "params": [{"name": n, "type": _type_doc(t)} for n, t in m.params]}
                    for m in iface.methods],
    } for iface in model.interfaces]
    return {
        "version": FORMAT_VERSION,
        "operators": operators,
        "sources": sources,
        "actions": actions,
    }


def descriptor_json(model: ArchitectureModel) -> str:
    return json.dumps(emit_descriptor(model), indent=2, sort_keys=True) + "\n"


def signature_drift(old: dict, new: dict) -> list[Diagnostic]:
    """W020 per element whose generated surface changed between two descriptors.

    A drifted operator means previously conforming developer callbacks no
    longer match the regenerated skeleton; same for action implementations
    and source publish entry points.
    """
    diags: list[Diagnostic] = []

    def index(doc: dict, key: str) -> dict[str, dict]:
        return {entry["name"]: entry for entry in doc.get(key, [])}

    for section, what in (("operators", "callback signatures of operator"),
                          ("actions", "method table of action interface"),
                          ("sources", "publish entry point of source")):
        olds, news = index(old, section), index(new, section)
        for name, entry in sorted(olds.items()):
            if name not in news:
                diags.append(warning("W020", f"{what} '{name}' removed by regeneration"))
            elif news[name] != entry:
                diags.append(warning("W020", f"{what} '{name}' changed; dependent "
                                     "implementations must be revisited"))
    return diags


# Code generation -----------------------------------------------------------

_PY_TYPE = {"Bool": "bool", "Int": "int"}


def _py_type(t: DataType) -> str:
    if t.kind in _PY_TYPE:
        return _PY_TYPE[t.kind]
    return "str" if t.kind == "Enum" else "object"


def _return_annotation(sig: CallbackSignature) -> str:
    if sig.return_kind == "nothing":
        return "None"
    base = _py_type(sig.return_type)
    return f"{base} | None" if sig.return_kind == "optional" else base


def _callback_spec_src(sig: CallbackSignature) -> list[str]:
    lines = ["        CallbackSpec("]
    lines.append(f"            name={sig.name!r},")
    lines.append(f"            trigger={sig.trigger!r},")
    lines.append(f"            value_tag={sig.activation_param[1].tag()!r},")
    pulls = ", ".join(f"PullSpec({p!r}, {t!r}, {vt.tag()!r})"
                      for p, t, vt in sig.pull_params)
    pulls = f"({pulls},)" if pulls else "()"
    lines.append(f"            pulls={pulls},")
    invokes = ", ".join(
        "InvokeSpec({!r}, {!r}, {!r}, {!r})".format(
            p, i, m, tuple((n, t.tag()) for n, t in ps))
        for p, i, m, ps in sig.invoke_params)
    invokes = f"({invokes},)" if invokes else "()"
    lines.append(f"            invokes={invokes},")
    lines.append(f"            returns={sig.return_kind!r},")
    tag = sig.return_type.tag() if sig.return_type is not None else None
    lines.append(f"            return_tag={tag!r},")
    normalized = _return_annotation(sig).replace(" ", "")
    lines.append(f"            return_annotation={normalized!r},")
    lines.append("        ),")
    return lines


def _operator_module(model: ArchitectureModel, op, modules: dict[str, str]) -> str:
    is_context = isinstance(op, ContextOperator)
    base = "ContextSkeleton" if is_context else "ControllerSkeleton"
    signatures = map_contract(op)
    imports = {base, "CallbackSpec"}
    if any(sig.pull_params for sig in signatures):
        imports |= {"PullSpec", "PullCapability"}
    if any(sig.invoke_params for sig in signatures):
        imports |= {"InvokeSpec", "InvokeCapability"}
    kind = "context operator" if is_context else "control operator"
    lines = [
        f'"""Skeleton for {kind} {op.name}.',
        "",
        "Generated code; do not edit.  Subclass outside the generated directory and",
        "implement the callbacks: interactions beyond the contract are not reachable",
        "from the provided parameters.",
        '"""',
        "",
        "from __future__ import annotations",
        "",
        "from abc import abstractmethod",
        "",
        f"from . import {', '.join(sorted(imports))}",
        "",
        "",
        f"class {op.name}({base}):",
        f"    ELEMENT = {op.name!r}",
        "    CALLBACKS = (",
    ]
    for sig in signatures:
        lines += _callback_spec_src(sig)
    lines.append("    )")
    for sig in signatures:
        params = ["self", f"value: {_py_type(sig.activation_param[1])}"]
        params += [f"{p}: PullCapability" for p, _, _ in sig.pull_params]
        params += [f"{p}: InvokeCapability" for p, _, _, _ in sig.invoke_params]
        ret = _return_annotation(sig)
        lines.append("")
        lines.append("    @abstractmethod")
        lines.append(f"    def {sig.name}({', '.join(params)}) -> {ret}:")
        if sig.return_kind == "value":
            doc = f"React to a publication of {sig.trigger}; the returned value is published."
        elif sig.return_kind == "optional":
            doc = f"React to a publication of {sig.trigger}; return None to skip publishing."
        else:
            doc = f"React to a publication of {sig.trigger}."
        lines.append(f'        """{doc}"""')
        lines.append("        raise NotImplementedError")
    return "\n".join(lines) + "\n"


def _source_module(src) -> str:
    class_name = src.owner + _upper_first(src.name)
    return "\n".join([
        f'"""Publish entry point for source {src.qualified}.  Generated code; do not edit."""',
        "",
        "from __future__ import annotations",
        "",
        "from . import Runtime",
        "",
        f"ELEMENT = {src.qualified!r}",
        "",
        "",
        f"class {class_name}:",
        f'    """Environment-side handle feeding {src.qualified} readings into a runtime."""',
        "",
        "    def __init__(self, runtime: Runtime):",
        "        self._runtime = runtime",
        "",
        f"    def publish(self, value: {_py_type(src.value_type)}) -> list[str]:",
        "        return self._runtime.publish(ELEMENT, value)",
    ]) + "\n"


def _action_module(iface) -> str:
    lines = [
        f'"""Method table for action interface {iface.name}.  Generated code; do not edit."""',
        "",
        "from __future__ import annotations",
        "",
        "from abc import abstractmethod",
        "",
        "from . import ActionBase",
        "",
        "",
        f"class {iface.name}(ActionBase):",
        f"    INTERFACE = {iface.name!r}",
        "    METHODS = {!r}".format(
            tuple((m.name, tuple((n, t.tag()) for n, t in m.params))
                  for m in iface.methods)),
    ]
    for m in iface.methods:
        params = ["self"] + [f"{_safe_param(n)}: {_py_type(t)}" for n, t in m.params]
        lines.append("")
        lines.append("    @abstractmethod")
        lines.append(f"    def {m.name}({', '.join(params)}) -> None:")
        lines.append("        raise NotImplementedError")
    return "\n".join(lines) + "\n"


def _glue_module(model: ArchitectureModel) -> str:
    sources = {s.qualified: s.value_type.tag() for s in model.sources()}
    push: dict[str, tuple[str, ...]] = {s.qualified: () for s in model.sources()}
    for ctx in model.contexts:
        push.setdefault(ctx.name, ())
    for op in model.operators():
        for ref in op.contract.activation:
            push[ref.target] = push.get(ref.target, ()) + (op.name,)
    operators = {op.name: ("context" if isinstance(op, ContextOperator) else "controller")
                 for op in model.operators()}
    invoked = tuple(sorted({inv.interface for ctl in model.controllers
                            for inv in ctl.contract.invocations}))
    tables = "\n".join([
        f"SOURCES = {sources!r}",
        "",
        f"PUSH = {push!r}",
        "",
        f"OPERATORS = {operators!r}",
        "",
        f"INVOKED_ACTIONS = {invoked!r}",
    ])
    return _GLUE_HEAD + tables + _GLUE_BODY


_GLUE_HEAD = '''"""Runtime glue for the generated contract-enforcing framework.

Generated code; do not edit.  Register one implementation per operator and
per invoked action interface, optionally attach readers for pulled sources,
then publish stimuli.  Each stimulus runs to quiescence before the next;
the conformance checks reject implementations that do not match the
architecture's callback signatures, and the capability objects confine
pulls and invocations to what each contract licenses.
"""

from __future__ import annotations

import inspect
from abc import ABC
from dataclasses import dataclass

FRAMEWORK_VERSION = "sccadl-fw/1"

'''

_GLUE_BODY = '''


class FrameworkError(Exception):
    """Wiring misuse: missing registrations, readers, or reentrant stimuli."""


class ConformanceError(FrameworkError):
    """An implementation does not satisfy the architecture contract."""


@dataclass(frozen=True)
class PullSpec:
    param: str
    target: str
    value_tag: str


@dataclass(frozen=True)
class InvokeSpec:
    param: str
    interface: str
    method: str
    params: tuple


@dataclass(frozen=True)
class CallbackSpec:
    name: str
    trigger: str
    value_tag: str
    pulls: tuple
    invokes: tuple
    returns: str  # "value" | "optional" | "nothing"
    return_tag: str | None
    return_annotation: str


class OperatorSkeleton(ABC):
    """Base of every generated operator skeleton."""

    ELEMENT: str
    CALLBACKS: tuple


class ContextSkeleton(OperatorSkeleton):
    pass


class ControllerSkeleton(OperatorSkeleton):
    pass


class ActionBase(ABC):
    """Base of every generated action interface table."""

    INTERFACE: str
    METHODS: tuple


def _type_ok(tag: str, value: object) -> bool:
    if tag == "Bool":
        return type(value) is bool
    if tag == "Int":
        return type(value) is int and type(value) is not bool
    if tag.startswith("Enum("):
        literals = tag[tag.index(",") + 1:-1].split("|")
        return isinstance(value, str) and value in literals
    return True  # opaque payloads are not validated


def _annotation_text(annotation: object) -> str:
    text = annotation if isinstance(annotation, str) else inspect.formatannotation(annotation)
    text = text.replace(" ", "").replace("typing.", "")
    if text.startswith("Optional[") and text.endswith("]"):
        text = text[len("Optional["):-1] + "|None"
    return text


def _single_base(cls: type, marker: str) -> type:
    hits = [base for base in cls.__mro__ if marker in vars(base)]
    if len(hits) != 1:
        raise ConformanceError(
            f"{cls.__name__} must derive from exactly one generated class, found {len(hits)}")
    return hits[0]


def check_conformance(instance: "OperatorSkeleton") -> str:
    """Verify an operator implementation against its skeleton's callback specs."""
    cls = type(instance)
    skeleton = _single_base(cls, "ELEMENT")
    for spec in skeleton.CALLBACKS:
        fn = getattr(cls, spec.name, None)
        if fn is None or getattr(fn, "__isabstractmethod__", False):
            raise ConformanceError(f"{cls.__name__} does not implement {spec.name}")
        signature = inspect.signature(fn)
        expected = ["self", "value"]
        expected += [pull.param for pull in spec.pulls]
        expected += [inv.param for inv in spec.invokes]
        found = list(signature.parameters)
        if found != expected:
            raise ConformanceError(
                f"{cls.__name__}.{spec.name} must accept exactly {expected}, found {found}")
        if signature.return_annotation is not inspect.Signature.empty:
            declared = _annotation_text(signature.return_annotation)
            if declared != spec.return_annotation:
                raise ConformanceError(
                    f"{cls.__name__}.{spec.name} must be annotated "
                    f"-> {spec.return_annotation}, found -> {declared}")
    return skeleton.ELEMENT


def check_action_conformance(instance: "ActionBase") -> str:
    cls = type(instance)
    table = _single_base(cls, "INTERFACE")
    for method_name, params in table.METHODS:
        fn = getattr(cls, method_name, None)
        if fn is None or getattr(fn, "__isabstractmethod__", False):
            raise ConformanceError(f"{cls.__name__} does not implement {method_name}")
        expected = ["self"] + [name for name, _ in params]
        found = list(inspect.signature(fn).parameters)
        if found != expected:
            raise ConformanceError(
                f"{cls.__name__}.{method_name} must accept exactly {expected}, found {found}")
    return table.INTERFACE


class PullCapability:
    """Reads one declared data requirement; valid only during its activation."""

    def __init__(self, runtime: "Runtime", owner: str, spec: PullSpec, trace: list):
        self._runtime = runtime
        self._owner = owner
        self._spec = spec
        self._trace = trace
        self._expired = False

    def __call__(self) -> object:
        if self._expired:
            raise ConformanceError(
                f"pull of {self._spec.target} attempted outside its activation")
        value = self._runtime._pull(self._spec)
        self._trace.append(f"PullFrom({self._owner}, {self._spec.target})")
        return value


class InvokeCapability:
    """Commands one whitelisted action method, at most once per activation."""

    def __init__(self, runtime: "Runtime", owner: str, spec: InvokeSpec, trace: list):
        self._runtime = runtime
        self._owner = owner
        self._spec = spec
        self._trace = trace
        self._expired = False
        self._used = False

    def __call__(self, *args) -> None:
        qualified = f"{self._spec.interface}.{self._spec.method}"
        if self._expired:
            raise ConformanceError(f"invocation of {qualified} attempted outside its activation")
        if self._used:
            raise ConformanceError(f"{qualified} invoked twice in one activation")
        if len(args) != len(self._spec.params):
            raise ConformanceError(
                f"{qualified} takes {len(self._spec.params)} argument(s), got {len(args)}")
        for (name, tag), arg in zip(self._spec.params, args):
            if not _type_ok(tag, arg):
                raise ConformanceError(
                    f"{qualified} argument {name!r} must be {tag}, got {arg!r}")
        self._used = True
        self._trace.append(f"InvokeAction({self._owner}, {qualified})")
        implementation = self._runtime._actions[self._spec.interface]
        getattr(implementation, self._spec.method)(*args)


class Runtime:
    """Run-to-completion dispatcher wiring implementations per the architecture.

    Callbacks for one stimulus run sequentially; stimuli are serialized, so a
    publish during a reaction is rejected rather than interleaved.
    """

    def __init__(self) -> None:
        self._operators: dict = {}
        self._specs: dict = {}
        self._actions: dict = {}
        self._readers: dict = {}
        self._values: dict = {}
        self._reacting = False

    def register(self, instance: OperatorSkeleton) -> None:
        element = check_conformance(instance)
        if element not in OPERATORS:
            raise FrameworkError(f"unknown operator {element!r}")
        if element in self._operators:
            raise FrameworkError(f"operator {element!r} registered twice")
        self._operators[element] = instance
        self._specs[element] = _single_base(type(instance), "ELEMENT").CALLBACKS

    def register_action(self, instance: ActionBase) -> None:
        interface = check_action_conformance(instance)
        if interface in self._actions:
            raise FrameworkError(f"action {interface!r} registered twice")
        self._actions[interface] = instance

    def set_reader(self, source: str, reader) -> None:
        if source not in SOURCES:
            raise FrameworkError(f"unknown source {source!r}")
        self._readers[source] = reader

    def _require_complete(self) -> None:
        missing = sorted(name for name in OPERATORS if name not in self._operators)
        if missing:
            raise FrameworkError(f"unregistered operators: {', '.join(missing)}")
        missing = sorted(name for name in INVOKED_ACTIONS if name not in self._actions)
        if missing:
            raise FrameworkError(f"unregistered action interfaces: {', '.join(missing)}")

    def _pull(self, spec: PullSpec) -> object:
        target = spec.target
        if target in SOURCES and target in self._readers:
            value = self._readers[target]()
        elif target in self._values:
            value = self._values[target]
        else:
            raise FrameworkError(f"no reader or prior publication for {target!r}")
        if not _type_ok(spec.value_tag, value):
            raise ConformanceError(
                f"pull of {target!r} must produce {spec.value_tag}, got {value!r}")
        return value

    def publish(self, source: str, value: object) -> list:
        """Feed one source stimulus and run the reaction to quiescence.

        Returns the reaction trace, one event per entry.
        """
        if source not in SOURCES:
            raise FrameworkError(f"unknown source {source!r}")
        if self._reacting:
            raise FrameworkError("reentrant publish: reactions are serialized")
        if not _type_ok(SOURCES[source], value):
            raise ConformanceError(
                f"source {source!r} publishes {SOURCES[source]}, got {value!r}")
        self._require_complete()
        trace = [f"PublishSource({source})"]
        self._values[source] = value
        self._reacting = True
        try:
            queue = [(consumer, source, value) for consumer in PUSH.get(source, ())]
            while queue:
                operator, trigger, triggering = queue.pop(0)
                queue.extend(self._activate(operator, trigger, triggering, trace))
        finally:
            self._reacting = False
        trace.append("Quiesce")
        return trace

    def _activate(self, operator: str, trigger: str, value: object, trace: list) -> list:
        instance = self._operators[operator]
        spec = next(cb for cb in self._specs[operator] if cb.trigger == trigger)
        trace.append(f"Activate({operator})")
        capabilities = [PullCapability(self, operator, pull, trace) for pull in spec.pulls]
        capabilities += [InvokeCapability(self, operator, inv, trace) for inv in spec.invokes]
        try:
            result = getattr(instance, spec.name)(value, *capabilities)
        finally:
            for capability in capabilities:
                capability._expired = True
        if spec.returns == "nothing":
            if result is not None:
                raise ConformanceError(
                    f"{operator}.{spec.name} is a controller callback and must return None")
            return []
        if result is None:
            if spec.returns == "value":
                raise ConformanceError(
                    f"{operator}.{spec.name} always publishes and must return "
                    f"a {spec.return_tag} value")
            trace.append(f"SkipPublish({operator})")
            return []
        if not _type_ok(spec.return_tag, result):
            raise ConformanceError(
                f"{operator}.{spec.name} must publish {spec.return_tag}, returned {result!r}")
        self._values[operator] = result
        trace.append(f"Publish({operator})")
        return [(consumer, operator, result) for consumer in PUSH.get(operator, ())]
'''


def generate_skeletons(model: ArchitectureModel, out_dir: str | Path) -> list[str]:
    """Write the framework under `<out_dir>/generated/`; returns relative paths.

    The generated directory is owned by the generator and fully rewritten;
    nothing outside it is touched.  Output is byte-deterministic.
    """
    if not model.resolved:
        raise ValueError("generate_skeletons requires a resolved model")
    out = Path(out_dir)
    target = out / "generated"
    modules = _modules(model)
    files: dict[str, str] = {"__init__.py": _glue_module(model)}
    for op in model.operators():
        files[modules[op.name] + ".py"] = _operator_module(model, op, modules)
    for src in model.sources():
        files[modules[src.qualified] + ".py"] = _source_module(src)
    for iface in model.interfaces:
        files[modules[iface.name] + ".py"] = _action_module(iface)
    try:
        if target.exists():
            shutil.rmtree(target)
        target.mkdir(parents=True)
        for name, content in files.items():
            (target / name).write_text(content, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise GenerationError(f"cannot write generated framework: {exc}") from exc
    return sorted(f"generated/{name}" for name in files)


def write_descriptor(model: ArchitectureModel, out_dir: str | Path) -> str:
    """Write the canonical descriptor into the generated directory."""
    out = Path(out_dir) / "generated"
    try:
        out.mkdir(parents=True, exist_ok=True)
        path = out / "descriptor.json"
        path.write_text(descriptor_json(model), encoding="utf-8", newline="\n")
    except OSError as exc:
        raise GenerationError(f"cannot write descriptor: {exc}") from exc
    return "generated/descriptor.json"
