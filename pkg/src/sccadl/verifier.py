"""Finite dataflow semantics, interaction-invariant checking, Promela output.

An architecture reacts to one source stimulus at a time: the environment
publishes a source, activation tokens propagate along push edges, and the
reaction runs to completion (Quiesce) before the next stimulus.  Values are
abstracted away; the only nondeterminism is the choice of stimulus, the
interleaving of ready operators, a maybe-publisher's publish/skip choice, and
a controller's independent include/omit choice per whitelisted method.

One activation is an atomic step emitting an event block: Activate, the pulls
in declaration order, then the emission events.  The push graph is acyclic,
so every reaction is finite and checking is exhaustive and exact.

Invariants are fixed linear-temporal patterns over publish/activate/invoke
events, read over finite per-stimulus traces:

    never e        ==  G !e
    a precedes b   ==  !b W a     (no b strictly before the first a)
    a leadsto b    ==  G (a -> F b), F resolved before Quiesce

A violated invariant comes with a shortest counterexample trace, found by a
uniform-cost re-search after the exhaustive pass; ties break on the
lexicographically least event sequence, so verdicts and traces are fully
deterministic.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass

from .diagnostics import Diagnostic, SourceSpan, error
from .model import ArchitectureModel

DEFAULT_STATE_LIMIT = 10**6


@dataclass(frozen=True, order=True)
class Event:
    kind: str  # publish_source | activate | pull | publish | skip | invoke | quiesce
    a: str = ""
    b: str = ""

    def __str__(self) -> str:
        if self.kind == "publish_source":
            return f"PublishSource({self.a})"
        if self.kind == "activate":
            return f"Activate({self.a})"
        if self.kind == "pull":
            return f"PullFrom({self.a}, {self.b})"
        if self.kind == "publish":
            return f"Publish({self.a})"
        if self.kind == "skip":
            return f"SkipPublish({self.a})"
        if self.kind == "invoke":
            return f"InvokeAction({self.a}, {self.b})"
        return "Quiesce"


QUIESCE = Event("quiesce")
IDLE = ("idle",)


class StateLimitExceeded(Exception):
    """Exploration hit the configured state cap (code E050)."""

    code = "E050"


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.count = 0

    def spend(self) -> None:
        self.count += 1
        if self.count > self.limit:
            raise StateLimitExceeded(
                f"state limit of {self.limit} states exceeded")


@dataclass(frozen=True)
class _OpInfo:
    name: str
    kind: str  # "context" | "controller"
    pulls: tuple[str, ...]
    publish: str | None
    invocations: tuple[str, ...]  # qualified action methods, declaration order


class TransitionSystem:
    """Explicit-state reaction semantics of a fully checked model.

    States are `("idle",)` or `("reacting", pending)` where pending is a
    sorted multiset of operators awaiting activation, encoded as a tuple of
    (operator, token count).  `successors` enumerates atomic steps as
    (event block, next state) pairs in a fixed deterministic order.
    """

    def __init__(self, model: ArchitectureModel):
        if not model.resolved:
            raise ValueError("build_ts requires a resolved model")
        self.model = model
        self.stimuli: tuple[str, ...] = tuple(s.qualified for s in model.sources())
        self.ops: dict[str, _OpInfo] = {}
        for ctx in model.contexts:
            self.ops[ctx.name] = _OpInfo(
                ctx.name, "context",
                tuple(r.target for r in ctx.contract.requirements),
                ctx.contract.publish, ())
        for ctl in model.controllers:
            self.ops[ctl.name] = _OpInfo(
                ctl.name, "controller", (), None,
                tuple(i.qualified for i in ctl.contract.invocations))
        self.consumers: dict[str, tuple[str, ...]] = {}
        for op in model.operators():
            for ref in op.contract.activation:
                self.consumers.setdefault(ref.target, ())
                self.consumers[ref.target] += (op.name,)

    def initial(self) -> tuple:
        return IDLE

    def _enqueue(self, pending: dict[str, int], publisher: str) -> None:
        for consumer in self.consumers.get(publisher, ()):
            pending[consumer] = pending.get(consumer, 0) + 1

    @staticmethod
    def _freeze(pending: dict[str, int]) -> tuple:
        return ("reacting", tuple(sorted(pending.items())))

    def successors(self, state: tuple) -> list[tuple[tuple[Event, ...], tuple]]:
        if state == IDLE:
            result = []
            for stimulus in self.stimuli:
                pending: dict[str, int] = {}
                self._enqueue(pending, stimulus)
                result.append(((Event("publish_source", stimulus),),
                               self._freeze(pending)))
            return result
        pending_tuple = state[1]
        if not pending_tuple:
            return [((QUIESCE,), IDLE)]
        result = []
        base_pending = dict(pending_tuple)
        for op_name, count in pending_tuple:
            info = self.ops[op_name]
            left = dict(base_pending)
            if count == 1:
                del left[op_name]
            else:
                left[op_name] = count - 1
            prefix = [Event("activate", op_name)]
            prefix += [Event("pull", op_name, t) for t in info.pulls]
            if info.kind == "context":
                published = dict(left)
                self._enqueue(published, op_name)
                result.append((tuple(prefix + [Event("publish", op_name)]),
                               self._freeze(published)))
                if info.publish == "maybe":
                    result.append((tuple(prefix + [Event("skip", op_name)]),
                                   self._freeze(left)))
            else:
                for mask in range(2 ** len(info.invocations)):
                    events = list(prefix)
                    for i, method in enumerate(info.invocations):
                        if mask & (1 << i):
                            events.append(Event("invoke", op_name, method))
                    result.append((tuple(events), self._freeze(left)))
        return result

    def replay(self, trace: tuple[Event, ...]) -> bool:
        """True when the trace is one full stimulus-to-quiescence run."""
        state = IDLE
        remaining = list(trace)
        while remaining:
            for events, nxt in self.successors(state):
                if tuple(remaining[:len(events)]) == events:
                    remaining = remaining[len(events):]
                    state = nxt
                    break
            else:
                return False
            if state == IDLE:
                return not remaining and trace[-1] == QUIESCE
        return False


def build_ts(model: ArchitectureModel) -> TransitionSystem:
    return TransitionSystem(model)


# Invariant patterns ------------------------------------------------------


@dataclass(frozen=True)
class EventPattern:
    kind: str  # "publish" | "activate" | "invoke"
    name: str = ""  # canonical publisher / operator name
    controller: str | None = None  # None = wildcard, invoke only
    method: str = ""  # qualified action method, invoke only

    def matches(self, event: Event) -> bool:
        if self.kind == "publish":
            return event.kind in ("publish_source", "publish") and event.a == self.name
        if self.kind == "activate":
            return event.kind == "activate" and event.a == self.name
        return (event.kind == "invoke"
                and (self.controller is None or event.a == self.controller)
                and event.b == self.method)


@dataclass(frozen=True)
class InvariantSpec:
    pattern: str  # "never" | "precedes" | "leadsto"
    a: EventPattern
    b: EventPattern | None
    text: str
    span: SourceSpan


_EVENT_RE = re.compile(r"(publish|activate|invoke)\s*\(\s*([^)]*?)\s*\)")


def _resolve_publisher(model: ArchitectureModel, name: str) -> str | None:
    if "." in name:
        src = model.source(name)
        return src.qualified if src else None
    if model.context(name) is not None:
        return name
    candidates = [s for s in model.sources() if s.name == name]
    if len(candidates) == 1:
        return candidates[0].qualified
    return None


def _parse_event(model: ArchitectureModel, text: str, span: SourceSpan,
                 diags: list[Diagnostic]) -> tuple[EventPattern | None, str]:
    """Parse one event pattern off the front of `text`; returns (pattern, rest)."""
    m = _EVENT_RE.match(text)
    if m is None:
        diags.append(error(
            "E010", "expected publish(NAME), activate(NAME) or "
            "invoke(NAME|*, IFACE.METHOD)", span))
        return None, text
    kind, args = m.group(1), m.group(2)
    rest = text[m.end():]
    if kind == "publish":
        target = _resolve_publisher(model, args)
        if target is None:
            diags.append(error("E001", f"unknown publisher '{args}'", span))
            return None, rest
        return EventPattern("publish", target), rest
    if kind == "activate":
        if model.context(args) is None and model.controller(args) is None:
            diags.append(error("E001", f"unknown operator '{args}'", span))
            return None, rest
        return EventPattern("activate", args), rest
    parts = [p.strip() for p in args.split(",")]
    if len(parts) != 2 or "." not in parts[1]:
        diags.append(error(
            "E010", "invoke takes a controller (or *) and IFACE.METHOD", span))
        return None, rest
    ctl_name, method = parts
    controller = None
    if ctl_name != "*":
        if model.controller(ctl_name) is None:
            diags.append(error("E001", f"unknown controller '{ctl_name}'", span))
            return None, rest
        controller = ctl_name
    iface_name, mname = method.split(".", 1)
    iface = model.interface(iface_name)
    if iface is None or iface.method(mname) is None:
        diags.append(error("E001", f"unknown action method '{method}'", span))
        return None, rest
    return EventPattern("invoke", controller=controller, method=method), rest


def parse_invariants(text: str, model: ArchitectureModel,
                     filename: str = "<invariants>"
                     ) -> tuple[list[InvariantSpec], list[Diagnostic]]:
    """One invariant per line; `#` starts a comment, blank lines are skipped."""
    specs: list[InvariantSpec] = []
    diags: list[Diagnostic] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        span = SourceSpan(filename, lineno, 1, lineno, max(1, len(raw)))
        if line.startswith("never"):
            body = line[len("never"):].strip()
            pattern, rest = _parse_event(model, body, span, diags)
            if pattern is None or rest.strip():
                if pattern is not None:
                    diags.append(error("E010", f"trailing input {rest.strip()!r}", span))
                continue
            specs.append(InvariantSpec("never", pattern, None, line, span))
            continue
        a, rest = _parse_event(model, line, span, diags)
        if a is None:
            continue
        rest = rest.strip()
        keyword = rest.split(" ", 1)[0] if rest else ""
        if keyword not in ("precedes", "leadsto"):
            diags.append(error(
                "E010", "expected 'precedes' or 'leadsto' between two events", span))
            continue
        b, rest = _parse_event(model, rest[len(keyword):].strip(), span, diags)
        if b is None:
            continue
        if rest.strip():
            diags.append(error("E010", f"trailing input {rest.strip()!r}", span))
            continue
        specs.append(InvariantSpec(keyword, a, b, line, span))
    return specs, diags


# Checking -----------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    invariant: InvariantSpec
    holds: bool
    trace: tuple[Event, ...] | None = None


def _monitor_init(spec: InvariantSpec) -> tuple:
    if spec.pattern == "precedes":
        return (False, False)  # (a seen, violated)
    return (False,)  # never: violated; leadsto: obligation open


def _monitor_step(spec: InvariantSpec, state: tuple, event: Event) -> tuple:
    if spec.pattern == "never":
        return (state[0] or spec.a.matches(event),)
    if spec.pattern == "precedes":
        a_seen, bad = state
        if not a_seen:
            if spec.a.matches(event):
                a_seen = True
            elif spec.b is not None and spec.b.matches(event):
                bad = True
        return (a_seen, bad)
    (open_,) = state
    if spec.b is not None and spec.b.matches(event):
        return (False,)
    if spec.a.matches(event):
        return (True,)
    return (open_,)


def _monitor_fold(spec: InvariantSpec, state: tuple, events: tuple[Event, ...]) -> tuple:
    for event in events:
        state = _monitor_step(spec, state, event)
    return state


def _final_bad(spec: InvariantSpec, state: tuple) -> bool:
    if spec.pattern == "precedes":
        return state[1]
    return state[0]  # never: bad flag; leadsto: obligation still open


def _violation_exists(ts: TransitionSystem, spec: InvariantSpec, budget: _Budget) -> bool:
    memo: dict[tuple, bool] = {}

    def explore(state: tuple, mstate: tuple) -> bool:
        key = (state, mstate)
        if key in memo:
            return memo[key]
        budget.spend()
        found = False
        for events, nxt in ts.successors(state):
            m2 = _monitor_fold(spec, mstate, events)
            if events[-1].kind == "quiesce":
                found = _final_bad(spec, m2)
            else:
                found = explore(nxt, m2)
            if found:
                break
        memo[key] = found
        return found

    return explore(ts.initial(), _monitor_init(spec))


def _shortest_witness(ts: TransitionSystem, spec: InvariantSpec,
                      budget: _Budget) -> tuple[Event, ...]:
    """Uniform-cost search for the least (length, event sequence) violating trace."""
    start = (ts.initial(), _monitor_init(spec))
    heap: list[tuple[int, tuple[Event, ...], tuple | None]] = [(0, (), start)]
    best: dict[tuple, tuple[int, tuple[Event, ...]]] = {start: (0, ())}
    while heap:
        cost, trace, node = heapq.heappop(heap)
        if node is None:
            return trace
        if best.get(node, (cost, trace)) < (cost, trace):
            continue
        state, mstate = node
        for events, nxt in ts.successors(state):
            m2 = _monitor_fold(spec, mstate, events)
            entry = (cost + len(events), trace + events)
            if events[-1].kind == "quiesce":
                if _final_bad(spec, m2):
                    heapq.heappush(heap, (entry[0], entry[1], None))
                continue
            node2 = (nxt, m2)
            if node2 not in best or entry < best[node2]:
                best[node2] = entry
                budget.spend()
                heapq.heappush(heap, (entry[0], entry[1], node2))
    raise AssertionError("witness search found no violation after one was proven")


def check(ts: TransitionSystem, invariants: list[InvariantSpec],
          state_limit: int = DEFAULT_STATE_LIMIT) -> list[Verdict]:
    """Exhaustive verdict per invariant; Violated carries a shortest trace.

    The state budget is shared across the whole call and covers both the
    exhaustive pass and the counterexample re-search.
    """
    budget = _Budget(state_limit)
    verdicts = []
    for spec in invariants:
        if _violation_exists(ts, spec, budget):
            verdicts.append(Verdict(spec, False, _shortest_witness(ts, spec, budget)))
        else:
            verdicts.append(Verdict(spec, True))
    return verdicts


# Promela emission ---------------------------------------------------------

_PROMELA_RESERVED = frozenset((
    "active", "assert", "atomic", "bit", "bool", "break", "byte", "chan",
    "d_step", "do", "else", "empty", "enabled", "eval", "false", "fi", "for",
    "full", "goto", "hidden", "if", "init", "inline", "int", "len", "ltl",
    "mtype", "never", "nempty", "nfull", "notrace", "np_", "od", "of",
    "pc_value", "printf", "priority", "proctype", "provided", "run", "select",
    "short", "skip", "timeout", "trace", "true", "typedef", "unless",
    "unsigned", "xr", "xs", "env",
))


def _mangle(name: str) -> str:
    return name.replace(".", "_")


def _pulse(flag: str, indent: str) -> list[str]:
    return [f"{indent}{flag} = true;", f"{indent}{flag} = false;"]


def _prop(model: ArchitectureModel, pattern: EventPattern) -> str:
    flags: list[str] = []
    if pattern.kind == "publish":
        flags.append(f"ev_pub_{_mangle(pattern.name)}")
    elif pattern.kind == "activate":
        flags.append(f"ev_act_{_mangle(pattern.name)}")
    else:
        for ctl in model.controllers:
            if pattern.controller is not None and ctl.name != pattern.controller:
                continue
            for inv in ctl.contract.invocations:
                if inv.qualified == pattern.method:
                    flags.append(f"ev_inv_{_mangle(ctl.name)}_{_mangle(inv.qualified)}")
    if not flags:
        return "false"
    return " || ".join(flags)


def emit_promela(model: ArchitectureModel, invariants: list[InvariantSpec] | None = None) -> str:
    """Self-contained Promela rendering of the reaction semantics.

    One proctype per operator reads a dedicated channel per incoming push
    edge; an `env` proctype publishes a single nondeterministically chosen
    stimulus.  Events surface as pulsed booleans so invariants render as
    `ltl` claims over the standard pattern formulas.
    """
    if not model.resolved:
        raise ValueError("emit_promela requires a resolved model")
    invariants = invariants or []
    lines: list[str] = ["/* Generated Promela model of an SCC architecture. */", ""]

    for src in model.sources():
        lines.append(f"bool ev_pub_{_mangle(src.qualified)};")
    for ctx in model.contexts:
        lines.append(f"bool ev_act_{_mangle(ctx.name)};")
        lines.append(f"bool ev_pub_{_mangle(ctx.name)};")
        if ctx.contract.publish == "maybe":
            lines.append(f"bool ev_skip_{_mangle(ctx.name)};")
    for ctl in model.controllers:
        lines.append(f"bool ev_act_{_mangle(ctl.name)};")
        for inv in ctl.contract.invocations:
            lines.append(f"bool ev_inv_{_mangle(ctl.name)}_{_mangle(inv.qualified)};")

    # One channel per push edge, in consumer declaration order.
    edges: list[tuple[str, str]] = []
    for op in model.operators():
        for ref in op.contract.activation:
            edges.append((ref.target, op.name))
    channel: dict[tuple[str, str], str] = {}
    if edges:
        lines.append("")
    for i, (producer, consumer) in enumerate(edges):
        name = f"push_{i}_{_mangle(producer)}__{_mangle(consumer)}"
        channel[(producer, consumer)] = name
        lines.append(f"chan {name} = [1] of {{ bool }};")

    used_names: set[str] = set()

    def proc_name(name: str) -> str:
        candidate = _mangle(name)
        if candidate in _PROMELA_RESERVED or candidate in used_names:
            candidate = f"p_{candidate}"
        used_names.add(candidate)
        return candidate

    def sends(producer: str, indent: str) -> list[str]:
        return [f"{indent}{chan_name} ! true;"
                for (prod, _), chan_name in channel.items() if prod == producer]

    for op in model.operators():
        incoming = [(ref.target, op.name) for ref in op.contract.activation]
        is_context = model.context(op.name) is not None
        lines += ["", f"active proctype {proc_name(op.name)}() {{", "  bool tok;",
                  "end_wait:", "  do"]
        for edge in incoming:
            lines.append(f"  :: {channel[edge]} ? tok ->")
            lines += _pulse(f"ev_act_{_mangle(op.name)}", "       ")
            if is_context:
                if op.contract.publish == "maybe":
                    lines.append("       if")
                    lines.append("       ::")
                    lines += _pulse(f"ev_pub_{_mangle(op.name)}", "          ")
                    lines += sends(op.name, "          ")
                    lines.append("          skip")
                    lines.append("       ::")
                    lines += _pulse(f"ev_skip_{_mangle(op.name)}", "          ")
                    lines.append("          skip")
                    lines.append("       fi;")
                else:
                    lines += _pulse(f"ev_pub_{_mangle(op.name)}", "       ")
                    lines += sends(op.name, "       ")
            else:
                for inv in op.contract.invocations:
                    flag = f"ev_inv_{_mangle(op.name)}_{_mangle(inv.qualified)}"
                    lines.append("       if")
                    lines.append("       ::")
                    lines += _pulse(flag, "          ")
                    lines.append("          skip")
                    lines.append("       :: skip")
                    lines.append("       fi;")
            lines.append("       skip")
        lines += ["  od", "}"]

    if model.sources():
        lines += ["", "active proctype env() {", "  if"]
        for src in model.sources():
            lines.append("  ::")
            lines += _pulse(f"ev_pub_{_mangle(src.qualified)}", "     ")
            lines += sends(src.qualified, "     ")
            lines.append("     skip")
        lines += ["  fi", "}"]
    elif not model.operators():
        lines += ["", "init { skip }"]

    for i, spec in enumerate(invariants):
        a = _prop(model, spec.a)
        if spec.pattern == "never":
            formula = f"[] (!({a}))"
        else:
            b = _prop(model, spec.b) if spec.b is not None else "false"
            if spec.pattern == "precedes":
                formula = f"([] (!({b}))) || ((!({b})) U ({a}))"
            else:
                formula = f"[] (({a}) -> (<> ({b})))"
        lines += ["", f"/* {spec.text} */", f"ltl inv_{i} {{ {formula} }}"]

    return "\n".join(lines) + "\n"
