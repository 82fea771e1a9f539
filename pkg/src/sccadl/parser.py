"""Textual ADL: lexer, recovering recursive-descent parser, canonical printer.

The accepted surface is a small keyword grammar (`device`, `actioninterface`,
`context`, `controller` declarations; `//` line comments; free whitespace).
The parser accepts a slightly larger language than the style allows -- a
context may carry `do` clauses, a controller `get`/`publish` clauses -- so the
style checker can report E003/E012 with precise positions instead of a bare
syntax error.  Two extensions over the minimal grammar: an optional `as TYPE`
ascription on `get` (checked against the target's type, E002) and mixed
source/context disjuncts in one `when` (both are publications).

On malformed input the parser reports E010/E011 and recovers at the next
top-level declaration keyword, so independent errors all surface in one run.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagnostics import Diagnostic, SourceSpan, error
from .model import (
    BOOL,
    INT,
    ActionInterface,
    ActionMethod,
    ArchitectureModel,
    ContextOperator,
    ControlOperator,
    DataRequirement,
    DataType,
    DeviceClass,
    EventRef,
    InteractionContract,
    Invocation,
    Source,
    opaque,
)

KEYWORDS = frozenset((
    "device", "source", "as", "provides", "actioninterface", "method",
    "context", "when", "provided", "or", "get", "always", "maybe",
    "publish", "controller", "do", "on",
))

TOP_KEYWORDS = frozenset(("device", "actioninterface", "context", "controller"))

_PUNCT = frozenset("{}();,.")


@dataclass(frozen=True)
class Token:
    kind: str  # "kw" | "id" | "punct" | "eof"
    text: str
    span: SourceSpan


def tokenize(text: str, filename: str) -> tuple[list[Token], list[Diagnostic]]:
    tokens: list[Token] = []
    diags: list[Diagnostic] = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col = line + 1, 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "/" and text.startswith("//", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token("punct", ch, SourceSpan(filename, line, col, line, col)))
            i += 1
            col += 1
            continue
        if ch.isalpha():
            start = i
            start_col = col
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
                col += 1
            word = text[start:i]
            kind = "kw" if word in KEYWORDS else "id"
            tokens.append(Token(kind, word, SourceSpan(filename, line, start_col, line, col - 1)))
            continue
        diags.append(error("E010", f"unexpected character {ch!r}",
                           SourceSpan(filename, line, col, line, col)))
        i += 1
        col += 1
    tokens.append(Token("eof", "", SourceSpan(filename, line, col, line, col)))
    return tokens, diags


class _Recover(Exception):
    """Unwind to the declaration level after a syntax error."""


class _Parser:
    def __init__(self, tokens: list[Token], diags: list[Diagnostic]):
        self.tokens = tokens
        self.pos = 0
        self.diags = diags

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        return self.peek().text == text and self.peek().kind in ("kw", "punct")

    def at_eof(self) -> bool:
        return self.peek().kind == "eof"

    def fail(self, expected: str) -> None:
        tok = self.peek()
        found = "end of file" if tok.kind == "eof" else repr(tok.text)
        self.diags.append(error("E010", f"expected {expected}, found {found}", tok.span))
        raise _Recover

    def unterminated(self, what: str, open_span: SourceSpan) -> None:
        self.diags.append(error(
            "E011", f"unterminated {what} (opened at {open_span})", self.peek().span))
        raise _Recover

    def expect(self, text: str, expected: str | None = None) -> Token:
        if self.at(text):
            return self.next()
        self.fail(expected or repr(text))
        raise AssertionError("unreachable")

    def expect_id(self, what: str) -> Token:
        tok = self.peek()
        if tok.kind == "id":
            return self.next()
        self.fail(what)
        raise AssertionError("unreachable")

    def parse_type(self) -> DataType:
        tok = self.expect_id("a type name")
        if tok.text == "Bool":
            return BOOL
        if tok.text == "Int":
            return INT
        return opaque(tok.text)

    def parse_ref_text(self, what: str) -> tuple[str, SourceSpan]:
        first = self.expect_id(what)
        if self.at("."):
            self.next()
            second = self.expect_id("a source name after '.'")
            span = SourceSpan(first.span.file, first.span.start_line, first.span.start_col,
                              second.span.end_line, second.span.end_col)
            return f"{first.text}.{second.text}", span
        return first.text, first.span

    # Declarations -------------------------------------------------------

    def parse_device(self) -> DeviceClass:
        self.expect("device")
        name = self.expect_id("a device class name")
        open_tok = self.expect("{")
        sources: list[Source] = []
        provides: list[str] = []
        while True:
            if self.at("}"):
                self.next()
                break
            if self.at_eof():
                self.unterminated(f"device '{name.text}'", open_tok.span)
            if self.at("source"):
                self.next()
                sname = self.expect_id("a source name")
                self.expect("as", "'as' and a type")
                vtype = self.parse_type()
                self.expect(";")
                sources.append(Source(sname.text, vtype, name.text, span=sname.span))
            elif self.at("provides"):
                self.next()
                iname = self.expect_id("an action interface name")
                self.expect(";")
                provides.append(iname.text)
            else:
                self.fail("'source', 'provides' or '}'")
        return DeviceClass(name.text, tuple(sources), tuple(provides), span=name.span)

    def parse_interface(self) -> ActionInterface:
        self.expect("actioninterface")
        name = self.expect_id("an action interface name")
        open_tok = self.expect("{")
        methods: list[ActionMethod] = []
        while True:
            if self.at("}"):
                if not methods:
                    self.fail("at least one 'method' declaration")
                self.next()
                break
            if self.at_eof():
                self.unterminated(f"actioninterface '{name.text}'", open_tok.span)
            self.expect("method", "'method' or '}'")
            mname = self.expect_id("a method name")
            self.expect("(")
            params: list[tuple[str, DataType]] = []
            if not self.at(")"):
                while True:
                    pname = self.expect_id("a parameter name")
                    self.expect("as", "'as' and a type")
                    params.append((pname.text, self.parse_type()))
                    if self.at(","):
                        self.next()
                        continue
                    break
            self.expect(")")
            self.expect(";")
            methods.append(ActionMethod(mname.text, tuple(params), span=mname.span))
        return ActionInterface(name.text, tuple(methods), span=name.span)

    def parse_when(self) -> tuple[EventRef, ...]:
        self.expect("when")
        refs: list[EventRef] = []
        while True:
            self.expect("provided", "'provided'")
            text, span = self.parse_ref_text("a source or context name")
            refs.append(EventRef(text, span=span))
            if self.at("or"):
                self.next()
                continue
            break
        return tuple(refs)

    def parse_operator_body(self, kind: str, name: str, open_tok: Token) -> InteractionContract:
        """Shared context/controller body: when + any mix of get/publish/do."""
        activation: tuple[EventRef, ...] | None = None
        requirements: list[DataRequirement] = []
        invocations: list[Invocation] = []
        publish: str | None = None
        publish_span = open_tok.span
        while True:
            if self.at("}"):
                close = self.next()
                break
            if self.at_eof():
                self.unterminated(f"{kind} '{name}'", open_tok.span)
            if self.at("when"):
                if activation is not None:
                    self.fail("a single 'when' clause per operator")
                activation = self.parse_when()
            elif self.at("get"):
                gtok = self.next()
                text, span = self.parse_ref_text("a source or context name")
                declared = None
                if self.at("as"):
                    self.next()
                    declared = self.parse_type()
                full = SourceSpan(gtok.span.file, gtok.span.start_line, gtok.span.start_col,
                                  span.end_line, span.end_col)
                requirements.append(DataRequirement(text, declared, span=full))
            elif self.at("always") or self.at("maybe"):
                mode = self.next()
                self.expect("publish", "'publish'")
                if publish is not None:
                    self.diags.append(error(
                        "E010", f"'{name}' declares more than one publish clause", mode.span))
                    raise _Recover
                publish = mode.text
                publish_span = mode.span
            elif self.at("do"):
                dtok = self.next()
                mname = self.expect_id("an action method name")
                self.expect("on", "'on' and an action interface name")
                iname = self.expect_id("an action interface name")
                span = SourceSpan(dtok.span.file, dtok.span.start_line, dtok.span.start_col,
                                  iname.span.end_line, iname.span.end_col)
                invocations.append(Invocation(mname.text, iname.text, span=span))
            else:
                self.fail("'when', 'get', 'do', 'always publish', 'maybe publish' or '}'")
        if activation is None:
            self.diags.append(error(
                "E010", f"{kind} '{name}' has no 'when' clause", close.span))
            raise _Recover
        if kind == "context" and publish is None:
            self.diags.append(error(
                "E010", f"context '{name}' has no publish clause", close.span))
            raise _Recover
        if kind == "controller" and not invocations and publish is None:
            self.diags.append(error(
                "E010", f"controller '{name}' has no 'do' clause", close.span))
            raise _Recover
        return InteractionContract(activation, tuple(requirements), publish,
                                   publish_span, tuple(invocations))

    def parse_context(self) -> ContextOperator:
        self.expect("context")
        name = self.expect_id("a context operator name")
        self.expect("as", "'as' and an output type")
        out_type = self.parse_type()
        open_tok = self.expect("{")
        contract = self.parse_operator_body("context", name.text, open_tok)
        return ContextOperator(name.text, out_type, contract, span=name.span)

    def parse_controller(self) -> ControlOperator:
        self.expect("controller")
        name = self.expect_id("a control operator name")
        open_tok = self.expect("{")
        contract = self.parse_operator_body("controller", name.text, open_tok)
        return ControlOperator(name.text, contract, span=name.span)

    def skip_to_declaration(self) -> None:
        """Recovery: advance to the next top-level declaration keyword."""
        depth = 0
        while not self.at_eof():
            tok = self.peek()
            if tok.text == "{":
                depth += 1
            elif tok.text == "}":
                depth = max(0, depth - 1)
            elif tok.kind == "kw" and tok.text in TOP_KEYWORDS and depth == 0:
                return
            self.next()

    def parse_model(self) -> ArchitectureModel:
        devices: list[DeviceClass] = []
        interfaces: list[ActionInterface] = []
        contexts: list[ContextOperator] = []
        controllers: list[ControlOperator] = []
        while not self.at_eof():
            try:
                if self.at("device"):
                    devices.append(self.parse_device())
                elif self.at("actioninterface"):
                    interfaces.append(self.parse_interface())
                elif self.at("context"):
                    contexts.append(self.parse_context())
                elif self.at("controller"):
                    controllers.append(self.parse_controller())
                else:
                    self.fail("'device', 'actioninterface', 'context' or 'controller'")
            except _Recover:
                self.skip_to_declaration()
        return ArchitectureModel(tuple(devices), tuple(interfaces),
                                 tuple(contexts), tuple(controllers))


def parse(text: str, filename: str = "<input>") -> tuple[ArchitectureModel, list[Diagnostic]]:
    """Parse ADL text into a raw model; diagnostics carry all syntax errors."""
    tokens, diags = tokenize(text, filename)
    parser = _Parser(tokens, diags)
    model = parser.parse_model()
    return model, diags


def _render_type(t: DataType) -> str:
    return t.render()


def _contract_lines(contract: InteractionContract) -> list[str]:
    lines = ["  when " + " or ".join(f"provided {ref.text}" for ref in contract.activation)]
    for req in contract.requirements:
        suffix = f" as {_render_type(req.declared)}" if req.declared is not None else ""
        lines.append(f"  get {req.text}{suffix}")
    if contract.publish is not None:
        lines.append(f"  {contract.publish} publish")
    for inv in contract.invocations:
        lines.append(f"  do {inv.method} on {inv.interface}")
    return lines


def pretty(model: ArchitectureModel) -> str:
    """Canonical text for a structurally valid model; reparses to an equal model.

    Declarations are grouped by kind (devices, interfaces, contexts,
    controllers) in declaration order; reference spellings are preserved.
    Enum types have no surface syntax and render by name.
    """
    blocks: list[str] = []
    for dev in model.devices:
        lines = [f"device {dev.name} {{"]
        for src in dev.sources:
            lines.append(f"  source {src.name} as {_render_type(src.value_type)};")
        for iface in dev.provides:
            lines.append(f"  provides {iface};")
        lines.append("}")
        blocks.append("\n".join(lines))
    for iface in model.interfaces:
        lines = [f"actioninterface {iface.name} {{"]
        for m in iface.methods:
            params = ", ".join(f"{p} as {_render_type(t)}" for p, t in m.params)
            lines.append(f"  method {m.name}({params});")
        lines.append("}")
        blocks.append("\n".join(lines))
    for ctx in model.contexts:
        lines = [f"context {ctx.name} as {_render_type(ctx.output_type)} {{"]
        lines += _contract_lines(ctx.contract)
        lines.append("}")
        blocks.append("\n".join(lines))
    for ctl in model.controllers:
        lines = [f"controller {ctl.name} {{"]
        lines += _contract_lines(ctl.contract)
        lines.append("}")
        blocks.append("\n".join(lines))
    if not blocks:
        return ""
    return "\n\n".join(blocks) + "\n"
