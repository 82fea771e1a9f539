"""Command-line front end: check, analyze, graph, generate, verify.

Results go to stdout, diagnostics to stderr, so reports can be piped.
Exit codes: 0 success (all invariants hold), 1 error diagnostics or a
violated invariant, 2 usage error, 3 state limit exceeded.  `--json` switches
stdout to one canonical JSON document (sorted keys, compact separators).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .checks import check_model
from .dataflow import (
    UnknownElementError,
    activators_of,
    build_graph,
    dead_element_code,
    dead_elements,
    may_impact,
    must_impact,
    to_dot,
)
from .diagnostics import Diagnostic, error, has_errors, to_json_obj
from .generator import (
    GenerationError,
    emit_descriptor,
    generate_skeletons,
    signature_drift,
    write_descriptor,
)
from .model import resolve
from .parser import parse
from .verifier import (
    DEFAULT_STATE_LIMIT,
    StateLimitExceeded,
    build_ts,
    check,
    emit_promela,
    parse_invariants,
)

STATE_LIMIT_ENV = "SCCADL_STATE_LIMIT"


def _emit_diagnostics(diags: list[Diagnostic]) -> None:
    for d in diags:
        print(d, file=sys.stderr)


def _print_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def _load_checked(path: str, collect: list[Diagnostic]):
    """Parse, resolve and check a file; returns the model or None on errors."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        collect.append(error("E040", f"cannot read {path}: {exc}"))
        return None
    raw, diags = parse(text, path)
    collect.extend(diags)
    if has_errors(diags):
        return None
    resolved, diags = resolve(raw)
    collect.extend(diags)
    if resolved is None:
        return None
    report = check_model(resolved)
    collect.extend(report.diagnostics)
    if not report.ok:
        return None
    return resolved


def _cmd_check(args) -> int:
    diags: list[Diagnostic] = []
    model = _load_checked(args.file, diags)
    _emit_diagnostics(diags)
    ok = model is not None
    if args.json:
        _print_json({"diagnostics": [to_json_obj(d) for d in diags], "ok": ok})
    return 0 if ok else 1


def _resolve_element(graph, name: str) -> str:
    """Accept canonical graph names plus unambiguous bare source names."""
    if name in graph.kinds:
        return name
    candidates = [n for n in graph.nodes
                  if graph.kinds[n] == "source" and n.split(".")[-1] == name]
    if len(candidates) == 1:
        return candidates[0]
    raise UnknownElementError(f"unknown element '{name}'")


def _cmd_analyze(args) -> int:
    diags: list[Diagnostic] = []
    model = _load_checked(args.file, diags)
    _emit_diagnostics(diags)
    if model is None:
        if args.json:
            _print_json({"diagnostics": [to_json_obj(d) for d in diags], "ok": False})
        return 1
    graph = build_graph(model)
    try:
        if args.impact is not None:
            result = sorted(may_impact(graph, _resolve_element(graph, args.impact)))
        elif args.must_impact is not None:
            result = sorted(must_impact(graph, _resolve_element(graph, args.must_impact)))
        elif args.activators is not None:
            result = sorted(activators_of(graph, _resolve_element(graph, args.activators)))
        else:
            dead = dead_elements(graph)
            for element in sorted(dead):
                _emit_diagnostics([Diagnostic(
                    dead_element_code(graph, element), "warning",
                    f"'{element}' is never consumed")])
            result = sorted(dead)
    except UnknownElementError as exc:
        _emit_diagnostics([error("E001", str(exc))])
        if args.json:
            _print_json({"diagnostics": [to_json_obj(error("E001", str(exc)))], "ok": False})
        return 1
    if args.json:
        _print_json(result)
    else:
        for element in result:
            print(element)
    return 0


def _cmd_graph(args) -> int:
    diags: list[Diagnostic] = []
    model = _load_checked(args.file, diags)
    _emit_diagnostics(diags)
    if model is None:
        return 1
    dot = to_dot(build_graph(model))
    if args.json:
        _print_json({"dot": dot})
    else:
        print(dot, end="")
    return 0


def _cmd_generate(args) -> int:
    diags: list[Diagnostic] = []
    model = _load_checked(args.file, diags)
    _emit_diagnostics(diags)
    if model is None:
        return 1
    previous = None
    descriptor_path = Path(args.out) / "generated" / "descriptor.json"
    if descriptor_path.exists():
        try:
            previous = json.loads(descriptor_path.read_text(encoding="utf-8"))
        except (OSError, ValueError):
            previous = None
    try:
        files = generate_skeletons(model, args.out)
        if args.descriptor:
            files.append(write_descriptor(model, args.out))
    except GenerationError as exc:
        _emit_diagnostics([error("E040", str(exc))])
        return 1
    if previous is not None:
        _emit_diagnostics(signature_drift(previous, emit_descriptor(model)))
    files = sorted(files)
    if args.json:
        _print_json({"files": files, "out": str(args.out)})
    else:
        for name in files:
            print(name)
    return 0


def _cmd_verify(args) -> int:
    diags: list[Diagnostic] = []
    model = _load_checked(args.file, diags)
    _emit_diagnostics(diags)
    if model is None:
        return 1
    invariants = []
    if args.invariants is not None:
        try:
            text = Path(args.invariants).read_text(encoding="utf-8")
        except OSError as exc:
            _emit_diagnostics([error("E040", f"cannot read {args.invariants}: {exc}")])
            return 1
        invariants, inv_diags = parse_invariants(text, model, args.invariants)
        _emit_diagnostics(inv_diags)
        if has_errors(inv_diags):
            return 1
    if args.emit_promela is not None:
        try:
            Path(args.emit_promela).write_text(
                emit_promela(model, invariants), encoding="utf-8", newline="\n")
        except OSError as exc:
            _emit_diagnostics([error("E040", f"cannot write {args.emit_promela}: {exc}")])
            return 1
    if not invariants:
        if args.json:
            _print_json({"verdicts": []})
        return 0
    ts = build_ts(model)
    try:
        verdicts = check(ts, invariants, args.state_limit)
    except StateLimitExceeded as exc:
        _emit_diagnostics([error("E050", str(exc))])
        return 3
    if args.json:
        _print_json({"verdicts": [
            {"invariant": v.invariant.text, "holds": v.holds,
             "trace": None if v.trace is None else [str(e) for e in v.trace]}
            for v in verdicts]})
    else:
        for v in verdicts:
            if v.holds:
                print(f"HOLDS {v.invariant.text}")
            else:
                print(f"VIOLATED {v.invariant.text}")
                for event in v.trace or ():
                    print(f"  {event}")
    return 0 if all(v.holds for v in verdicts) else 1


def _default_state_limit() -> int:
    raw = os.environ.get(STATE_LIMIT_ENV)
    if raw is None:
        return DEFAULT_STATE_LIMIT
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_STATE_LIMIT


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sccadl",
        description="Check, analyze, generate for and verify SCC architecture descriptions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse, resolve and run all wellformedness checks")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("analyze", help="dataflow analyses over the interaction graph")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--impact", metavar="SRC",
                       help="elements possibly activated by a publication of SRC")
    group.add_argument("--must-impact", metavar="SRC", dest="must_impact",
                       help="operators necessarily activated by a publication of SRC")
    group.add_argument("--activators", metavar="EL",
                       help="elements whose publications can trigger EL")
    group.add_argument("--dead", action="store_true",
                       help="elements whose output nothing consumes")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_analyze, impact=None, must_impact=None, activators=None)

    p = sub.add_parser("graph", help="export the interaction graph")
    p.add_argument("file")
    p.add_argument("--format", choices=("dot",), default="dot")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("generate", help="generate the programming framework")
    p.add_argument("file")
    p.add_argument("--out", required=True, help="output directory (owns <out>/generated)")
    p.add_argument("--descriptor", action="store_true",
                   help="also write generated/descriptor.json")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("verify", help="model-check interaction invariants")
    p.add_argument("file")
    p.add_argument("--invariants", help="invariant file, one pattern per line")
    p.add_argument("--emit-promela", metavar="OUT", dest="emit_promela",
                   help="also write a Promela rendering of the model")
    p.add_argument("--state-limit", type=int, dest="state_limit",
                   default=_default_state_limit())
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        if args.invariants is None and args.emit_promela is None:
            parser.error("verify needs --invariants and/or --emit-promela")
        if args.state_limit < 1:
            parser.error("--state-limit must be >= 1")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
