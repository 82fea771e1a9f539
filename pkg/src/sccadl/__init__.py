"""Compiler, analyzer and verifier for an interaction-contract ADL.

Sense/compute/control architectures are described as device taxonomies plus
operators governed by interaction contracts (activation condition, data
requirements, emission).  The package parses and checks such descriptions,
derives dataflow facts, generates a contract-enforcing Python framework and
model-checks interaction invariants with counterexample traces.
"""

__version__ = "0.1.0"

from .checks import CheckReport, check_layering, check_model, check_push_acyclicity, check_types
from .dataflow import (
    InteractionGraph,
    activators_of,
    build_graph,
    dead_elements,
    may_impact,
    must_impact,
    to_dot,
)
from .generator import (
    CallbackSignature,
    emit_descriptor,
    generate_skeletons,
    map_contract,
    signature_drift,
)
from .model import ArchitectureModel, resolve
from .parser import parse, pretty
from .verifier import Verdict, build_ts, check, emit_promela, parse_invariants

__all__ = [
    "ArchitectureModel",
    "CallbackSignature",
    "CheckReport",
    "InteractionGraph",
    "Verdict",
    "activators_of",
    "build_graph",
    "build_ts",
    "check",
    "check_layering",
    "check_model",
    "check_push_acyclicity",
    "check_types",
    "dead_elements",
    "emit_descriptor",
    "emit_promela",
    "generate_skeletons",
    "map_contract",
    "may_impact",
    "must_impact",
    "parse",
    "parse_invariants",
    "pretty",
    "resolve",
    "signature_drift",
    "to_dot",
]
