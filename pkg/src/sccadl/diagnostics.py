"""Diagnostic codes, source positions and reporting primitives."""

from __future__ import annotations

from dataclasses import dataclass, field

# Stable code registry. Codes are part of the tool's contract: once released
# a code keeps its meaning (tests/fixtures/code_registry.txt freezes this table).
CODES = {
    "E001": "UnknownReference",
    "E002": "TypeMismatch",
    "E003": "LayerViolation",
    "E004": "CycleDetected",
    "E005": "DuplicateName",
    "E006": "EmptyDeviceClass",
    "E007": "DuplicateDisjunct",
    "E008": "DuplicateInteraction",
    "E009": "SelfRequirement",
    "E010": "SyntaxError",
    "E011": "UnterminatedBlock",
    "E012": "ControllerRequirement",
    "E013": "HeterogeneousActivation",
    "E040": "IoError",
    "E050": "StateLimitExceeded",
    "W020": "SignatureDrift",
    "W030": "DeadOperator",
    "W031": "DeadSource",
}


@dataclass(frozen=True)
class SourceSpan:
    """1-based region of an input file; start must not come after end."""

    file: str
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self) -> None:
        if (self.start_line, self.start_col) > (self.end_line, self.end_col):
            raise ValueError("span start is after its end")

    @staticmethod
    def point(file: str, line: int, col: int) -> "SourceSpan":
        return SourceSpan(file, line, col, line, col)

    def __str__(self) -> str:
        return f"{self.file}:{self.start_line}:{self.start_col}"


# Span used for objects built programmatically rather than parsed.
SYNTHETIC = SourceSpan("<none>", 1, 1, 1, 1)


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: str  # "error" | "warning"
    message: str
    span: SourceSpan = field(default=SYNTHETIC)

    def __post_init__(self) -> None:
        if self.code not in CODES:
            raise ValueError(f"unknown diagnostic code {self.code}")
        if self.severity not in ("error", "warning"):
            raise ValueError(f"bad severity {self.severity}")

    def __str__(self) -> str:
        return f"{self.code} {self.severity} {self.span} {self.message}"


def error(code: str, message: str, span: SourceSpan = SYNTHETIC) -> Diagnostic:
    return Diagnostic(code, "error", message, span)


def warning(code: str, message: str, span: SourceSpan = SYNTHETIC) -> Diagnostic:
    return Diagnostic(code, "warning", message, span)


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.severity == "error" for d in diagnostics)


def to_json_obj(d: Diagnostic) -> dict:
    return {
        "code": d.code,
        "severity": d.severity,
        "message": d.message,
        "file": d.span.file,
        "line": d.span.start_line,
        "col": d.span.start_col,
        "endLine": d.span.end_line,
        "endCol": d.span.end_col,
    }
