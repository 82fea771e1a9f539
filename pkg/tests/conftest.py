from __future__ import annotations

import sys
from pathlib import Path

import pytest

from sccadl.checks import check_model
from sccadl.model import ArchitectureModel, resolve
from sccadl.parser import parse

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"
sys.path.insert(0, str(Path(__file__).parent))

VALID_FIXTURES = sorted(p.name for p in FIXTURES.glob("*.scc"))
BROKEN_FIXTURES = sorted(p.name for p in (FIXTURES / "broken").glob("*.scc"))


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def parse_fixture(name: str):
    model, diags = parse(fixture_text(name), name)
    assert not diags, f"{name}: {diags}"
    return model


def checked_fixture(name: str) -> ArchitectureModel:
    model, diags = resolve(parse_fixture(name))
    assert model is not None, f"{name}: {diags}"
    report = check_model(model)
    assert report.ok, f"{name}: {report.diagnostics}"
    return model


@pytest.fixture
def fire_model() -> ArchitectureModel:
    return checked_fixture("fire.scc")
