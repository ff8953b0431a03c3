from pathlib import Path

import pytest

from hwhopf import Diagram, parse_diagram

DIAGRAMS = Path(__file__).resolve().parent.parent / "demos" / "diagrams"


def load(name: str) -> Diagram:
    return parse_diagram((DIAGRAMS / f"{name}.hwd").read_text())


@pytest.fixture
def d1():
    return Diagram(1, [("in", 0), (0, "out")])


@pytest.fixture
def d_up():
    return Diagram(1, [(0, "out")])


@pytest.fixture
def d_dn():
    return Diagram(1, [("in", 0)])


@pytest.fixture
def chain2():
    return Diagram(2, [("in", 0), (0, 1), (1, "out")])


@pytest.fixture
def inner2():
    return Diagram(2, [(0, 1)])


@pytest.fixture
def fig1():
    return load("fig1")


@pytest.fixture
def diagram_dir():
    return DIAGRAMS
