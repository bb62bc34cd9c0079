"""Shared fixtures: the bundled complexes and the ground fields."""

from pathlib import Path

import pytest

from celldual.cellcomplex import CellComplex, load_complex
from celldual.linalg import RATIONALS, FieldSpec

DATA = Path(__file__).resolve().parents[1] / "data" / "complexes"


def load(name: str) -> CellComplex:
    """Load a bundled complex by file name."""
    return load_complex(DATA / name)


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def triangle() -> CellComplex:
    return load("triangle_boundary.facets")


@pytest.fixture(scope="session")
def simplex2() -> CellComplex:
    return load("simplex2.facets")


@pytest.fixture(scope="session")
def disc2() -> CellComplex:
    return load("disc2.poset.json")


@pytest.fixture(scope="session")
def square() -> CellComplex:
    return load("square_boundary.poset.json")


@pytest.fixture(scope="session")
def wedge() -> CellComplex:
    return load("wedge_triangles.facets")


@pytest.fixture(scope="session")
def rp2() -> CellComplex:
    return load("rp2.facets")


@pytest.fixture(scope="session")
def q() -> FieldSpec:
    return RATIONALS


@pytest.fixture(scope="session")
def f2() -> FieldSpec:
    return FieldSpec(2)


@pytest.fixture(scope="session")
def f3() -> FieldSpec:
    return FieldSpec(3)


@pytest.fixture(params=["triangle", "simplex2", "disc2", "square"])
def small_complex(request: pytest.FixtureRequest) -> CellComplex:
    """Each of the small bundled complexes in turn."""
    return request.getfixturevalue(request.param)


@pytest.fixture(
    params=[
        "triangle",
        "simplex2",
        "disc2",
        "square",
        "wedge",
        pytest.param("rp2", marks=pytest.mark.slow),
    ]
)
def any_complex(request: pytest.FixtureRequest) -> CellComplex:
    """Every bundled complex, the projective plane marked slow."""
    return request.getfixturevalue(request.param)


@pytest.fixture(params=["q", "f2", "f3"])
def any_field(request: pytest.FixtureRequest) -> FieldSpec:
    """The rationals, F2 and F3 in turn."""
    return request.getfixturevalue(request.param)
