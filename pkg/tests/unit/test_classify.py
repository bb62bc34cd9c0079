import pytest

from celldual.classify import (
    classify_report,
    is_buchsbaum,
    is_cohen_macaulay,
    is_cohen_macaulay_relative,
    is_gorenstein_star,
    link_oracle,
    mobius_cells,
    mobius_hat,
    omega_concentration,
    omega_top_support,
)
from celldual.consts import EMPTY
from celldual.dualize import ext_against_omega
from celldual.linalg import RATIONALS
from celldual.repalg import projective


def test_circle(triangle):
    assert is_cohen_macaulay(triangle, RATIONALS) == (True, [])
    assert is_buchsbaum(triangle, RATIONALS)[0]
    verdict, certificate = is_gorenstein_star(triangle, RATIONALS)
    assert verdict
    assert certificate == {
        "concentrated": True,
        "dims_all_one": True,
        "generated_at_empty": True,
        "link_oracle": True,
    }


def test_square_is_a_sphere(square):
    verdict, certificate = is_gorenstein_star(square, RATIONALS)
    assert verdict
    assert "link_oracle" not in certificate


def test_two_simplex(simplex2):
    assert is_cohen_macaulay(simplex2, RATIONALS)[0]
    assert not is_gorenstein_star(simplex2, RATIONALS)[0]
    assert not link_oracle(simplex2, RATIONALS)


def test_disc_complex(disc2):
    assert is_cohen_macaulay(disc2, RATIONALS)[0]
    assert not omega_concentration(disc2, RATIONALS)[0]


def test_wedge_is_buchsbaum(wedge):
    assert is_cohen_macaulay(wedge, RATIONALS)[0]
    assert is_buchsbaum(wedge, RATIONALS)[0]
    assert not is_gorenstein_star(wedge, RATIONALS)[0]


@pytest.mark.slow
def test_projective_plane(rp2, f2):
    assert is_cohen_macaulay(rp2, RATIONALS)[0]
    assert not is_gorenstein_star(rp2, RATIONALS)[0]
    cm, witnesses = is_cohen_macaulay(rp2, f2)
    assert not cm
    assert witnesses
    assert all(x == EMPTY for _, x, _ in witnesses)
    assert is_buchsbaum(rp2, f2)[0]


@pytest.mark.parametrize("name", ["triangle", "simplex2", "disc2", "square", "wedge"])
def test_deletion_criterion_agrees(request, name):
    c = request.getfixturevalue(name)
    assert is_cohen_macaulay_relative(c, RATIONALS)[0] == is_cohen_macaulay(c, RATIONALS)[0]


# ----- #  Möbius  # ----- #


def test_mobius_on_circle(triangle):
    table = mobius_hat(triangle)
    assert table.agree
    assert table.recursive == {
        EMPTY: -1, "1": 1, "2": 1, "3": 1, "1,2": -1, "1,3": -1, "2,3": -1,
    }  # fmt: skip


def test_mobius_on_disc(disc2):
    table = mobius_hat(disc2)
    assert table.agree
    assert table.recursive == {
        EMPTY: 0, "rho1": 0, "rho2": 0, "tau1": 0, "tau2": 0, "sigma": -1,
    }  # fmt: skip


def test_mobius_on_two_simplex(simplex2):
    assert mobius_hat(simplex2).recursive[EMPTY] == 0


def test_mobius_cells(disc2):
    table = mobius_cells(disc2)
    assert table[EMPTY, "sigma"] == -1
    assert table["rho1", "tau1"] == -1
    assert table["sigma", "sigma"] == 1


def test_report_json(triangle):
    data = classify_report(triangle, RATIONALS).to_json()
    assert data["gorenstein_star"] is True
    assert data["cm"] is True
    assert data["cm_relative"] is True
    assert data["omega"] == {"module_level": True, "sheaf_level": True}
    assert data["field"] == "q"
    assert data["witnesses"] == []
    assert data["mobius"]["@empty"] == -1


@pytest.mark.slow
def test_mobius_on_projective_plane(rp2):
    table = mobius_hat(rp2)
    assert table.agree
    for x, mu in table.recursive.items():
        if x != EMPTY:
            assert mu == (-1) ** (2 - rp2.dim(x) + 1)


# ----- #  Top ω-cohomology  # ----- #


def test_top_support_on_sphere(triangle):
    support = omega_top_support(triangle, RATIONALS)
    expected = {
        (t, r) for t in triangle.cells for r in triangle.cells
        if triangle.join_cell(t, r) is not None
    }  # fmt: skip
    assert set(support) == expected
    assert set(support.values()) == {1}


def test_top_support_on_simplex(simplex2):
    support = omega_top_support(simplex2, RATIONALS)
    assert set(support.values()) == {1}
    assert all(simplex2.join_cell(t, r) == "1,2,3" for t, r in support)


@pytest.mark.parametrize("cell", [EMPTY, "1", "1,2"])
def test_dual_of_projective_on_sphere(triangle, cell):
    table = ext_against_omega(projective(triangle, cell, RATIONALS)).table
    assert table.degrees == [-1]
    assert table.column(-1) == dict.fromkeys(triangle.star(cell).cells, 1)
