import json
import logging

import pytest

from celldual.cellcomplex import (
    CellComplex,
    cellular_homology,
    load_complex,
    read_facets,
    relative_cohomology,
    sorted_cells,
    vertex_key,
)
from celldual.consts import EMPTY
from celldual.errors import InvalidInputError, RegularityError
from celldual.linalg import RATIONALS, FieldSpec

GF2 = FieldSpec(2)


def poset_data(cells, covers, epsilon=None):
    data = {"cells": [{"id": x, "dim": d} for x, d in cells], "covers": covers}
    if epsilon is not None:
        data["epsilon"] = [{"upper": u, "lower": lo, "sign": s} for u, lo, s in epsilon]
    return data


# ----- #  Construction  # ----- #


def test_triangle(triangle):
    assert triangle.cells == (EMPTY, "1", "2", "3", "1,2", "1,3", "2,3")
    assert triangle.dimension == 1
    assert triangle.is_simplicial
    assert triangle.dim(EMPTY) == -1
    assert triangle.cells_of_dim(0) == ("1", "2", "3")


def test_sorted_vertex_signs(triangle):
    assert triangle.incidence("1,2", "2") == 1
    assert triangle.incidence("1,2", "1") == -1
    assert triangle.incidence("1", EMPTY) == 1
    assert triangle.incidence("1,2", "3") == 0


def test_numeric_vertex_order():
    c = CellComplex.from_facets([["10", "9"]])
    assert c.cells == (EMPTY, "9", "10", "9,10")


def test_vertex_key_ties_and_non_ascii_digits():
    names = ["1", "²", "01", "-2", "a"]
    assert sorted(names, key=vertex_key) == ["-2", "01", "1", "a", "²"]


def test_superscript_vertex_name():
    c = CellComplex.from_facets([["²", "a"]])
    assert c.cells_of_dim(0) == ("a", "²")
    assert "a,²" in c.cells


def test_zero_padded_vertex_names_stay_distinct():
    c = CellComplex.from_facets([["1", "01"]])
    assert c.cells_of_dim(0) == ("01", "1")
    assert c.cells_of_dim(1) == ("01,1",)


def test_redundant_facet_warning(caplog):
    with caplog.at_level(logging.WARNING):
        c = CellComplex.from_facets([["1", "2"], ["1"]])
    assert "redundant" in caplog.text
    assert c.dimension == 1


def test_empty_facet_list():
    with pytest.raises(InvalidInputError):
        CellComplex.from_facets([])


def test_reserved_vertex_name():
    with pytest.raises(InvalidInputError):
        CellComplex.from_facets([[EMPTY, "1"]])


def test_diamond_counts(triangle, simplex2):
    assert len(triangle.diamonds()) == 3
    assert len(simplex2.diamonds()) == 6
    assert all(len(mids) == 2 for _, _, mids in simplex2.diamonds())


def test_disc_with_given_signs(disc2):
    assert disc2.dimension == 2
    assert not disc2.is_simplicial
    assert disc2.incidence("sigma", "tau2") == -1
    assert disc2.incidence("tau1", "rho1") == -1


def test_signs_are_solved_when_absent(square):
    for v in square.cells_of_dim(0):
        assert square.incidence(v, EMPTY) == 1
    for edge in square.cells_of_dim(1):
        lows = square.poset.lower_covers(edge)
        assert sum(square.incidence(edge, v) for v in lows) == 0


def test_missing_vertex_breaks_diamond():
    data = poset_data([("a", 0), ("b", 0), ("e", 1)], [["a", "e"]])
    with pytest.raises(RegularityError) as info:
        CellComplex.from_poset_data(data)
    assert info.value.kind == "diamond"


def test_grading_error():
    data = poset_data([("a", 0), ("t", 2)], [["a", "t"]])
    with pytest.raises(RegularityError) as info:
        CellComplex.from_poset_data(data)
    assert info.value.kind == "grading"
    assert set(info.value.cells) == {"a", "t"}


def test_boundary_must_be_a_sphere():
    cells = [("a", 0), ("b", 0), ("c", 0), ("d", 0)]
    cells += [("e1", 1), ("e2", 1), ("e3", 1), ("e4", 1), ("s", 2)]
    covers = [
        ["a", "e1"], ["b", "e1"], ["a", "e2"], ["b", "e2"],
        ["c", "e3"], ["d", "e3"], ["c", "e4"], ["d", "e4"],
        ["e1", "s"], ["e2", "s"], ["e3", "s"], ["e4", "s"],
    ]  # fmt: skip
    with pytest.raises(RegularityError) as info:
        CellComplex.from_poset_data(poset_data(cells, covers))
    assert info.value.kind == "sphere"
    assert info.value.cells == ("s",)


def test_bad_epsilon():
    data = poset_data(
        [("a", 0), ("b", 0), ("e", 1)],
        [["a", "e"], ["b", "e"]],
        [("e", "a", 1), ("e", "b", 1)],
    )
    with pytest.raises(RegularityError) as info:
        CellComplex.from_poset_data(data)
    assert info.value.kind == "epsilon"


def test_listed_empty_cell_rejected():
    with pytest.raises(InvalidInputError):
        CellComplex.from_poset_data(poset_data([(EMPTY, -1), ("a", 0)], []))


def test_malformed_poset_data():
    with pytest.raises(InvalidInputError):
        CellComplex.from_poset_data({"cells": [{"name": "a"}]})


@pytest.mark.parametrize(("dim", "sign"), [(1.7, 1), (True, 1), ("1", 1), (1, 1.0)])
def test_non_integer_dims_and_signs(dim, sign):
    data = poset_data(
        [("a", 0), ("b", 0), ("e", dim)],
        [["a", "e"], ["b", "e"]],
        [("e", "a", -1), ("e", "b", sign)],
    )
    with pytest.raises(InvalidInputError):
        CellComplex.from_poset_data(data)


def test_poset_file_round_trip(tmp_path, disc2):
    path = tmp_path / "disc.json"
    cells = [(x, disc2.dim(x)) for x in disc2.cells if x != EMPTY]
    covers = [[lo, up] for lo, up in disc2.poset.covers if lo != EMPTY]
    path.write_text(json.dumps(poset_data(cells, covers)), encoding="utf-8")
    again = load_complex(path)
    assert set(again.cells) == set(disc2.cells)
    assert again.poset.covers == disc2.poset.covers


def test_read_facets(tmp_path):
    path = tmp_path / "x.facets"
    path.write_text("# comment\n1 2 3\n\n2 4  # trailing\n", encoding="utf-8")
    assert read_facets(path) == [["1", "2", "3"], ["2", "4"]]


def test_unreadable_file(tmp_path):
    with pytest.raises(InvalidInputError):
        load_complex(tmp_path / "missing.facets")


@pytest.mark.parametrize(
    ("name", "body"),
    [("x.facets", b"1 2\n2 \xff\n"), ("x.poset.json", b'{"cells": [{"id": "\xff", "dim": 0}]}')],
)
def test_non_utf8_file(tmp_path, name, body):
    path = tmp_path / name
    path.write_bytes(body)
    with pytest.raises(InvalidInputError):
        load_complex(path)


def test_opposite(triangle):
    op = triangle.opposite()
    assert op.is_opposite
    assert op.dim("1,2") == -1
    assert op.dim(EMPTY) == 1
    assert op.incidence("2", "1,2") == 1
    assert op.opposite() is triangle
    assert triangle.opposite() is op


def test_require(triangle):
    with pytest.raises(InvalidInputError) as info:
        triangle.require(["1", "9"])
    assert info.value.witness == ("9",)


# ----- #  Regions  # ----- #


def test_closed_regions(triangle):
    assert triangle.closure("1,2").cells == {EMPTY, "1", "2", "1,2"}
    assert triangle.boundary("1,2").cells == {EMPTY, "1", "2"}
    assert triangle.deletion("1").cells == {EMPTY, "2", "3", "2,3"}
    assert not triangle.closure("1,2").is_open


def test_open_star(triangle):
    region = triangle.open_star("1")
    assert region.is_open
    assert region.cells == {"1", "1,2", "1,3"}


def test_star_and_link(triangle):
    assert triangle.star("1").cells == {EMPTY, "1", "2", "3", "1,2", "1,3"}
    assert triangle.link("1").cells == {EMPTY, "2", "3"}
    assert triangle.join_cell("1", "2") == "1,2"


def test_link_needs_simplicial(disc2):
    with pytest.raises(InvalidInputError):
        disc2.link("rho1")


def test_filter_region(triangle):
    with pytest.raises(InvalidInputError) as info:
        triangle.filter_region(["1"])
    assert info.value.witness == ("1", "1,2")
    assert triangle.filter_region(["1"], closure=True).cells == {"1", "1,2", "1,3"}


def test_sorted_cells(triangle):
    assert sorted_cells(triangle, ["2,3", "1", EMPTY]) == [EMPTY, "1", "2,3"]


# ----- #  Homology  # ----- #


def test_circle_homology(triangle):
    groups = cellular_homology(triangle, triangle.whole(), RATIONALS)
    assert groups.betti == {0: 1, 1: 1}
    assert groups.reduced == {1: 1}
    assert groups.euler_characteristic == 0
    assert groups.reduced_euler_characteristic == -1


def test_boundary_of_triangle_is_a_circle(simplex2):
    assert cellular_homology(simplex2, simplex2.boundary("1,2,3"), RATIONALS).reduced == {1: 1}


def test_projective_plane_depends_on_field(rp2):
    assert cellular_homology(rp2, rp2.whole(), RATIONALS).betti == {0: 1}
    assert cellular_homology(rp2, rp2.whole(), GF2).betti == {0: 1, 1: 1, 2: 1}


def test_wedge_homology(wedge):
    assert cellular_homology(wedge, wedge.whole(), RATIONALS).betti == {0: 1, 1: 2}


def test_compact_support_of_half_disc(simplex2):
    star = simplex2.open_star("1")
    assert cellular_homology(simplex2, star, RATIONALS, compact_support=True).betti == {}


def test_open_region_needs_compact_support(simplex2):
    with pytest.raises(InvalidInputError):
        cellular_homology(simplex2, simplex2.open_star("1"), RATIONALS)


def test_relative_to_deletion(triangle):
    assert relative_cohomology(triangle, triangle.deletion("1"), RATIONALS) == {1: 1}
