import json

import pytest

from celldual.consts import EMPTY
from celldual.errors import InvalidInputError
from celldual.linalg import RATIONALS, entries
from celldual.repalg import (
    direct_sum,
    ideal_J,
    injective,
    k_dual,
    parse_module_spec,
    projective,
    projective_sum,
    quotient,
    random_module,
    simple,
    sub_filter,
)


def ones(cells):
    return dict.fromkeys(cells, 1)


def support_dims(module):
    return {x: n for x, n in module.dims.items() if n}


def test_projective_at_empty(triangle):
    assert support_dims(projective(triangle, EMPTY, RATIONALS)) == ones(triangle.cells)


def test_projective_at_maximal_is_simple(triangle):
    assert support_dims(projective(triangle, "1,2", RATIONALS)) == {"1,2": 1}


def test_projective_on_disc(disc2):
    dims = projective(disc2, "rho1", RATIONALS).dims
    assert dims == {EMPTY: 0, "rho1": 1, "rho2": 0, "tau1": 1, "tau2": 1, "sigma": 1}


def test_injectives(triangle, disc2):
    assert support_dims(injective(triangle, EMPTY, RATIONALS)) == {EMPTY: 1}
    assert support_dims(injective(triangle, "1,2", RATIONALS)) == ones([EMPTY, "1", "2", "1,2"])
    assert support_dims(injective(disc2, "sigma", RATIONALS)) == ones(disc2.cells)


def test_unknown_cell(triangle):
    with pytest.raises(InvalidInputError):
        simple(triangle, "9", RATIONALS)


def test_ideal(triangle):
    j = ideal_J(triangle, RATIONALS)
    assert j.dim(EMPTY) == 0
    assert all(j.dim(x) == 1 for x in triangle.cells if x != EMPTY)


def test_sub_filter_and_quotient(simplex2):
    re = projective(simplex2, EMPTY, RATIONALS)
    assert support_dims(sub_filter(re, ["1,2,3"])) == {"1,2,3": 1}
    rest = quotient(re, simplex2.open_star("1").cells)
    assert set(rest.support) == {EMPTY, "2", "3", "2,3"}
    with pytest.raises(InvalidInputError):
        sub_filter(re, ["1"])


def test_direct_sum(triangle):
    total = direct_sum(projective(triangle, "1", RATIONALS), injective(triangle, "1,2", RATIONALS))
    assert total.dim("1,2") == 2
    assert total.dim(EMPTY) == 1
    total.validate()


def test_direct_sum_needs_modules():
    with pytest.raises(ValueError):
        direct_sum()


def test_k_dual_of_injective(triangle):
    dual = k_dual(injective(triangle, "1,2", RATIONALS))
    assert dual.complex is triangle.opposite()
    assert dual.dims == projective(triangle.opposite(), "1,2", RATIONALS).dims
    dual.validate()


def test_projective_sum_order(triangle):
    p = projective_sum(triangle, RATIONALS, ["1", "2", "1"])
    assert p.dim("1,2") == 3
    assert p.dim("1,3") == 2
    assert entries(p.action["1", "1,2"]) == {0: {0: 1}, 2: {1: 1}}


def test_random_module_is_seeded(disc2):
    a = random_module(disc2, RATIONALS, 11)
    b = random_module(disc2, RATIONALS, 11)
    assert a.dims == b.dims
    assert all(entries(a.action[p]) == entries(b.action[p]) for p in a.action)


def test_random_module_over_prime_field(rp2, f2):
    random_module(rp2, f2, 0).validate()


# ----- #  Module specs  # ----- #


@pytest.mark.parametrize(
    ("spec", "support"),
    [
        ("projective:1,2", {"1,2"}),
        ("injective:1", {EMPTY, "1"}),
        ("simple:2", {"2"}),
        ("module:Re-empty", {EMPTY, "1", "2", "3", "1,2", "1,3", "2,3"}),
        ("ideal-J", {"1", "2", "3", "1,2", "1,3", "2,3"}),
    ],
)
def test_builtin_specs(triangle, spec, support):
    assert set(parse_module_spec(triangle, RATIONALS, spec).support) == support


def test_random_spec(triangle):
    module = parse_module_spec(triangle, RATIONALS, "random:3")
    assert module.dims == random_module(triangle, RATIONALS, 3).dims


def test_json_spec(tmp_path, triangle):
    path = tmp_path / "m.json"
    path.write_text(
        json.dumps({"dims": {"1": 1, "1,2": 1}, "maps": {"1->1,2": [[1]]}}), encoding="utf-8"
    )
    module = parse_module_spec(triangle, RATIONALS, str(path))
    assert module.dims == projective(triangle, "1", RATIONALS).restrict(["1", "1,2"]).dims


@pytest.mark.parametrize("spec", ["random:x", "projective:9", "nonsense", "/no/such/file.json"])
def test_bad_specs(triangle, spec):
    with pytest.raises(InvalidInputError):
        parse_module_spec(triangle, RATIONALS, spec)


def test_malformed_module_data(tmp_path, triangle):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"maps": {}}), encoding="utf-8")
    with pytest.raises(InvalidInputError):
        parse_module_spec(triangle, RATIONALS, str(path))
    path.write_text(json.dumps({"dims": {"1": 1}, "maps": {"1,2": [[1]]}}), encoding="utf-8")
    with pytest.raises(InvalidInputError):
        parse_module_spec(triangle, RATIONALS, str(path))


@pytest.mark.parametrize(
    "data",
    [
        {"dims": {"1": 1.0}},
        {"dims": {"1": True}},
        {"dims": {"1": 1, "1,2": 1}, "maps": {"1->1,2": {"0": [1]}}},
        {"dims": {"1": 1, "1,2": 1}, "maps": {"1->1,2": [{"0": 1}]}},
        {"dims": {"1": 1, "1,2": 1}, "maps": {"1->1,2": [[1.5]]}},
        {"dims": {"1": 1, "1,2": 1}, "maps": {"1->1,2": "1"}},
    ],
)
def test_non_integer_module_data(tmp_path, triangle, data):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    with pytest.raises(InvalidInputError):
        parse_module_spec(triangle, RATIONALS, str(path))


def test_non_utf8_module_file(tmp_path, triangle):
    path = tmp_path / "m.json"
    path.write_bytes(b'{"dims": {"\xff": 1}}')
    with pytest.raises(InvalidInputError):
        parse_module_spec(triangle, RATIONALS, str(path))
