"""End-to-end runs of the `celldual` command on the bundled complexes."""

import json

import pytest
from click.testing import CliRunner

from celldual.cli import cli, main
from celldual.consts import ExitCode


@pytest.fixture
def run(data_dir):
    runner = CliRunner()

    def invoke(*args: str, complex_name: str | None = None):
        argv = list(args)
        if complex_name is not None:
            argv.insert(1, str(data_dir / complex_name))
        return runner.invoke(cli, argv)

    return invoke


def payload(result):
    assert result.exit_code == ExitCode.OK, result.output
    return json.loads(result.stdout)


def test_validate(run):
    data = payload(run("validate", complex_name="triangle_boundary.facets"))
    assert data["valid"] is True
    assert data["dimension"] == 1
    assert data["f_vector"] == {"-1": 1, "0": 3, "1": 3}
    assert data["simplicial"] is True
    assert data["meet_semilattice"] is True


def test_validate_reports_witness(run):
    data = payload(run("validate", complex_name="disc2.poset.json"))
    assert data["meet_semilattice"] is False
    assert data["semilattice_witness"] == ["rho1", "rho2"]


def test_validate_rejects_irregular_poset(tmp_path):
    bad = tmp_path / "bad.poset.json"
    bad.write_text(
        json.dumps({"cells": [{"id": "a", "dim": 0}, {"id": "e", "dim": 1}], "covers": [["a", "e"]]}),
        encoding="utf-8",
    )
    result = CliRunner().invoke(cli, ["validate", str(bad)])
    assert result.exit_code == ExitCode.INVALID_INPUT
    data = json.loads(result.stdout)
    assert data["valid"] is False
    assert data["kind"] == "diamond"
    assert "a" in data["cells"]


def test_homology(run):
    data = payload(run("homology", complex_name="triangle_boundary.facets"))
    assert data["betti"] == {"0": 1, "1": 1}
    assert data["reduced"] == {"1": 1}
    assert data["euler_characteristic"] == 0


def test_homology_of_open_star(run):
    data = payload(
        run("homology", "--region", "open-star:1", "--compact", complex_name="simplex2.facets")
    )
    assert "compact" in data
    assert "betti" not in data


def test_mobius(run):
    data = payload(run("mobius", complex_name="triangle_boundary.facets"))
    assert data["agree"] is True
    assert data["mobius"]["@empty"] == -1
    assert data["mobius"]["1,2"] == -1


def test_sheaf_cohomology_mod_two(run):
    data = payload(
        run("cohomology", "--module", "module:Re-empty", "--field", "f2", complex_name="rp2.facets")
    )
    assert data == {"field": "f2", "flavor": "sheaf", "cohomology": {"0": 1, "1": 1, "2": 1}}


def test_local_cohomology(run):
    data = payload(
        run(
            "cohomology",
            "--module",
            "module:Re-empty",
            "--local",
            complex_name="triangle_boundary.facets",
        )
    )
    assert data["cohomology"] == {"2": 1}


def test_compact_cohomology(run):
    data = payload(
        run(
            "cohomology",
            "--module",
            "module:Re-empty",
            "--compact",
            "--filter",
            "sigma",
            complex_name="disc2.poset.json",
        )
    )
    assert data["cohomology"] == {"2": 1}


def test_dualize(run):
    data = payload(
        run("dualize", "--module", "module:Re-empty", complex_name="triangle_boundary.facets")
    )
    assert data["auslander"] == {"j_omega": -1, "first_degree": -1, "holds": True}
    assert data["ext"]


def test_classify(run):
    data = payload(run("classify", complex_name="triangle_boundary.facets"))
    assert data["gorenstein_star"] is True
    assert data["cm"] is True


def test_koszul(run):
    data = payload(run("koszul", complex_name="simplex2.facets"))
    assert data["koszul"] is True
    assert data["relations"]["diamonds"] == 6


def test_selftest(run):
    data = payload(run("selftest", "--trials", "1", complex_name="triangle_boundary.facets"))
    assert data["ok"] is True
    assert data["trials"] == 1


def test_tsv_output(run):
    result = run("homology", "--format", "tsv", complex_name="triangle_boundary.facets")
    assert result.exit_code == ExitCode.OK
    rows = dict(line.split("\t") for line in result.stdout.splitlines())
    assert rows["betti.0"] == "1"
    assert rows["field"] == '"q"'


def test_field_from_environment(data_dir):
    result = CliRunner().invoke(
        cli,
        ["cohomology", str(data_dir / "rp2.facets"), "--module", "module:Re-empty"],
        env={"CELLDUAL_FIELD": "f2"},
    )
    assert json.loads(result.stdout)["field"] == "f2"


def test_unknown_cell_is_invalid_input(run):
    result = run(
        "cohomology", "--module", "projective:9", complex_name="triangle_boundary.facets"
    )
    assert result.exit_code == ExitCode.INVALID_INPUT


@pytest.mark.parametrize(
    "command",
    [
        ("classify",),
        ("cohomology", "--module", "random:5", "--sheaf"),
        ("selftest", "--trials", "1", "--seed", "2"),
    ],
)
def test_output_is_repeatable(run, command):
    first = run(*command, complex_name="simplex2.facets")
    second = run(*command, complex_name="simplex2.facets")
    assert first.exit_code == ExitCode.OK, first.output
    assert first.stdout_bytes == second.stdout_bytes


def test_non_filter_reports_witness(run):
    result = run(
        "cohomology",
        "--module",
        "module:Re-empty",
        "--compact",
        "--filter",
        "1",
        complex_name="triangle_boundary.facets",
    )
    assert result.exit_code == ExitCode.INVALID_INPUT
    assert "Not an order filter" in result.stderr
    assert "[1, 1,2]" in result.stderr


def test_filter_with_empty_cell(run):
    result = run(
        "cohomology",
        "--module",
        "module:Re-empty",
        "--open",
        "--closure",
        "--filter",
        "@empty",
        complex_name="triangle_boundary.facets",
    )
    assert result.exit_code == ExitCode.INVALID_INPUT
    assert "@empty" in result.stderr


def test_closure_turns_a_vertex_into_its_open_star(run):
    data = payload(
        run(
            "cohomology",
            "--module",
            "module:Re-empty",
            "--open",
            "--closure",
            "--filter",
            "1",
            complex_name="triangle_boundary.facets",
        )
    )
    assert data["flavor"] == "open"
    assert data["cohomology"] == {"0": 1}


# ----- #  Usage errors through main  # ----- #


def test_missing_filter_is_a_usage_error(data_dir):
    argv = ["cohomology", str(data_dir / "disc2.poset.json"), "--module", "ideal-J", "--open"]
    assert main(argv) == ExitCode.USAGE


def test_bad_field_is_a_usage_error(data_dir):
    argv = ["classify", str(data_dir / "simplex2.facets"), "--field", "f4"]
    assert main(argv) == ExitCode.USAGE


def test_main_returns_ok(data_dir):
    assert main(["mobius", str(data_dir / "simplex2.facets")]) == ExitCode.OK


@pytest.mark.parametrize(
    ("name", "body"),
    [("bad.facets", b"1 2\n2 \xff\n"), ("bad.poset.json", b'{"cells": [{"id": "\xff", "dim": 0}]}')],
)
def test_non_utf8_complex_file(tmp_path, name, body):
    path = tmp_path / name
    path.write_bytes(body)
    assert main(["validate", str(path)]) == ExitCode.INVALID_INPUT


def test_non_utf8_module_file(tmp_path, data_dir):
    module = tmp_path / "m.json"
    module.write_bytes(b'{"dims": {"\xff": 1}}')
    argv = ["cohomology", str(data_dir / "simplex2.facets"), "--module", str(module)]
    assert main(argv) == ExitCode.INVALID_INPUT
