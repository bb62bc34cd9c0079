"""The `celldual` command line.

JSON on stdout is the contract; logs go to stderr. Exit codes: 0 ok, 1 usage,
2 invalid input, 3 a failed cross-check.
"""

from __future__ import annotations

import json
import logging
import sys
from collections.abc import Callable, Iterator, Sequence
from typing import Any

import click

from celldual.cellcomplex import (
    CellComplex,
    Region,
    cellular_homology,
    load_complex,
)
from celldual.classify import classify_report, mobius_hat
from celldual.consts import ExitCode, Flavor, OutputFormat
from celldual.dualize import (
    auslander_report,
    compact_cohomology,
    ext_against_omega,
    local_cohomology,
    open_cohomology,
    sheaf_cohomology,
)
from celldual.errors import InvalidInputError, InvariantViolation, RegularityError
from celldual.invariants import run_suite
from celldual.koszul import koszul_certificate
from celldual.linalg import FieldSpec
from celldual.repalg import parse_module_spec

LOGGER = logging.getLogger(__name__)

_VERBOSITY = {0: logging.WARNING, 1: logging.INFO}


# ----- #  Output  # ----- #


def _flatten(obj: Any, prefix: str = "") -> Iterator[tuple[str, Any]]:
    if isinstance(obj, dict):
        for key in sorted(obj, key=str):
            yield from _flatten(obj[key], f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(obj, list):
        for k, item in enumerate(obj):
            yield from _flatten(item, f"{prefix}.{k}" if prefix else str(k))
    else:
        yield prefix, obj


def emit(data: dict[str, Any], fmt: str) -> None:
    """Write `data` to stdout as key-sorted JSON or as path/value TSV rows."""
    if fmt == OutputFormat.TSV:
        for path, value in _flatten(data):
            click.echo(f"{path}\t{json.dumps(value)}")
    else:
        click.echo(json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False))


def _degrees_json(dims: dict[int, int]) -> dict[str, int]:
    return {str(i): n for i, n in sorted(dims.items())}


# ----- #  Parameters  # ----- #


def _parse_field(_ctx: click.Context, _param: click.Parameter, value: str) -> FieldSpec:
    try:
        return FieldSpec.parse(value)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc


def common_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """Attach the complex argument and the --field / --format options."""
    func = click.option(
        "--format",
        "fmt",
        type=click.Choice([OutputFormat.JSON, OutputFormat.TSV]),
        default=OutputFormat.JSON,
        envvar="CELLDUAL_FORMAT",
        show_default=True,
        help="Output format.",
    )(func)
    func = click.option(
        "--field",
        "fld",
        default="q",
        envvar="CELLDUAL_FIELD",
        callback=_parse_field,
        show_default=True,
        help="q for the rationals or f<p> for GF(p).",
    )(func)
    return click.argument("path", type=click.Path(exists=True, dir_okay=False))(func)


def parse_region(c: CellComplex, spec: str, *, closure: bool = False) -> Region:
    """Resolve `closure:`, `boundary:`, `star:`, `link:`, `deletion:`, `open-star:` or `filter:`.

    Raises:
        click.BadParameter: for an unknown region kind.
        InvalidInputError: for unknown cells or a non-filter.
    """
    kind, _, arg = spec.partition(":")
    if kind == "filter":
        return c.filter_region(_cells(arg), closure=closure)
    makers = {
        "closure": c.closure,
        "boundary": c.boundary,
        "star": c.star,
        "link": c.link,
        "deletion": c.deletion,
        "open-star": c.open_star,
    }
    maker = makers.get(kind)
    if maker is None or not arg:
        raise click.BadParameter(f"Unknown region {spec!r}", param_hint="--region")
    return maker(arg)


def _cells(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


# ----- #  Commands  # ----- #


class _Cli(click.Group):
    """Maps library errors onto exit codes."""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except InvariantViolation as exc:
            click.echo(f"Invariant violation: {exc}", err=True)
            ctx.exit(ExitCode.INVARIANT_FAILURE)
        except InvalidInputError as exc:
            witness = f" [{', '.join(map(str, exc.witness))}]" if exc.witness else ""
            click.echo(f"Invalid input: {exc}{witness}", err=True)
            ctx.exit(ExitCode.INVALID_INPUT)


@click.group(cls=_Cli)
@click.option("-v", "--verbose", count=True, help="-v for info, -vv for debug logs.")
def cli(verbose: int) -> None:
    """Duality computations on regular cell complexes."""
    logging.basicConfig(
        level=_VERBOSITY.get(verbose, logging.DEBUG),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


@cli.command()
@common_options
def validate(path: str, fld: FieldSpec, fmt: str) -> None:
    """Check that a facet or poset file describes a regular cell complex."""
    try:
        c = load_complex(path)
    except RegularityError as exc:
        emit(
            {"valid": False, "kind": exc.kind, "message": str(exc), "cells": list(exc.cells)},
            fmt,
        )
        raise
    semilattice, witness = c.poset.is_meet_semilattice()
    counts: dict[str, int] = {}
    for x in c.cells:
        counts[str(c.dim(x))] = counts.get(str(c.dim(x)), 0) + 1
    emit(
        {
            "valid": True,
            "dimension": c.dimension,
            "cells": len(c.cells),
            "f_vector": counts,
            "simplicial": c.is_simplicial,
            "meet_semilattice": semilattice,
            "semilattice_witness": list(witness) if witness else None,
        },
        fmt,
    )


@cli.command()
@common_options
@click.option("--region", default=None, help="Subcomplex or filter spec, whole complex if absent.")
@click.option("--compact", is_flag=True, help="Compactly supported cohomology of a filter.")
@click.option("--closure", is_flag=True, help="Close a filter: region upward.")
def homology(
    path: str, fld: FieldSpec, fmt: str, region: str | None, compact: bool, closure: bool
) -> None:
    """Betti numbers of a subcomplex, or H_c of an open region."""
    c = load_complex(path)
    chosen = c.whole() if region is None else parse_region(c, region, closure=closure)
    groups = cellular_homology(c, chosen, fld, compact_support=compact)
    key = "compact" if chosen.is_open else "betti"
    emit(
        {
            "field": fld.name,
            key: _degrees_json(dict(groups.betti)),
            "reduced": _degrees_json(dict(groups.reduced)),
            "euler_characteristic": groups.euler_characteristic,
        },
        fmt,
    )


@cli.command()
@common_options
def mobius(path: str, fld: FieldSpec, fmt: str) -> None:
    """μ(σ, 1̂) by recursion and from compactly supported cohomology."""
    emit(mobius_hat(load_complex(path), fld).to_json(), fmt)


@cli.command()
@common_options
@click.option("--module", "module_spec", required=True, help="Builtin name or module JSON file.")
@click.option("--local", "flavor", flag_value=Flavor.LOCAL, help="H^i_∅(M).")
@click.option("--sheaf", "flavor", flag_value=Flavor.SHEAF, default=True, help="H^i(X, M†).")
@click.option("--compact", "flavor", flag_value=Flavor.COMPACT, help="H^i_c on --filter.")
@click.option("--open", "flavor", flag_value=Flavor.OPEN, help="H^i on --filter.")
@click.option("--filter", "filter_cells", default=None, help="Comma-separated cells of an open set.")
@click.option("--closure", is_flag=True, help="Close --filter upward instead of rejecting it.")
def cohomology(
    path: str,
    fld: FieldSpec,
    fmt: str,
    module_spec: str,
    flavor: str,
    filter_cells: str | None,
    closure: bool,
) -> None:
    """Cohomology of a module: local, sheaf, compact support or an open set."""
    c = load_complex(path)
    module = parse_module_spec(c, fld, module_spec)
    if flavor in (Flavor.COMPACT, Flavor.OPEN):
        if filter_cells is None:
            raise click.UsageError(f"--{flavor} needs --filter")
        cells = c.filter_region(_cells(filter_cells), closure=closure).cells
        compute = compact_cohomology if flavor == Flavor.COMPACT else open_cohomology
        result = compute(module, cells)
    elif flavor == Flavor.LOCAL:
        result = local_cohomology(module)
    else:
        result = sheaf_cohomology(module)
    emit({"field": fld.name, "flavor": flavor, "cohomology": _degrees_json(result)}, fmt)


@cli.command()
@common_options
@click.option("--module", "module_spec", required=True, help="Builtin name or module JSON file.")
def dualize(path: str, fld: FieldSpec, fmt: str, module_spec: str) -> None:
    """Ext^i(M, ω•) per cell, with the Auslander report."""
    c = load_complex(path)
    module = parse_module_spec(c, fld, module_spec)
    table = ext_against_omega(module).table
    data: dict[str, Any] = {"field": fld.name, "ext": table.to_json()}
    if not module.is_zero:
        report = auslander_report(module, table)
        data["auslander"] = {
            "j_omega": report.j_omega,
            "first_degree": report.first_degree,
            "holds": report.holds,
        }
    emit(data, fmt)


@cli.command()
@common_options
def classify(path: str, fld: FieldSpec, fmt: str) -> None:
    """Cohen-Macaulay, Buchsbaum and Gorenstein* verdicts."""
    emit(classify_report(load_complex(path), fld).to_json(), fmt)


@cli.command()
@common_options
def koszul(path: str, fld: FieldSpec, fmt: str) -> None:
    """Koszulness certificate and the quadratic dual check."""
    emit(koszul_certificate(load_complex(path), fld).to_json(), fmt)


@cli.command()
@common_options
@click.option("--seed", default=0, show_default=True, help="Seed of the first random module.")
@click.option("--trials", default=5, show_default=True, help="Number of random modules.")
def selftest(path: str, fld: FieldSpec, fmt: str, seed: int, trials: int) -> None:
    """Run every cross-check on seeded random modules."""
    report = run_suite(load_complex(path), fld, seed, trials)
    emit(report.to_json(), fmt)
    if not report.ok:
        raise InvariantViolation(f"{len(report.failures)} check(s) failed")


def main(argv: Sequence[str] | None = None) -> int:
    """Console entry point; returns the process exit code."""
    try:
        code = cli.main(args=argv, prog_name="celldual", standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return ExitCode.USAGE
    except click.ClickException as exc:
        exc.show()
        return ExitCode.USAGE
    except click.Abort:
        click.echo("Aborted!", err=True)
        return ExitCode.USAGE
    return code if isinstance(code, int) else ExitCode.OK


if __name__ == "__main__":
    sys.exit(main())
