"""Constructors for the standard modules and the module-spec syntax."""

from __future__ import annotations

import json
import logging
import random
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path
from typing import Any

from celldual.cellcomplex import CellComplex
from celldual.consts import EMPTY
from celldual.errors import InvalidInputError
from celldual.linalg import (
    FieldSpec,
    Matrix,
    as_int,
    block,
    entries,
    from_entries,
    kernel_basis,
    matrix,
)
from celldual.repalg.module import ModuleComplex, ModuleMap, RModule

LOGGER = logging.getLogger(__name__)


def _indicator(c: CellComplex, fld: FieldSpec, cells: Iterable[str]) -> RModule:
    # One dimension on a convex set of cells, identity actions inside it.
    keep = set(cells)
    one = matrix(fld, [[1]])
    action = {
        (lo, up): one for lo, up in c.poset.covers if lo in keep and up in keep
    }
    return RModule(c, fld, dict.fromkeys(keep, 1), action, check=False)


def projective(c: CellComplex, cell: str, fld: FieldSpec) -> RModule:
    """Re_σ, one dimension at every τ >= σ."""
    c.require([cell])
    return _indicator(c, fld, c.poset.up(cell))


def injective(c: CellComplex, cell: str, fld: FieldSpec) -> RModule:
    """The injective hull E(σ), one dimension at every τ <= σ."""
    c.require([cell])
    return _indicator(c, fld, c.poset.down(cell))


def simple(c: CellComplex, cell: str, fld: FieldSpec) -> RModule:
    """The simple module at σ."""
    c.require([cell])
    return _indicator(c, fld, [cell])


def ideal_J(c: CellComplex, fld: FieldSpec) -> RModule:
    """The left ideal spanned by e_{τ,∅} for τ != ∅."""
    return _indicator(c, fld, [x for x in c.cells if x != EMPTY])


def sub_filter(module: RModule, cells: Iterable[str]) -> RModule:
    """M_Ψ, the submodule supported on an order filter Ψ.

    Raises:
        InvalidInputError: if `cells` is not an order filter.
    """
    region = module.complex.filter_region(cells)
    return module.restrict(region.cells)


def quotient(module: RModule, cells: Iterable[str]) -> RModule:
    """M / M_Ψ for an order filter Ψ.

    Raises:
        InvalidInputError: if `cells` is not an order filter.
    """
    region = module.complex.filter_region(cells)
    return module.restrict(x for x in module.complex.cells if x not in region.cells)


def direct_sum(*modules: RModule) -> RModule:
    """The direct sum, with block-diagonal actions.

    Raises:
        ValueError: for an empty argument list.
    """
    if not modules:
        raise ValueError("direct_sum needs at least one module")
    first = modules[0]
    c, fld = first.complex, first.field
    dims = {x: sum(m.dim(x) for m in modules) for x in c.cells}
    action = {}
    for lo, up in c.poset.covers:
        action[lo, up] = block(
            fld,
            [m.dim(up) for m in modules],
            [m.dim(lo) for m in modules],
            {(k, k): m.action[lo, up] for k, m in enumerate(modules)},
        )
    return RModule(c, fld, dims, action, check=False)


def k_dual(module: RModule) -> RModule:
    """Hom_k(M, k) as a module over the opposite complex, with transposed actions."""
    op = module.complex.opposite()
    action = {(up, lo): m.transpose() for (lo, up), m in module.action.items()}
    return RModule(op, module.field, module.dims, action, check=False)


def k_dual_map(
    f: ModuleMap, source: RModule | None = None, target: RModule | None = None
) -> ModuleMap:
    """The transpose N^∨ -> M^∨ of f: M -> N; pass the dual modules to reuse them."""
    return ModuleMap(
        source if source is not None else k_dual(f.target),
        target if target is not None else k_dual(f.source),
        {x: m.transpose() for x, m in f.components.items()},
        check=False,
    )


def k_dual_complex(mc: ModuleComplex) -> ModuleComplex:
    """Hom_k(-, k) of a complex: degree t goes to -t, differentials transpose."""
    terms = {-i: k_dual(mc.term(i)) for i in mc.degrees}
    diffs = {
        -i - 1: k_dual_map(mc.differential(i), terms[-i - 1], terms[-i])
        for i in mc.degrees
        if i + 1 in mc.degrees
    }
    return ModuleComplex(
        mc.complex.opposite(), mc.field, terms, diffs, check=False
    )


def projective_sum(c: CellComplex, fld: FieldSpec, generators: Sequence[str]) -> RModule:
    """⊕_k Re_{g_k}; at τ the basis is the generators below τ, in list order."""
    poset = c.poset
    basis = {x: [k for k, g in enumerate(generators) if poset.leq(g, x)] for x in c.cells}
    action = {}
    one = fld.domain.one
    for lo, up in poset.covers:
        where = {k: i for i, k in enumerate(basis[up])}
        dod = {where[k]: {j: one} for j, k in enumerate(basis[lo])}
        action[lo, up] = from_entries(fld, len(basis[up]), len(basis[lo]), dod)
    dims = {x: len(b) for x, b in basis.items()}
    return RModule(c, fld, dims, action, check=False)


def random_module(  # noqa: C901
    c: CellComplex, fld: FieldSpec, seed: int, max_dim: int = 3
) -> RModule:
    """A seeded random module with dimensions in 0..max_dim.

    Cells are visited in a linear extension. At each cell the incoming cover
    matrices are drawn from the solution space of the path-independence
    equations against everything already built below it.
    """
    rng = random.Random(seed)
    poset = c.poset
    dom = fld.domain
    dims = {x: rng.randint(0, max_dim) for x in c.cells}
    action: dict[tuple[str, str], Matrix] = {}
    paths: dict[tuple[str, str], dict[int, dict[int, Any]]] = {}

    for y in poset.linear_extension:
        n = dims[y]
        lowers = [z for z in poset.lower_covers(y) if dims[z]]
        covers = poset.lower_covers(y)
        offsets = {}
        total = 0
        for z in lowers:
            offsets[z] = total
            total += n * dims[z]

        rows: dict[int, dict[int, Any]] = {}
        count = 0
        for x in poset.down(y):
            if x == y or dims[x] == 0:
                continue
            through = [z for z in covers if poset.leq(x, z)]
            if len(through) < 2:
                continue
            base = through[0]
            for z in through[1:]:
                # A_base P(x->base) - A_z P(x->z) = 0, entry (r, s).
                for r in range(n):
                    for s in range(dims[x]):
                        eq: dict[int, Any] = {}
                        for sign, w in ((dom.one, base), (-dom.one, z)):
                            p = paths[x, w]
                            for q in range(dims[w]):
                                v = p.get(q, {}).get(s)
                                if v:
                                    k = offsets[w] + r * dims[w] + q
                                    eq[k] = eq.get(k, dom.zero) + sign * v
                        eq = {k: v for k, v in eq.items() if v}
                        if eq:
                            rows[count] = eq
                            count += 1

        solution: dict[int, Any] = {}
        if total:
            basis = kernel_basis(from_entries(fld, count, total, rows))
            coeffs = [fld.random_element(rng) for _ in range(basis.shape[1])]
            kernel = entries(basis)
            for k, row in kernel.items():
                v = sum((coeffs[j] * a for j, a in row.items()), dom.zero)
                if v:
                    solution[k] = v

        for z in covers:
            dod: dict[int, dict[int, Any]] = {}
            if z in offsets:
                m = dims[z]
                for r in range(n):
                    for q in range(m):
                        v = solution.get(offsets[z] + r * m + q)
                        if v:
                            dod.setdefault(r, {})[q] = v
            action[z, y] = from_entries(fld, n, dims[z], dod)

        paths[y, y] = {i: {i: dom.one} for i in range(n)}
        for x in poset.down(y):
            if x == y:
                continue
            step = next(z for z in poset.lower_covers(y) if poset.leq(x, z))
            composed = action[step, y].matmul(
                from_entries(fld, dims[step], dims[x], paths[x, step])
            )
            paths[x, y] = entries(composed)

    LOGGER.debug("Random module seed=%d dims=%s", seed, dims)
    return RModule(c, fld, dims, action, check=True)


# ----- #  Module specs  # ----- #


def module_from_data(c: CellComplex, fld: FieldSpec, data: Mapping[str, Any]) -> RModule:
    """Build a module from `{"dims": {cell: n}, "maps": {"lower->upper": rows}}`.

    Raises:
        InvalidInputError: on malformed data, unknown cells or path dependence.
    """
    try:
        dims = {str(k): as_int(v) for k, v in data["dims"].items()}
        raw_maps = dict(data.get("maps", {}))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InvalidInputError(f"Malformed module spec: {exc}") from exc
    c.require(dims)
    action = {}
    for key, rows in raw_maps.items():
        lower, sep, upper = str(key).partition("->")
        if not sep:
            raise InvalidInputError(f"Map key {key!r} must read lower->upper", [key])
        lower, upper = lower.strip(), upper.strip()
        c.require([lower, upper])
        try:
            action[lower, upper] = matrix(fld, rows, dims.get(lower, 0))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"Bad matrix for {key}: {exc}", [lower, upper]) from exc
    return RModule(c, fld, dims, action, check=True)


def parse_module_spec(c: CellComplex, fld: FieldSpec, spec: str) -> RModule:
    """Resolve a builtin module name or read a module JSON file.

    Builtins: `projective:<cell>`, `injective:<cell>`, `simple:<cell>`,
    `ideal-J`, `module:Re-empty` and `random:<seed>`.

    Raises:
        InvalidInputError: for an unknown cell, bad seed or unreadable file.
    """
    kind, _, arg = spec.partition(":")
    builders = {"projective": projective, "injective": injective, "simple": simple}
    if kind in builders and arg:
        return builders[kind](c, arg, fld)
    if spec == "ideal-J":
        return ideal_J(c, fld)
    if spec == "module:Re-empty":
        return projective(c, EMPTY, fld)
    if kind == "random":
        try:
            seed = int(arg)
        except ValueError:
            raise InvalidInputError(f"Bad random seed {arg!r}") from None
        return random_module(c, fld, seed)
    try:
        data = json.loads(Path(spec).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"Unknown module spec {spec!r}: {exc}") from exc
    return module_from_data(c, fld, data)
