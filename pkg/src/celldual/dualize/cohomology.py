"""Local, sheaf, compactly supported and open-set cohomology of modules."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Any

from celldual.consts import EMPTY
from celldual.dualize.functor import dualize, ext_against_omega
from celldual.errors import InvalidInputError, InvariantViolation
from celldual.linalg import (
    VectorComplex,
    complex_cohomology,
    entries,
    from_entries,
    kernel_basis,
    solve,
    vstack,
)
from celldual.repalg.builders import sub_filter
from celldual.repalg.module import ModuleComplex, RModule
from celldual.repalg.resolution import min_injective_resolution
from celldual.table import CohomologyTable

LOGGER = logging.getLogger(__name__)


def gamma_empty(mc: ModuleComplex) -> VectorComplex:
    """Γ_∅ applied degreewise: the part of each M^j_∅ killed by every e_{v,∅}."""
    c, fld = mc.complex, mc.field
    vertices = c.poset.upper_covers(EMPTY)
    kernels = {}
    for j in mc.degrees:
        term = mc.term(j)
        stacked = vstack(fld, term.dim(EMPTY), [term.action[EMPTY, v] for v in vertices])
        kernels[j] = kernel_basis(stacked)
    diffs = {}
    for j, basis in kernels.items():
        after = kernels.get(j + 1)
        if after is not None:
            diffs[j] = solve(after, mc.differential(j)[EMPTY].matmul(basis))
    return VectorComplex(fld, {j: k.shape[1] for j, k in kernels.items()}, diffs)


def local_cohomology(module: RModule) -> dict[int, int]:
    """dim H^i_∅(M) = dim Ext^i_R(k, M), via Γ_∅ of a minimal injective resolution."""
    return complex_cohomology(gamma_empty(min_injective_resolution(module)))


def cellular_cochains(module: RModule, cells: Iterable[str] | None = None) -> VectorComplex:
    """C^i = ⊕_{dim σ = i} M_σ over nonempty cells, d = Σ ε(τ, σ) e_{τ,σ}."""
    c, fld = module.complex, module.field
    chosen = set(c.cells if cells is None else cells) - {EMPTY}
    by_dim: dict[int, list[str]] = {}
    for x in c.cells:
        if x in chosen and module.dim(x):
            by_dim.setdefault(c.dim(x), []).append(x)
    offsets: dict[str, int] = {}
    sizes: dict[int, int] = {}
    for i, cells_i in by_dim.items():
        total = 0
        for x in cells_i:
            offsets[x] = total
            total += module.dim(x)
        sizes[i] = total
    diffs = {}
    for i, sources in by_dim.items():
        if i + 1 not in by_dim:
            continue
        dod: dict[int, dict[int, Any]] = {}
        for x in sources:
            for y in c.poset.upper_covers(x):
                if y not in offsets or c.dim(y) != i + 1:
                    continue
                eps = fld.element(c.incidence(y, x))
                for r, row in entries(module.action[x, y]).items():
                    for q, v in row.items():
                        dod.setdefault(offsets[y] + r, {})[offsets[x] + q] = eps * v
        diffs[i] = from_entries(fld, sizes[i + 1], sizes[i], dod)
    return VectorComplex(fld, sizes, diffs)


def cellular_sheaf_cohomology(module: RModule) -> dict[int, int]:
    """H^i(X, M†) from the cellular cochain model."""
    return complex_cohomology(cellular_cochains(module))


def sheaf_cohomology(module: RModule, *, check: bool = True) -> dict[int, int]:
    """H^i(X, M†) from local cohomology at ∅.

    H^i = H^{i+1}_∅ for i >= 1 and dim H^0 = dim M_∅ - dim H^0_∅ + dim H^1_∅.

    Raises:
        InvariantViolation: if `check` is set and the cellular model disagrees.
    """
    local = local_cohomology(module)
    out = {i - 1: n for i, n in local.items() if i >= 2}
    h0 = module.dim(EMPTY) - local.get(0, 0) + local.get(1, 0)
    if h0:
        out[0] = h0
    out = dict(sorted(out.items()))
    if check:
        cellular = cellular_sheaf_cohomology(module)
        if cellular != out:
            raise InvariantViolation(
                f"Sheaf cohomology {out} disagrees with the cellular model {cellular}"
            )
    return out


def _open_filter(module: RModule, cells: Iterable[str]) -> frozenset[str]:
    members = list(cells)
    if EMPTY in members:
        raise InvalidInputError(f"An open set cannot contain {EMPTY}", [EMPTY])
    return module.complex.filter_region(members).cells


def compact_cohomology(module: RModule, cells: Iterable[str]) -> dict[int, int]:
    """H^i_c(U_Ψ, M†) = H^{i+1}_∅(M_Ψ), for every i >= 0.

    Raises:
        InvalidInputError: if Ψ is not an order filter or contains ∅.
    """
    psi = _open_filter(module, cells)
    local = local_cohomology(sub_filter(module, psi))
    return {i - 1: n for i, n in sorted(local.items()) if i >= 1}


def cellular_compact_cohomology(module: RModule, cells: Iterable[str]) -> dict[int, int]:
    """H^i_c(U_Ψ, M†) from the cellular cochains restricted to Ψ."""
    psi = _open_filter(module, cells)
    return complex_cohomology(cellular_cochains(module, psi))


def open_cohomology(module: RModule, cells: Iterable[str]) -> dict[int, int]:
    """H^i(U_Ψ, M†) as the ∅ row of Ext^i(D(M)_Ψ, ω•).

    Raises:
        InvalidInputError: if Ψ is not an order filter or contains ∅.
    """
    psi = _open_filter(module, cells)
    restricted = dualize(module).restrict(psi)
    table = dualize(restricted).cohomology()
    return {i: n for i, n in table.row(EMPTY).items() if i >= 0}


@dataclass(frozen=True)
class AuslanderReport:
    """Grade and vanishing pattern of Ext^i(M, ω•)."""

    j_omega: int
    first_degree: int
    vanishing: bool

    @property
    def holds(self) -> bool:
        """Both the grade formula and the vanishing pattern hold."""
        return self.vanishing and self.first_degree == self.j_omega


def auslander_report(module: RModule, table: CohomologyTable | None = None) -> AuslanderReport:
    """j_ω(M) = -max dim of the support, checked against Ext^i(M, ω•).

    Raises:
        InvalidInputError: for the zero module.
    """
    if module.is_zero:
        raise InvalidInputError("The Auslander report needs a nonzero module")
    c = module.complex
    if table is None:
        table = ext_against_omega(module).table
    j = -max(c.dim(x) for x in module.support)
    first = min(table.degrees) if table.degrees else 0
    vanishing = all(c.dim(x) <= -i for i, x, _ in table.nonzero())
    LOGGER.info("Auslander: j_omega=%d first=%d vanishing=%s", j, first, vanishing)
    return AuslanderReport(j, first, vanishing)
