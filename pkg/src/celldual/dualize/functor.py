"""The duality functor D on modules and bounded complexes."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

from celldual.linalg import entries, from_entries
from celldual.repalg.module import ModuleComplex, ModuleMap, RModule
from celldual.table import CohomologyTable

LOGGER = logging.getLogger(__name__)

Summand = tuple[str, int]  # (σ, j): the piece E(σ) ⊗ (M^j_σ)^∨


def dualize(mc: ModuleComplex | RModule) -> ModuleComplex:  # noqa: C901
    """D(M•) with D^t = ⊕_{-dim σ - j = t} E(σ) ⊗ (M^j_σ)^∨.

    A single module is read as a complex concentrated in degree 0. The
    differential sums ε(σ, τ) times the transposed action for τ covered by σ
    and (-1)^t times the transposed differential of M•.
    """
    if isinstance(mc, RModule):
        mc = ModuleComplex.concentrated(mc)
    c, fld = mc.complex, mc.field
    poset = c.poset
    dom = fld.domain

    summands: dict[int, list[Summand]] = {}
    for x in c.cells:
        for j in mc.degrees:
            if mc.term(j).dim(x):
                summands.setdefault(-c.dim(x) - j, []).append((x, j))

    layouts: dict[tuple[int, str], dict[Summand, int]] = {}
    sizes: dict[tuple[int, str], int] = {}
    for t, pieces in summands.items():
        for rho in c.cells:
            offset = 0
            layout = {}
            for sigma, j in pieces:
                if poset.leq(rho, sigma):
                    layout[sigma, j] = offset
                    offset += mc.term(j).dim(sigma)
            layouts[t, rho] = layout
            sizes[t, rho] = offset

    terms: dict[int, RModule] = {}
    for t, pieces in summands.items():
        action = {}
        for lo, up in poset.covers:
            source, target = layouts[t, lo], layouts[t, up]
            dod: dict[int, dict[int, Any]] = {}
            for piece, start in source.items():
                if piece in target:
                    for a in range(mc.term(piece[1]).dim(piece[0])):
                        dod[target[piece] + a] = {start + a: dom.one}
            action[lo, up] = from_entries(fld, sizes[t, up], sizes[t, lo], dod)
        dims = {rho: sizes[t, rho] for rho in c.cells}
        terms[t] = RModule(c, fld, dims, action, check=False)

    diffs: dict[int, ModuleMap] = {}
    for t in summands:
        if t + 1 not in summands:
            continue
        sign = dom.one if t % 2 == 0 else -dom.one
        components = {}
        for rho in c.cells:
            source, target = layouts[t, rho], layouts[t + 1, rho]
            dod = {}
            for (sigma, j), start in source.items():
                module = mc.term(j)
                for tau in poset.lower_covers(sigma):
                    stop = target.get((tau, j))
                    if stop is None:
                        continue
                    eps = fld.element(c.incidence(sigma, tau))
                    for a, row in entries(module.action[tau, sigma]).items():
                        for q, v in row.items():
                            dod.setdefault(stop + q, {})[start + a] = eps * v
                stop = target.get((sigma, j - 1))
                if stop is not None:
                    d = mc.differential(j - 1)[sigma]
                    for a, row in entries(d).items():
                        for b, v in row.items():
                            cell = dod.setdefault(stop + b, {})
                            cell[start + a] = cell.get(start + a, dom.zero) + sign * v
            components[rho] = from_entries(
                fld, sizes[t + 1, rho], sizes[t, rho], dod
            )
        diffs[t] = ModuleMap(terms[t], terms[t + 1], components, check=False)

    LOGGER.debug(
        "D(M) in degrees %s, total dims %s",
        sorted(terms),
        [terms[t].total_dim for t in sorted(terms)],
    )
    return ModuleComplex(c, fld, terms, diffs, check=True)


@dataclass(frozen=True)
class OmegaExt:
    """Ext^i_R(M•, ω•) = H^i(D(M•)), with the induced module structure on demand."""

    complex: ModuleComplex
    table: CohomologyTable

    def module(self, degree: int) -> RModule:
        """H^degree(D(M•)) with its induced cover actions."""
        return self.complex.cohomology_module(degree)


def ext_against_omega(mc: ModuleComplex | RModule) -> OmegaExt:
    """Per-degree, per-cell dimensions of Ext^i_R(M•, ω•)."""
    dual = dualize(mc)
    return OmegaExt(dual, dual.cohomology())
