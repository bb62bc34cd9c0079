"""Minimal projective and injective resolutions by iterated covers."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass

from celldual.errors import InvariantViolation
from celldual.linalg import (
    column_slice,
    complement_indices,
    entries,
    hstack,
    kernel_basis,
    solve,
)
from celldual.repalg.builders import k_dual, projective_sum
from celldual.repalg.module import ModuleComplex, ModuleMap, RModule

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class GradedResolution:
    """A minimal projective resolution ... -> P^{-1} -> P^0 -> M -> 0.

    `generators[i]` lists the cell of every Re summand of P^{-i} in basis order,
    `differentials[i]` maps P^{-i-1} to P^{-i} and `degrees[i]` holds the
    internal generation degree of each summand.
    """

    module: RModule
    generators: tuple[tuple[str, ...], ...]
    terms: tuple[RModule, ...]
    differentials: tuple[ModuleMap, ...]
    augmentation: ModuleMap
    degrees: tuple[tuple[int, ...], ...] = ()

    @property
    def length(self) -> int:
        """The largest i with P^{-i} != 0, zero for the zero module."""
        return max(len(self.terms) - 1, 0)

    def multiplicities(self, i: int) -> Counter[str]:
        """How often each Re_σ occurs in P^{-i}."""
        return Counter(self.generators[i]) if i < len(self.generators) else Counter()

    def is_linear(self) -> bool:
        """Whether every P^{-i} is generated in internal degree i."""
        return all(d == i for i, step in enumerate(self.degrees) for d in step)

    def as_complex(self) -> ModuleComplex:
        """P• with P^{-i} in degree -i, the augmentation dropped."""
        m = self.module
        terms = {-i: p for i, p in enumerate(self.terms)}
        diffs = {-i - 1: d for i, d in enumerate(self.differentials)}
        return ModuleComplex(m.complex, m.field, terms, diffs, check=False)


def projective_cover(module: RModule) -> tuple[list[str], ModuleMap]:
    """The projective cover P(M) -> M.

    Generators at σ are unit vectors of M_σ completing the radical, the sum of
    the images of the lower covers.

    Returns:
        The generator cells in basis order and the surjection.
    """
    c, fld = module.complex, module.field
    poset = c.poset
    gens: list[str] = []
    picks: list[int] = []
    for x in c.cells:
        n = module.dim(x)
        if not n:
            continue
        radical = hstack(fld, n, [module.action[z, x] for z in poset.lower_covers(x)])
        for k in complement_indices(radical):
            gens.append(x)
            picks.append(k)
    cover = projective_sum(c, fld, gens)
    components = {}
    for x in c.cells:
        cols = [
            column_slice(module.act(g, x), [k])
            for g, k in zip(gens, picks, strict=True)
            if poset.leq(g, x)
        ]
        components[x] = hstack(fld, module.dim(x), cols)
    return gens, ModuleMap(cover, module, components, check=False)


def kernel_submodule(f: ModuleMap) -> tuple[RModule, ModuleMap]:
    """ker f as a module together with its inclusion into the source."""
    source = f.source
    c, fld = source.complex, source.field
    bases = {x: kernel_basis(f[x]) for x in c.cells}
    action = {
        (lo, up): solve(bases[up], source.action[lo, up].matmul(bases[lo]))
        for lo, up in c.poset.covers
    }
    kernel = RModule(c, fld, {x: b.shape[1] for x, b in bases.items()}, action, check=False)
    return kernel, ModuleMap(kernel, source, bases, check=False)


def _check_minimal(
    targets: tuple[str, ...], sources: tuple[str, ...], d: ModuleMap
) -> None:
    # A generator's image must have no component on a summand generated at the same cell.
    poset = d.source.complex.poset
    for x in set(sources):
        col_of = [k for k, g in enumerate(sources) if poset.leq(g, x)]
        row_of = [k for k, g in enumerate(targets) if poset.leq(g, x)]
        block = entries(d[x])
        for j, k in enumerate(col_of):
            if sources[k] != x:
                continue
            for i, t in enumerate(row_of):
                if targets[t] == x and block.get(i, {}).get(j):
                    raise InvariantViolation(
                        f"Resolution is not minimal: summand at {x} splits off"
                    )


def min_projective_resolution(
    module: RModule, graded: bool = True, shift: int | None = None
) -> GradedResolution:
    """The minimal projective resolution by iterated projective covers.

    Generation degrees are dim g - shift, where `shift` defaults to the least
    dimension of a cell in the support of M.

    Raises:
        InvariantViolation: if minimality fails or the process does not stop.
    """
    c, fld = module.complex, module.field
    gens_list: list[tuple[str, ...]] = []
    terms: list[RModule] = []
    diffs: list[ModuleMap] = []
    augmentation = ModuleMap.zero(RModule.zero(c, fld), module)
    current, inclusion = module, None
    for _ in range(len(c.cells) + 2):
        if current.is_zero:
            break
        gens, cover = projective_cover(current)
        if inclusion is None:
            augmentation = cover
        else:
            step = inclusion.compose(cover)
            _check_minimal(gens_list[-1], tuple(gens), step)
            diffs.append(step)
        terms.append(cover.source)
        gens_list.append(tuple(gens))
        current, inclusion = kernel_submodule(cover)
    else:
        raise InvariantViolation("Projective resolution did not terminate")

    degrees: tuple[tuple[int, ...], ...] = ()
    if graded and not module.is_zero:
        base = shift if shift is not None else min(c.dim(x) for x in module.support)
        degrees = tuple(tuple(c.dim(g) - base for g in step) for step in gens_list)
    LOGGER.info("Projective resolution of length %d", max(len(terms) - 1, 0))
    return GradedResolution(
        module, tuple(gens_list), tuple(terms), tuple(diffs), augmentation, degrees
    )


@dataclass(frozen=True)
class InjectiveResolution:
    """A minimal injective resolution 0 -> M -> I^0 -> I^1 -> ..."""

    complex: ModuleComplex
    cogenerators: tuple[tuple[str, ...], ...]
    coaugmentation: ModuleMap

    @property
    def length(self) -> int:
        """The largest j with I^j != 0."""
        return max(len(self.cogenerators) - 1, 0)

    def multiplicities(self, j: int) -> Counter[str]:
        """How often each E(σ) occurs in I^j."""
        if j >= len(self.cogenerators):
            return Counter()
        return Counter(self.cogenerators[j])


def injective_resolution(module: RModule) -> InjectiveResolution:
    """The k-dual of the minimal projective resolution of M^∨ over the opposite side."""
    dual = min_projective_resolution(k_dual(module), graded=False)
    terms = [k_dual(p) for p in dual.terms]
    diffs = {
        j: ModuleMap(
            terms[j],
            terms[j + 1],
            {x: m.transpose() for x, m in d.components.items()},
            check=False,
        )
        for j, d in enumerate(dual.differentials)
    }
    c, fld = module.complex, module.field
    if terms:
        coaug = ModuleMap(
            module,
            terms[0],
            {x: m.transpose() for x, m in dual.augmentation.components.items()},
            check=False,
        )
    else:
        coaug = ModuleMap.zero(module, RModule.zero(c, fld))
    mc = ModuleComplex(c, fld, dict(enumerate(terms)), diffs, check=False)
    return InjectiveResolution(mc, dual.generators, coaug)


def min_injective_resolution(module: RModule) -> ModuleComplex:
    """The minimal injective resolution I• with I^j in degree j."""
    return injective_resolution(module).complex
