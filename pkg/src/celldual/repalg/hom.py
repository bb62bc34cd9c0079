"""Hom spaces between modules, the uHom module and Hom complexes."""

from __future__ import annotations

import logging
from collections.abc import Mapping
from typing import Any

from celldual.linalg import (
    Matrix,
    VectorComplex,
    column_slice,
    entries,
    from_entries,
    kernel_basis,
    solve,
)
from celldual.repalg.module import ModuleComplex, ModuleMap, RModule

LOGGER = logging.getLogger(__name__)


class HomSpace:
    """Hom_R(M, N) as the solution space of the commuting-square equations.

    A morphism is flattened cell by cell, each component row-major, into one
    coordinate vector; `basis` holds a kernel basis as columns.
    """

    def __init__(self, source: RModule, target: RModule) -> None:  # noqa: C901
        """Solve N_ab f_a = f_b M_ab over every cover a < b."""
        self.source = source
        self.target = target
        c = source.complex
        fld = source.field
        dom = fld.domain
        self._cells = [x for x in c.cells if source.dim(x) and target.dim(x)]
        self._offset: dict[str, int] = {}
        total = 0
        for x in self._cells:
            self._offset[x] = total
            total += target.dim(x) * source.dim(x)
        self._size = total

        rows: dict[int, dict[int, Any]] = {}
        count = 0
        for a, b in c.poset.covers:
            m_a, m_b = source.dim(a), source.dim(b)
            n_a, n_b = target.dim(a), target.dim(b)
            if not m_a or not n_b:
                continue
            left = entries(target.action[a, b]) if n_a else {}
            right_cols: dict[int, dict[int, Any]] = {}
            if n_b and m_b:
                for q, row in entries(source.action[a, b]).items():
                    for s, v in row.items():
                        right_cols.setdefault(s, {})[q] = v
            for r in range(n_b):
                for s in range(m_a):
                    eq: dict[int, Any] = {}
                    for p, v in left.get(r, {}).items():
                        k = self._offset[a] + p * m_a + s
                        eq[k] = eq.get(k, dom.zero) + v
                    for q, v in right_cols.get(s, {}).items():
                        k = self._offset[b] + r * m_b + q
                        eq[k] = eq.get(k, dom.zero) - v
                    eq = {k: v for k, v in eq.items() if v}
                    if eq:
                        rows[count] = eq
                        count += 1
        self._basis = kernel_basis(from_entries(fld, count, total, rows))
        LOGGER.debug("Hom space: %d unknowns, %d equations, dim %d", total, count, self.dim)

    @property
    def dim(self) -> int:
        """dim_k Hom_R(M, N)."""
        return self._basis.shape[1]

    @property
    def basis_matrix(self) -> Matrix:
        """The basis as flattened column vectors."""
        return self._basis

    @property
    def basis(self) -> list[ModuleMap]:
        """The basis as module maps."""
        return [
            ModuleMap(self.source, self.target, self.components(k), check=False)
            for k in range(self.dim)
        ]

    def components(self, k: int) -> dict[str, Matrix]:
        """Per-cell matrices of the k-th basis map."""
        fld = self.source.field
        column = entries(column_slice(self._basis, [k]))
        out = {}
        for x in self._cells:
            m, n = self.source.dim(x), self.target.dim(x)
            base = self._offset[x]
            dod: dict[int, dict[int, Any]] = {}
            for i in range(base, base + n * m):
                v = column.get(i, {}).get(0)
                if v:
                    r, q = divmod(i - base, m)
                    dod.setdefault(r, {})[q] = v
            out[x] = from_entries(fld, n, m, dod)
        return out

    def flatten(self, maps: list[Mapping[str, Matrix]]) -> Matrix:
        """Stack per-cell components into columns; missing cells count as zero."""
        dod: dict[int, dict[int, Any]] = {}
        for k, comps in enumerate(maps):
            for x in self._cells:
                part = comps.get(x)
                if part is None:
                    continue
                m = self.source.dim(x)
                for r, row in entries(part).items():
                    for q, v in row.items():
                        dod.setdefault(self._offset[x] + r * m + q, {})[k] = v
        return from_entries(self.source.field, self._size, len(maps), dod)

    def coordinates(self, maps: list[Mapping[str, Matrix]]) -> Matrix:
        """Coordinates of morphisms in `basis`, one column each.

        Raises:
            ValueError: if some map is not a morphism.
        """
        return solve(self._basis, self.flatten(maps))


def hom_space(source: RModule, target: RModule) -> HomSpace:
    """Hom_R(M, N) with a basis of module maps."""
    return HomSpace(source, target)


def u_hom(source: RModule, target: RModule) -> RModule:
    """uHom(M, N): Hom_R(M_{>=σ}, N) at σ, with restriction as the action."""
    c = source.complex
    poset = c.poset
    spaces = {x: HomSpace(source.restrict(poset.up(x)), target) for x in c.cells}
    action = {}
    for lo, up in poset.covers:
        small, big = spaces[up], spaces[lo]
        maps = [big.components(k) for k in range(big.dim)]
        restricted = [
            {x: m for x, m in comps.items() if poset.leq(up, x)} for comps in maps
        ]
        action[lo, up] = small.coordinates(restricted)
    dims = {x: s.dim for x, s in spaces.items()}
    return RModule(c, source.field, dims, action, check=False)


def hom_into_complex(source: RModule, mc: ModuleComplex) -> VectorComplex:
    """Hom_R(M, C•) with Hom(M, C^j) in degree j."""
    spaces = {j: HomSpace(source, mc.term(j)) for j in mc.degrees}
    diffs = {}
    for j, space in spaces.items():
        after = spaces.get(j + 1)
        if after is None:
            continue
        d = mc.differential(j)
        images = [
            {x: d[x].matmul(m) for x, m in space.components(k).items()}
            for k in range(space.dim)
        ]
        diffs[j] = after.coordinates(images)
    return VectorComplex(source.field, {j: s.dim for j, s in spaces.items()}, diffs)


def hom_from_complex(mc: ModuleComplex, target: RModule) -> VectorComplex:
    """Hom_R(C•, N) with Hom(C^j, N) in degree -j."""
    spaces = {j: HomSpace(mc.term(j), target) for j in mc.degrees}
    diffs = {}
    for j, space in spaces.items():
        before = spaces.get(j - 1)
        if before is None:
            continue
        d = mc.differential(j - 1)
        images = [
            {x: m.matmul(d[x]) for x, m in space.components(k).items()}
            for k in range(space.dim)
        ]
        diffs[-j] = before.coordinates(images)
    return VectorComplex(target.field, {-j: s.dim for j, s in spaces.items()}, diffs)
