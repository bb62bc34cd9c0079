"""The dualizing complex ω• as a complex of bimodules over Σ × Σ."""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

from celldual.cellcomplex import CellComplex
from celldual.consts import EMPTY
from celldual.errors import InvalidInputError, InvariantViolation
from celldual.linalg import (
    FieldSpec,
    Matrix,
    VectorComplex,
    complex_cohomology,
    from_entries,
    same,
)
from celldual.repalg.module import RModule

LOGGER = logging.getLogger(__name__)

Pair = tuple[str, str]  # (τ, ρ): right index, left index


class ProductModule:
    """A module over the incidence algebra of Σ × Σ.

    Spaces sit at pairs (τ, ρ). The left actions move ρ along a cover with τ
    fixed; the right actions move τ with ρ fixed.
    """

    def __init__(
        self,
        complex: CellComplex,
        field: FieldSpec,
        dims: Mapping[Pair, int],
        left: Mapping[tuple[str, Pair], Matrix],
        right: Mapping[tuple[str, Pair], Matrix],
    ) -> None:
        """Initialize from dims and actions keyed by (fixed cell, (lower, upper))."""
        self.complex = complex
        self.field = field
        self._dims = dict(dims)
        self._left = dict(left)
        self._right = dict(right)

    def dim(self, tau: str, rho: str) -> int:
        """Dimension at (τ, ρ)."""
        return self._dims.get((tau, rho), 0)

    @property
    def total_dim(self) -> int:
        """dim_k of the whole module."""
        return sum(self._dims.values())

    def left(self, tau: str, lower: str, upper: str) -> Matrix:
        """Left action from (τ, lower) to (τ, upper)."""
        return self._left[tau, (lower, upper)]

    def right(self, rho: str, lower: str, upper: str) -> Matrix:
        """Right action from (lower, ρ) to (upper, ρ)."""
        return self._right[rho, (lower, upper)]

    def left_module(self, tau: str) -> RModule:
        """The restriction to the left action with τ fixed."""
        dims = {rho: self.dim(tau, rho) for rho in self.complex.cells}
        action = {pair: self._left[tau, pair] for pair in self.complex.poset.covers}
        return RModule(self.complex, self.field, dims, action, check=False)

    def right_module(self, rho: str) -> RModule:
        """The restriction to the right action with ρ fixed."""
        dims = {tau: self.dim(tau, rho) for tau in self.complex.cells}
        action = {pair: self._right[rho, pair] for pair in self.complex.poset.covers}
        return RModule(self.complex, self.field, dims, action, check=False)

    def validate(self) -> None:
        """Check path independence in each coordinate and that the actions commute.

        Raises:
            InvalidInputError: naming the first failing square.
        """
        cells = self.complex.cells
        for x in cells:
            self.left_module(x).validate()
            self.right_module(x).validate()
        for t_lo, t_up in self.complex.poset.covers:
            for r_lo, r_up in self.complex.poset.covers:
                one = self.left(t_up, r_lo, r_up).matmul(self.right(r_lo, t_lo, t_up))
                two = self.right(r_up, t_lo, t_up).matmul(self.left(t_lo, r_lo, r_up))
                if not same(one, two):
                    raise InvalidInputError(
                        "Left and right actions do not commute",
                        [t_lo, t_up, r_lo, r_up],
                    )


@dataclass(frozen=True)
class OmegaComplex:
    """ω• with basis {e(σ)^τ_ρ : dim σ = -i, σ >= τ, σ >= ρ} in degree i.

    Stored by basis triples; the (τ, ρ) columns are assembled on demand.
    """

    complex: CellComplex
    field: FieldSpec
    basis: Mapping[int, Mapping[Pair, tuple[str, ...]]]

    @property
    def degrees(self) -> list[int]:
        """Degrees -d .. 1."""
        return sorted(self.basis)

    def dim(self, degree: int) -> int:
        """dim_k ω^degree."""
        return sum(len(v) for v in self.basis.get(degree, {}).values())

    def column(self, tau: str, rho: str) -> VectorComplex:
        """The complex of vector spaces at (τ, ρ)."""
        c = self.complex
        fld = self.field
        dims = {}
        diffs = {}
        for i in self.degrees:
            dims[i] = len(self.basis[i].get((tau, rho), ()))
        for i in self.degrees:
            source = self.basis[i].get((tau, rho), ())
            target = self.basis.get(i + 1, {}).get((tau, rho), ())
            if not source or not target:
                continue
            where = {s: k for k, s in enumerate(target)}
            dod: dict[int, dict[int, Any]] = {}
            for k, sigma in enumerate(source):
                for low in c.poset.lower_covers(sigma):
                    if low in where:
                        dod.setdefault(where[low], {})[k] = fld.element(
                            c.incidence(sigma, low)
                        )
            diffs[i] = from_entries(fld, len(target), len(source), dod)
        return VectorComplex(fld, dims, diffs)

    def term(self, degree: int) -> ProductModule:
        """ω^degree as a Σ × Σ module; both actions are projections."""
        c = self.complex
        fld = self.field
        one = fld.domain.one
        spaces = self.basis.get(degree, {})

        def projection(src: tuple[str, ...], tgt: tuple[str, ...]) -> Matrix:
            where = {s: k for k, s in enumerate(tgt)}
            dod = {where[s]: {k: one} for k, s in enumerate(src) if s in where}
            return from_entries(fld, len(tgt), len(src), dod)

        left = {}
        right = {}
        for fixed in c.cells:
            for lo, up in c.poset.covers:
                left[fixed, (lo, up)] = projection(
                    spaces.get((fixed, lo), ()), spaces.get((fixed, up), ())
                )
                right[fixed, (lo, up)] = projection(
                    spaces.get((lo, fixed), ()), spaces.get((up, fixed), ())
                )
        dims = {pair: len(v) for pair, v in spaces.items()}
        return ProductModule(c, fld, dims, left, right)

    def cohomology(self) -> dict[Pair, dict[int, int]]:
        """Nonzero H^i(ω•) dimensions for every (τ, ρ)."""
        out = {}
        for tau in self.complex.cells:
            for rho in self.complex.cells:
                h = complex_cohomology(self.column(tau, rho))
                if h:
                    out[tau, rho] = h
        return out

    def concentrated(self, degree: int, *, sheaf_level: bool = False) -> bool:
        """Whether H^i(ω•) vanishes outside `degree`; `sheaf_level` skips ρ = ∅."""
        return not self.off_degree(degree, sheaf_level=sheaf_level)

    def off_degree(
        self, degree: int, *, sheaf_level: bool = False
    ) -> list[tuple[int, str, str, int]]:
        """Every nonzero (i, τ, ρ, dim) with i != degree."""
        return [
            (i, tau, rho, n)
            for (tau, rho), h in self.cohomology().items()
            if not (sheaf_level and rho == EMPTY)
            for i, n in sorted(h.items())
            if i != degree
        ]


def build_omega(c: CellComplex, fld: FieldSpec, *, check: bool = False) -> OmegaComplex:
    """Enumerate the basis triples of ω•; `check` validates every term as a bimodule.

    Raises:
        InvariantViolation: if `check` finds a term whose actions fail to commute.
    """
    poset = c.poset
    basis: dict[int, dict[Pair, list[str]]] = {}
    for sigma in c.cells:
        below = poset.down(sigma)
        row = basis.setdefault(-c.dim(sigma), {})
        for tau in below:
            for rho in below:
                row.setdefault((tau, rho), []).append(sigma)
    frozen = {
        i: {pair: tuple(cells) for pair, cells in row.items()} for i, row in basis.items()
    }
    LOGGER.debug(
        "ω has dims %s", {i: sum(len(v) for v in row.values()) for i, row in frozen.items()}
    )
    omega = OmegaComplex(c, fld, frozen)
    if check:
        for i in omega.degrees:
            try:
                omega.term(i).validate()
            except InvalidInputError as exc:
                raise InvariantViolation(f"ω^{i} is not a bimodule: {exc}") from exc
    return omega
