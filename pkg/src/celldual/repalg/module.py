"""Modules over the incidence algebra, their morphisms and bounded complexes."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping

from celldual.cellcomplex import CellComplex
from celldual.errors import ComplexError, InvalidInputError
from celldual.linalg import (
    CohomologyBasis,
    FieldSpec,
    Matrix,
    VectorComplex,
    cohomology_bases,
    complex_cohomology,
    identity,
    induced_map,
    same,
    zeros,
)
from celldual.table import CohomologyTable

LOGGER = logging.getLogger(__name__)


class RModule:
    """A module over the incidence algebra of a cell complex.

    One vector space per cell and, for every cover lower < upper, the matrix of
    e_{upper,lower}: M_lower -> M_upper. Longer actions compose along covers.
    """

    def __init__(
        self,
        complex: CellComplex,
        field: FieldSpec,
        dims: Mapping[str, int],
        action: Mapping[tuple[str, str], Matrix] | None = None,
        *,
        check: bool = True,
    ) -> None:
        """Initialize from dimensions and (lower, upper) cover matrices.

        Absent matrices are zero. With `check`, path independence is verified
        over every interval.

        Raises:
            InvalidInputError: for unknown cells, bad shapes or path dependence.
        """
        complex.require(dims)
        negative = [c for c, n in dims.items() if n < 0]
        if negative:
            raise InvalidInputError("Dimensions must be >= 0", negative)
        self._complex = complex
        self._field = field
        self._dims = {c: int(dims.get(c, 0)) for c in complex.cells}
        action = action or {}
        covers = set(complex.poset.covers)
        stray = [pair for pair in action if pair not in covers]
        if stray:
            lo, up = stray[0]
            raise InvalidInputError(f"{lo}->{up} is not a cover", [lo, up])
        self._action: dict[tuple[str, str], Matrix] = {}
        for lower, upper in complex.poset.covers:
            shape = (self._dims[upper], self._dims[lower])
            m = action.get((lower, upper))
            if m is None:
                m = zeros(field, *shape)
            elif m.shape != shape:
                raise InvalidInputError(
                    f"Map {lower}->{upper} has shape {m.shape}, expected {shape}",
                    [lower, upper],
                )
            self._action[lower, upper] = m
        self._paths: dict[tuple[str, str], Matrix] = {}
        if check:
            self.validate()

    @classmethod
    def zero(cls, complex: CellComplex, field: FieldSpec) -> RModule:
        """The zero module."""
        return cls(complex, field, {}, check=False)

    def __repr__(self) -> str:
        support = ", ".join(f"{c}:{n}" for c, n in self._dims.items() if n)
        return f"<RModule {{{support}}}>"

    @property
    def complex(self) -> CellComplex:
        """The cell complex whose incidence algebra acts."""
        return self._complex

    @property
    def field(self) -> FieldSpec:
        """The ground field."""
        return self._field

    @property
    def dims(self) -> Mapping[str, int]:
        """Dimension at every cell."""
        return self._dims

    @property
    def action(self) -> Mapping[tuple[str, str], Matrix]:
        """Cover matrices keyed by (lower, upper)."""
        return self._action

    @property
    def total_dim(self) -> int:
        """Sum of all dimensions."""
        return sum(self._dims.values())

    @property
    def support(self) -> tuple[str, ...]:
        """Cells with a nonzero space."""
        return tuple(c for c, n in self._dims.items() if n)

    @property
    def is_zero(self) -> bool:
        """Whether every space is zero."""
        return not any(self._dims.values())

    def dim(self, cell: str) -> int:
        """Dimension at `cell`."""
        return self._dims[cell]

    def act(self, lower: str, upper: str) -> Matrix:
        """The action of e_{upper,lower}, composed along a chain of covers.

        Raises:
            ValueError: unless lower <= upper.
        """
        if lower == upper:
            return identity(self._field, self._dims[lower])
        cached = self._paths.get((lower, upper))
        if cached is not None:
            return cached
        poset = self._complex.poset
        if not poset.leq(lower, upper):
            raise ValueError(f"{lower} is not below {upper}")
        step = next(u for u in poset.upper_covers(lower) if poset.leq(u, upper))
        result = self.act(step, upper).matmul(self._action[lower, step])
        self._paths[lower, upper] = result
        return result

    def validate(self) -> None:
        """Check path independence on every interval.

        Raises:
            InvalidInputError: naming the first interval where two paths differ.
        """
        poset = self._complex.poset
        for x in poset.linear_extension:
            for y in poset.linear_extension:
                if y == x or not poset.leq(x, y):
                    continue
                through = [z for z in poset.lower_covers(y) if poset.leq(x, z)]
                first = self._action[through[0], y].matmul(self.act(x, through[0]))
                for z in through[1:]:
                    other = self._action[z, y].matmul(self.act(x, z))
                    if not same(first, other):
                        raise InvalidInputError(
                            f"Actions are not path independent on [{x}, {y}]", [x, y]
                        )

    def restrict(self, cells: Iterable[str]) -> RModule:
        """Zero out every space outside `cells`; a module when `cells` is convex."""
        keep = set(cells)
        dims = {c: n for c, n in self._dims.items() if c in keep}
        action = {
            pair: m
            for pair, m in self._action.items()
            if pair[0] in keep and pair[1] in keep
        }
        return RModule(self._complex, self._field, dims, action, check=False)


class ModuleMap:
    """A morphism of modules given by one matrix per cell."""

    def __init__(
        self,
        source: RModule,
        target: RModule,
        components: Mapping[str, Matrix] | None = None,
        *,
        check: bool = True,
    ) -> None:
        """Initialize from per-cell matrices; absent cells map by zero.

        Raises:
            ValueError: for bad shapes, or when `check` finds a non-commuting square.
        """
        self.source = source
        self.target = target
        components = components or {}
        self._components: dict[str, Matrix] = {}
        for cell in source.complex.cells:
            shape = (target.dim(cell), source.dim(cell))
            m = components.get(cell)
            if m is None:
                m = zeros(source.field, *shape)
            elif m.shape != shape:
                raise ValueError(f"Component at {cell} has shape {m.shape}, expected {shape}")
            self._components[cell] = m
        if check:
            self.validate()

    @classmethod
    def zero(cls, source: RModule, target: RModule) -> ModuleMap:
        """The zero morphism."""
        return cls(source, target, check=False)

    def __getitem__(self, cell: str) -> Matrix:
        return self._components[cell]

    @property
    def components(self) -> Mapping[str, Matrix]:
        """Matrix at every cell."""
        return self._components

    @property
    def is_zero(self) -> bool:
        """Whether every component vanishes."""
        return all(m.is_zero_matrix for m in self._components.values())

    def validate(self) -> None:
        """Check f commutes with every cover action.

        Raises:
            ValueError: naming the first failing cover.
        """
        for (lower, upper), m in self.source.action.items():
            left = self.target.action[lower, upper].matmul(self._components[lower])
            right = self._components[upper].matmul(m)
            if not same(left, right):
                raise ValueError(f"Map does not commute with {lower}->{upper}")

    def compose(self, first: ModuleMap) -> ModuleMap:
        """self ∘ first."""
        return ModuleMap(
            first.source,
            self.target,
            {c: m.matmul(first[c]) for c, m in self._components.items()},
            check=False,
        )


class ModuleComplex:
    """A bounded cochain complex of modules; `differential(i)` maps degree i to i + 1."""

    def __init__(
        self,
        complex: CellComplex,
        field: FieldSpec,
        terms: Mapping[int, RModule],
        diffs: Mapping[int, ModuleMap] | None = None,
        *,
        check: bool = True,
    ) -> None:
        """Initialize from terms and differentials; absent differentials are zero.

        Raises:
            ComplexError: when `check` finds d^{i+1} d^i != 0.
        """
        self._complex = complex
        self._field = field
        self._terms = {i: m for i, m in terms.items() if not m.is_zero}
        self._diffs = {
            i: d
            for i, d in (diffs or {}).items()
            if i in self._terms and i + 1 in self._terms
        }
        if check:
            self.validate()

    @classmethod
    def concentrated(cls, module: RModule, degree: int = 0) -> ModuleComplex:
        """A single module placed in one degree."""
        return cls(module.complex, module.field, {degree: module}, check=False)

    def __repr__(self) -> str:
        return f"<ModuleComplex degrees {self.degrees}>"

    @property
    def complex(self) -> CellComplex:
        """The underlying cell complex."""
        return self._complex

    @property
    def field(self) -> FieldSpec:
        """The ground field."""
        return self._field

    @property
    def degrees(self) -> list[int]:
        """Degrees with a nonzero term, ascending."""
        return sorted(self._terms)

    @property
    def is_zero(self) -> bool:
        """Whether every term vanishes."""
        return not self._terms

    def term(self, degree: int) -> RModule:
        """The module in `degree`."""
        module = self._terms.get(degree)
        if module is None:
            return RModule.zero(self._complex, self._field)
        return module

    def differential(self, degree: int) -> ModuleMap:
        """The differential leaving `degree`."""
        d = self._diffs.get(degree)
        if d is None:
            return ModuleMap.zero(self.term(degree), self.term(degree + 1))
        return d

    def validate(self) -> None:
        """Check d^{i+1} d^i = 0 at every cell.

        Raises:
            ComplexError: with the failing degree.
        """
        for i, d in self._diffs.items():
            after = self._diffs.get(i + 1)
            if after is None:
                continue
            for cell in self._complex.cells:
                if not after[cell].matmul(d[cell]).is_zero_matrix:
                    raise ComplexError(f"d^{i + 1} d^{i} != 0 at {cell}", degree=i)

    def at(self, cell: str) -> VectorComplex:
        """The complex of vector spaces sitting over one cell."""
        return VectorComplex(
            self._field,
            {i: m.dim(cell) for i, m in self._terms.items()},
            {i: d[cell] for i, d in self._diffs.items()},
        )

    def cohomology(self) -> CohomologyTable:
        """Dimensions of H^i at every cell."""
        raw: dict[int, dict[str, int]] = {}
        for cell in self._complex.cells:
            for i, n in complex_cohomology(self.at(cell)).items():
                raw.setdefault(i, {})[cell] = n
        return CohomologyTable.build(raw)

    def cohomology_module(self, degree: int) -> RModule:
        """H^degree as a module, with the cover actions induced on cohomology."""
        bases: dict[str, CohomologyBasis] = {}
        for cell in self._complex.cells:
            found = cohomology_bases(self.at(cell)).get(degree)
            if found is None:
                n = self.term(degree).dim(cell)
                empty = zeros(self._field, n, 0)
                found = CohomologyBasis(self._field, empty, empty)
            bases[cell] = found
        term = self.term(degree)
        action = {
            (lo, up): induced_map(bases[lo], bases[up], term.action[lo, up])
            for lo, up in self._complex.poset.covers
        }
        dims = {cell: b.dim for cell, b in bases.items()}
        return RModule(self._complex, self._field, dims, action, check=False)

    def restrict(self, cells: Iterable[str]) -> ModuleComplex:
        """The degreewise restriction; a subcomplex when `cells` is an order filter."""
        keep = set(cells)
        terms = {i: m.restrict(keep) for i, m in self._terms.items()}
        diffs = {
            i: ModuleMap(
                terms[i],
                terms[i + 1],
                {c: m for c, m in d.components.items() if c in keep},
                check=False,
            )
            for i, d in self._diffs.items()
        }
        return ModuleComplex(self._complex, self._field, terms, diffs, check=False)
