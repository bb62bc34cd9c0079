"""Regular cell complexes as graded posets carrying an incidence function."""

from __future__ import annotations

import json
import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Any

from celldual.consts import EMPTY, RegionKind
from celldual.errors import InvalidInputError, RegularityError
from celldual.linalg import (
    RATIONALS,
    FieldSpec,
    VectorComplex,
    as_int,
    complex_cohomology,
    entries,
    from_entries,
    solve,
)
from celldual.poset import Poset

LOGGER = logging.getLogger(__name__)

_GF2 = FieldSpec(2)


def vertex_key(name: str) -> tuple[int, int, str]:
    """Sort key putting integer-like vertex names first, in numeric order."""
    stripped = name[1:] if name.startswith("-") else name
    if stripped.isascii() and stripped.isdigit():
        return 0, int(name), name
    return 1, 0, name


@dataclass(frozen=True)
class Region:
    """A subcomplex (closed, a down-set) or an order filter (open, an up-set)."""

    cells: frozenset[str]
    kind: str

    @property
    def is_open(self) -> bool:
        """Whether the region is an order filter."""
        return self.kind == RegionKind.OPEN


@dataclass(frozen=True)
class HomologyGroups:
    """Betti numbers of a region, plain and reduced, nonzero degrees only."""

    betti: dict[int, int]
    reduced: dict[int, int]

    @property
    def euler_characteristic(self) -> int:
        """Alternating sum of the Betti numbers."""
        return sum((-1) ** i * b for i, b in self.betti.items())

    @property
    def reduced_euler_characteristic(self) -> int:
        """Alternating sum of the reduced Betti numbers."""
        return sum((-1) ** i * b for i, b in self.reduced.items())


class CellComplex:
    """A finite regular cell complex, encoded by its face poset, dimensions and ε.

    The empty cell `@empty` is a first-class cell of dimension -1 and the unique
    minimum. `epsilon` is defined exactly on covers and maps (upper, lower) to ±1.
    """

    def __init__(
        self,
        poset: Poset,
        dims: Mapping[str, int],
        epsilon: Mapping[tuple[str, str], int] | None = None,
        *,
        faces: Mapping[str, frozenset[str]] | None = None,
        check: bool = True,
    ) -> None:
        """Initialize and, when `check` is set, validate the complex.

        A missing `epsilon` is computed with `solve_epsilon`.

        Raises:
            RegularityError: if a regularity condition fails.
        """
        self._poset = poset
        self._dims = dict(dims)
        self._faces = dict(faces) if faces is not None else None
        self._by_vertices = (
            {f: cell for cell, f in self._faces.items()} if self._faces else None
        )
        self._opposite: CellComplex | None = None
        self._is_opposite = False
        if check:
            _check_minimum(poset, self._dims)
            _check_grading(poset, self._dims)
            _check_diamonds(poset, self._dims)
        self._cells = tuple(poset.elements)
        self._by_dim: dict[int, list[str]] = {}
        for cell in self._cells:
            self._by_dim.setdefault(self._dims[cell], []).append(cell)
        if epsilon is None:
            epsilon = solve_epsilon(poset, self._dims)
        self._epsilon = dict(epsilon)
        if check:
            _check_epsilon(self)
            _check_spheres(self)

    def __repr__(self) -> str:
        counts = ", ".join(f"{i}:{len(v)}" for i, v in sorted(self._by_dim.items()))
        side = " opposite" if self._is_opposite else ""
        return f"<CellComplex{side} cells by dim {{{counts}}}>"

    # ----- #  Constructors  # ----- #

    @classmethod
    def from_facets(
        cls, facets: Iterable[Iterable[str]], separator: str = ","
    ) -> CellComplex:
        """The simplicial complex generated by `facets`.

        Face ids join the sorted vertex names with `separator`; ε follows the
        sorted-vertex convention ε(σ, σ - {v_i}) = (-1)^i.

        Raises:
            InvalidInputError: on an empty facet list or a vertex named `@empty`.
        """
        raw = []
        for facet in facets:
            names = [str(v) for v in facet]
            if len(set(names)) != len(names):
                LOGGER.warning("Facet %s repeats a vertex", names)
            if EMPTY in names:
                raise InvalidInputError(f"Vertex name {EMPTY} is reserved", [EMPTY])
            raw.append(frozenset(names))
        if not raw:
            raise InvalidInputError("Empty facet list")
        unique = set(raw)
        kept = [f for f in unique if not any(f < g for g in unique)]
        if len(kept) != len(raw):
            LOGGER.warning("Dropping %d redundant facet(s)", len(raw) - len(kept))

        faces: set[frozenset[str]] = set()
        for facet in kept:
            ordered = sorted(facet, key=vertex_key)
            for size in range(len(ordered) + 1):
                faces.update(frozenset(s) for s in combinations(ordered, size))

        def face_id(face: frozenset[str]) -> str:
            if not face:
                return EMPTY
            return separator.join(sorted(face, key=vertex_key))

        def face_key(face: frozenset[str]) -> tuple[int, list[tuple[int, int, str]]]:
            return len(face), [vertex_key(v) for v in sorted(face, key=vertex_key)]

        ordered_faces = sorted(faces, key=face_key)
        ids = {f: face_id(f) for f in ordered_faces}
        if len(set(ids.values())) != len(ids):
            raise InvalidInputError(f"Vertex names collide with the separator {separator!r}")
        covers = []
        epsilon = {}
        for face in ordered_faces:
            for i, v in enumerate(sorted(face, key=vertex_key)):
                lower = face - {v}
                covers.append((ids[lower], ids[face]))
                epsilon[ids[face], ids[lower]] = 1 if i % 2 == 0 else -1
        poset = Poset([ids[f] for f in ordered_faces], covers)
        dims = {ids[f]: len(f) - 1 for f in ordered_faces}
        return cls(
            poset, dims, epsilon, faces={ids[f]: f for f in ordered_faces}, check=True
        )

    @classmethod
    def from_poset_data(cls, data: Mapping[str, Any]) -> CellComplex:
        """Build from the parsed poset-file JSON; `@empty` is synthesized.

        Raises:
            InvalidInputError: if the document is malformed.
            RegularityError: if the complex is not regular.
        """
        try:
            cells = [(str(c["id"]), as_int(c["dim"])) for c in data["cells"]]
            covers = [(str(lo), str(up)) for lo, up in data.get("covers", [])]
            signs = [
                (str(e["upper"]), str(e["lower"]), as_int(e["sign"]))
                for e in data.get("epsilon", [])
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"Malformed poset file: {exc}") from exc
        if any(cell == EMPTY for cell, _ in cells) or any(EMPTY in c for c in covers):
            raise InvalidInputError(f"{EMPTY} must not be listed", [EMPTY])
        negative = [cell for cell, d in cells if d < 0]
        if negative:
            raise RegularityError("grading", "Cells need dim >= 0", negative)

        ordered = sorted(cells, key=lambda c: c[1])
        dims = {EMPTY: -1, **dict(ordered)}
        vertices = [cell for cell, d in ordered if d == 0]
        poset = Poset(
            [EMPTY, *(cell for cell, _ in ordered)],
            [*((EMPTY, v) for v in vertices), *covers],
        )
        epsilon = None
        if signs:
            epsilon = {(v, EMPTY): 1 for v in vertices}
            epsilon.update({(up, lo): s for up, lo, s in signs})
        return cls(poset, dims, epsilon, check=True)

    @classmethod
    def from_poset_file(cls, path: str | Path) -> CellComplex:
        """Read a JSON poset file.

        Raises:
            InvalidInputError: if the file cannot be read or parsed.
        """
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise InvalidInputError(f"Cannot read poset file {path}: {exc}") from exc
        return cls.from_poset_data(data)

    def opposite(self) -> CellComplex:
        """The order-reversed complex, dim -> -dim and ε transposed; not validated."""
        if self._opposite is None:
            op = CellComplex(
                self._poset.opposite(),
                {c: -d for c, d in self._dims.items()},
                {(lo, up): s for (up, lo), s in self._epsilon.items()},
                check=False,
            )
            op._is_opposite = True
            op._opposite = self
            self._opposite = op
        return self._opposite

    # ----- #  Queries  # ----- #

    @property
    def poset(self) -> Poset:
        """The face poset, `@empty` included."""
        return self._poset

    @property
    def cells(self) -> tuple[str, ...]:
        """Cells in canonical order, `@empty` first."""
        return self._cells

    @property
    def dims(self) -> Mapping[str, int]:
        """Dimension of every cell."""
        return self._dims

    @property
    def epsilon(self) -> Mapping[tuple[str, str], int]:
        """The incidence function on (upper, lower) covers."""
        return self._epsilon

    @property
    def dimension(self) -> int:
        """d = max dim over all cells."""
        return max(self._dims.values())

    @property
    def is_simplicial(self) -> bool:
        """Whether the complex came from a facet list."""
        return self._faces is not None

    @property
    def is_opposite(self) -> bool:
        """Whether this is the order-reversed side."""
        return self._is_opposite

    def dim(self, cell: str) -> int:
        """Dimension of `cell`."""
        return self._dims[cell]

    def incidence(self, upper: str, lower: str) -> int:
        """ε(upper, lower), zero when `lower` is not covered by `upper`."""
        return self._epsilon.get((upper, lower), 0)

    def cells_of_dim(self, i: int) -> tuple[str, ...]:
        """Cells of dimension i in canonical order."""
        return tuple(self._by_dim.get(i, ()))

    def faces_of(self, cell: str) -> frozenset[str]:
        """Vertex set of a simplex.

        Raises:
            InvalidInputError: if the complex is not simplicial.
        """
        if self._faces is None:
            raise InvalidInputError("Vertex sets exist only for simplicial complexes")
        return self._faces[cell]

    def require(self, cells: Iterable[str]) -> None:
        """Reject unknown cell ids.

        Raises:
            InvalidInputError: naming the unknown ids.
        """
        unknown = [c for c in cells if c not in self._poset]
        if unknown:
            raise InvalidInputError(f"Unknown cell id(s): {', '.join(unknown)}", unknown)

    def diamonds(self) -> list[tuple[str, str, tuple[str, ...]]]:
        """Every (top, bottom, middles) with dim top - dim bottom = 2."""
        return _diamonds(self._poset)

    # ----- #  Regions  # ----- #

    def whole(self) -> Region:
        """Every cell, as a subcomplex."""
        return Region(frozenset(self._cells), RegionKind.CLOSED)

    def closure(self, cell: str) -> Region:
        """The closed cell, all faces of `cell`."""
        self.require([cell])
        return Region(frozenset(self._poset.down(cell)), RegionKind.CLOSED)

    def boundary(self, cell: str) -> Region:
        """The proper faces of `cell`."""
        self.require([cell])
        return Region(frozenset(self._poset.down(cell)) - {cell}, RegionKind.CLOSED)

    def deletion(self, cell: str) -> Region:
        """del(σ), the cells not above `cell`."""
        self.require([cell])
        return Region(
            frozenset(self._cells) - frozenset(self._poset.up(cell)), RegionKind.CLOSED
        )

    def open_star(self, cell: str) -> Region:
        """The order filter of cells above `cell`."""
        self.require([cell])
        return Region(frozenset(self._poset.up(cell)), RegionKind.OPEN)

    def star(self, cell: str) -> Region:
        """Closed star st(σ) = {τ : τ ∪ σ is a face} of a simplicial complex."""
        sigma = self._simplex(cell)
        return Region(
            frozenset(c for c in self._cells if self._faces_union(c, sigma) is not None),
            RegionKind.CLOSED,
        )

    def link(self, cell: str) -> Region:
        """lk(σ) = {τ in st(σ) : τ ∩ σ = ∅} of a simplicial complex."""
        sigma = self._simplex(cell)
        return Region(
            frozenset(
                c
                for c in self.star(cell).cells
                if not (self.faces_of(c) & sigma)
            ),
            RegionKind.CLOSED,
        )

    def join_cell(self, a: str, b: str) -> str | None:
        """The simplex a ∪ b when it is a face, else None."""
        return self._faces_union(a, self._simplex(b))

    def filter_region(self, cells: Iterable[str], *, closure: bool = False) -> Region:
        """An order filter from explicit cells, closed upward only when asked.

        Raises:
            InvalidInputError: for unknown ids, or a non-filter with its witness.
        """
        members = list(cells)
        self.require(members)
        if closure:
            return Region(self._poset.upward_closure(members), RegionKind.OPEN)
        witness = self._poset.filter_witness(members)
        if witness is not None:
            low, high = witness
            raise InvalidInputError(
                f"Not an order filter: {low} is included but {high} >= {low} is not",
                witness,
            )
        return Region(frozenset(members), RegionKind.OPEN)

    def _simplex(self, cell: str) -> frozenset[str]:
        self.require([cell])
        if self._faces is None:
            raise InvalidInputError("star and link need a simplicial complex", [cell])
        return self._faces[cell]

    def _faces_union(self, cell: str, sigma: frozenset[str]) -> str | None:
        assert self._faces is not None and self._by_vertices is not None
        return self._by_vertices.get(self._faces[cell] | sigma)


# ----- #  Validation  # ----- #


def _check_minimum(poset: Poset, dims: Mapping[str, int]) -> None:
    if EMPTY not in poset:
        raise RegularityError("minimum", f"{EMPTY} is missing", [])
    minimal = poset.minimal()
    if minimal != (EMPTY,):
        raise RegularityError(
            "minimum", f"{EMPTY} must be the unique minimum", list(minimal)
        )
    if dims.get(EMPTY) != -1:
        raise RegularityError("grading", f"{EMPTY} must have dim -1", [EMPTY])


def _check_grading(poset: Poset, dims: Mapping[str, int]) -> None:
    missing = [c for c in poset if c not in dims]
    if missing:
        raise RegularityError("grading", "Cells without a dimension", missing)
    for lower, upper in poset.covers:
        if dims[upper] != dims[lower] + 1:
            raise RegularityError(
                "grading",
                f"Cover {lower}->{upper} goes from dim {dims[lower]} to {dims[upper]}",
                [lower, upper],
            )


def _diamonds(poset: Poset) -> list[tuple[str, str, tuple[str, ...]]]:
    out = []
    for top in poset.elements:
        bottoms: dict[str, list[str]] = {}
        for mid in poset.lower_covers(top):
            for bottom in poset.lower_covers(mid):
                bottoms.setdefault(bottom, []).append(mid)
        out.extend((top, bottom, tuple(mids)) for bottom, mids in bottoms.items())
    return out


def _check_diamonds(poset: Poset, dims: Mapping[str, int]) -> None:
    for top, bottom, mids in _diamonds(poset):
        if len(mids) != 2:
            raise RegularityError(
                "diamond",
                f"Interval [{bottom}, {top}] has {len(mids)} middle cell(s), expected 2",
                [bottom, *mids, top],
            )


def _check_epsilon(c: CellComplex) -> None:
    covers = {(up, lo) for lo, up in c.poset.covers}
    keys = set(c.epsilon)
    if keys != covers:
        odd = sorted({x for pair in keys ^ covers for x in pair})
        raise RegularityError("epsilon", "ε must be defined exactly on covers", odd)
    bad = [pair for pair, s in c.epsilon.items() if s not in (1, -1)]
    if bad:
        raise RegularityError("epsilon", "ε values must be +1 or -1", list(bad[0]))
    for v in c.cells_of_dim(0):
        if c.epsilon[v, EMPTY] != 1:
            raise RegularityError("epsilon", f"ε({v}, {EMPTY}) must be 1", [v, EMPTY])
    for top, bottom, (m1, m2) in c.diamonds():
        total = c.epsilon[top, m1] * c.epsilon[m1, bottom] + (
            c.epsilon[top, m2] * c.epsilon[m2, bottom]
        )
        if total:
            raise RegularityError(
                "epsilon",
                f"ε fails the diamond relation on [{bottom}, {top}]",
                [bottom, m1, m2, top],
            )


def _check_spheres(c: CellComplex) -> None:
    for cell in c.cells:
        n = c.dim(cell)
        if n < 1:
            continue
        sphere = {n - 1: 1}
        for fld in (RATIONALS, _GF2):
            got = cellular_homology(c, c.boundary(cell), fld).reduced
            if got != sphere:
                raise RegularityError(
                    "sphere",
                    f"Boundary of {cell} has reduced homology {got} over {fld.name}, "
                    f"expected that of S^{n - 1}",
                    [cell],
                )


def solve_epsilon(poset: Poset, dims: Mapping[str, int]) -> dict[tuple[str, str], int]:
    """An incidence function on a graded poset with the diamond property.

    Writes ε = (-1)^x and solves x_{σσ1} + x_{σ1σ'} + x_{σσ2} + x_{σ2σ'} = 1 over
    GF(2) for every diamond, with x = 0 on the covers of `@empty`.

    Raises:
        RegularityError: if the system is inconsistent.
    """
    unknowns = [(up, lo) for lo, up in poset.covers if lo != EMPTY]
    index = {pair: k for k, pair in enumerate(unknowns)}
    rows: dict[int, dict[int, Any]] = {}
    rhs: dict[int, dict[int, Any]] = {}
    one = _GF2.element(1)
    diamonds = _diamonds(poset)
    for r, (top, bottom, mids) in enumerate(diamonds):
        row: dict[int, Any] = {}
        for mid in mids:
            for pair in ((top, mid), (mid, bottom)):
                k = index.get(pair)
                if k is not None:
                    row[k] = row.get(k, _GF2.element(0)) + one
        rows[r] = row
        rhs[r] = {0: one}
    a = from_entries(_GF2, len(diamonds), len(unknowns), rows)
    b = from_entries(_GF2, len(diamonds), 1, rhs)
    try:
        x = solve(a, b)
    except ValueError:
        raise RegularityError(
            "epsilon", "No incidence function exists; input is not a regular complex"
        ) from None
    values = {i: row.get(0) for i, row in entries(x).items()}
    epsilon = {(up, lo): 1 for lo, up in poset.covers if lo == EMPTY}
    for pair, k in index.items():
        epsilon[pair] = -1 if values.get(k) else 1
    LOGGER.debug("Solved ε on %d covers from %d diamonds", len(unknowns), len(diamonds))
    return epsilon


# ----- #  Cellular (co)homology  # ----- #


def cochain_complex(
    c: CellComplex, cells: Iterable[str], fld: FieldSpec, *, augmented: bool
) -> VectorComplex:
    """Cellular cochains on `cells` with coboundary coefficients ε.

    `@empty` contributes a generator in degree -1 only when `augmented` is set.
    """
    chosen = set(cells)
    members = [x for x in c.cells if x in chosen and (augmented or x != EMPTY)]
    by_dim: dict[int, list[str]] = {}
    for x in members:
        by_dim.setdefault(c.dim(x), []).append(x)
    position = {x: k for cells_i in by_dim.values() for k, x in enumerate(cells_i)}
    diffs = {}
    for i, sources in by_dim.items():
        targets = by_dim.get(i + 1)
        if not targets:
            continue
        dod: dict[int, dict[int, Any]] = {}
        for x in sources:
            for y in c.poset.upper_covers(x):
                if y in position and c.dim(y) == i + 1:
                    dod.setdefault(position[y], {})[position[x]] = fld.element(
                        c.incidence(y, x)
                    )
        diffs[i] = from_entries(fld, len(targets), len(sources), dod)
    return VectorComplex(fld, {i: len(v) for i, v in by_dim.items()}, diffs)


def cellular_homology(
    c: CellComplex, region: Region, fld: FieldSpec, compact_support: bool = False
) -> HomologyGroups:
    """Betti numbers of a subcomplex, or compactly supported Betti numbers of a filter.

    Over a field the cochain model gives the homology dimensions of a subcomplex.
    For an order filter the restricted cochains compute H_c of the open set.

    Raises:
        InvalidInputError: for an order filter without `compact_support`.
    """
    if region.is_open and not compact_support:
        raise InvalidInputError(
            "Open regions need compact support; use open_cohomology for H(U)"
        )
    betti = complex_cohomology(cochain_complex(c, region.cells, fld, augmented=False))
    reduced = complex_cohomology(cochain_complex(c, region.cells, fld, augmented=True))
    return HomologyGroups(betti, reduced)


def relative_cohomology(c: CellComplex, sub: Region, fld: FieldSpec) -> dict[int, int]:
    """H^i(Σ, sub) from the cochains on the cells outside the subcomplex `sub`.

    `@empty` counts as a cochain when it lies outside `sub`, so an empty `sub`
    gives the reduced cohomology of the whole space.
    """
    if sub.is_open:
        raise InvalidInputError("Relative cohomology needs a subcomplex")
    outside = [x for x in c.cells if x not in sub.cells]
    return complex_cohomology(cochain_complex(c, outside, fld, augmented=True))


def read_facets(path: str | Path) -> list[list[str]]:
    """Parse a facet file: one facet per line, whitespace-separated, `#` comments.

    Raises:
        InvalidInputError: if the file cannot be read.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InvalidInputError(f"Cannot read facet file {path}: {exc}") from exc
    facets = []
    for line in text.splitlines():
        body = line.split("#", 1)[0].split()
        if body:
            facets.append(body)
    return facets


def load_complex(path: str | Path) -> CellComplex:
    """Load a complex, choosing the format by suffix: `.json` poset file, else facets."""
    if str(path).endswith(".json"):
        return CellComplex.from_poset_file(path)
    return CellComplex.from_facets(read_facets(path))


def sorted_cells(c: CellComplex, cells: Sequence[str]) -> list[str]:
    """`cells` in the canonical order of `c`."""
    chosen = set(cells)
    return [x for x in c.cells if x in chosen]
