"""Exact linear algebra over the rationals and prime fields.

Every matrix in celldual is a sparse sympy `DomainMatrix` over `QQ` or `GF(p)`.
This module wraps the handful of operations the rest of the package needs:
construction, block assembly, rank, kernels, images, linear solves and the
cohomology of cochain complexes of vector spaces together with induced maps.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field as dataclass_field
from functools import cache
from typing import Any

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from celldual.consts import MAX_PRIME
from celldual.errors import ComplexError

LOGGER = logging.getLogger(__name__)

Matrix = DomainMatrix


@cache
def _domain(prime: int | None) -> Domain:
    return QQ if prime is None else GF(prime)


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: the rationals when `prime` is None, else GF(prime)."""

    prime: int | None = None

    def __post_init__(self) -> None:
        """Reject non-primes and primes outside the supported range."""
        if self.prime is not None and not (
            2 <= self.prime < MAX_PRIME and isprime(self.prime)
        ):
            raise ValueError(f"GF({self.prime}) requires a prime below 2^31")

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Parse `q` for the rationals or `f<p>` for GF(p)."""
        token = text.strip().lower()
        if token in ("q", "qq"):
            return cls()
        if token.startswith("f") and token[1:].isdigit():
            return cls(int(token[1:]))
        raise ValueError(f"Unknown field {text!r}, expected q or f<p>")

    @property
    def name(self) -> str:
        """Short name, the inverse of `parse`."""
        return "q" if self.prime is None else f"f{self.prime}"

    @property
    def domain(self) -> Domain:
        """The sympy domain carrying the arithmetic."""
        return _domain(self.prime)

    def element(self, value: int) -> Any:
        """Convert an integer into a field element."""
        return self.domain.convert(value)

    def random_element(self, rng: random.Random) -> Any:
        """Draw a small random field element."""
        if self.prime is None:
            return self.element(rng.randint(-2, 2))
        return self.element(rng.randrange(self.prime))


RATIONALS = FieldSpec()


# ----- #  Construction  # ----- #


def zeros(fld: FieldSpec, rows: int, cols: int) -> Matrix:
    """The zero matrix of the given shape."""
    return DomainMatrix({}, (rows, cols), fld.domain)


def identity(fld: FieldSpec, n: int) -> Matrix:
    """The n x n identity matrix."""
    one = fld.domain.one
    return DomainMatrix({i: {i: one} for i in range(n)}, (n, n), fld.domain)


def as_int(value: object) -> int:
    """`value` as an int, rejecting bools, floats and strings.

    Raises:
        TypeError: for anything that is not a JSON integer.
    """
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"Expected an integer, got {value!r}")
    return value


def matrix(fld: FieldSpec, rows: Sequence[Sequence[int]], cols: int = 0) -> Matrix:
    """Build a matrix from integer rows; `cols` fixes the width of an empty list.

    Raises:
        TypeError: for rows that are not lists or entries that are not ints.
        ValueError: for ragged rows.
    """
    if isinstance(rows, str | Mapping) or not isinstance(rows, Sequence):
        raise TypeError("Matrix rows must be a list of lists")
    width = len(rows[0]) if rows and isinstance(rows[0], Sequence) else cols
    dom = fld.domain
    dod: dict[int, dict[int, Any]] = {}
    for i, row in enumerate(rows):
        if isinstance(row, str | Mapping) or not isinstance(row, Sequence):
            raise TypeError("Matrix rows must be a list of lists")
        if len(row) != width:
            raise ValueError("Ragged matrix rows")
        if any(isinstance(v, bool) or not isinstance(v, int) for v in row):
            raise TypeError("Matrix entries must be integers")
        converted = {j: dom.convert(v) for j, v in enumerate(row) if v}
        if converted:
            dod[i] = converted
    return DomainMatrix(dod, (len(rows), width), dom)


def from_entries(
    fld: FieldSpec, rows: int, cols: int, dod: Mapping[int, Mapping[int, Any]]
) -> Matrix:
    """Build a matrix from a dict of dicts of field elements, dropping zeros."""
    clean = {}
    for i, row in dod.items():
        kept = {j: v for j, v in row.items() if v}
        if kept:
            clean[i] = kept
    return DomainMatrix(clean, (rows, cols), fld.domain)


def entries(m: Matrix) -> dict[int, dict[int, Any]]:
    """Nonzero entries of `m` as a dict of dicts."""
    return m.to_sparse().to_dod()


def selection(fld: FieldSpec, n: int, indices: Sequence[int]) -> Matrix:
    """The n x len(indices) matrix whose k-th column is the unit vector e_{indices[k]}."""
    one = fld.domain.one
    dod: dict[int, dict[int, Any]] = {}
    for k, i in enumerate(indices):
        dod.setdefault(i, {})[k] = one
    return DomainMatrix(dod, (n, len(indices)), fld.domain)


def block(
    fld: FieldSpec,
    row_sizes: Sequence[int],
    col_sizes: Sequence[int],
    blocks: Mapping[tuple[int, int], Matrix],
) -> Matrix:
    """Assemble a block matrix; absent blocks are zero."""
    row_offsets = _offsets(row_sizes)
    col_offsets = _offsets(col_sizes)
    dod: dict[int, dict[int, Any]] = {}
    for (bi, bj), sub in blocks.items():
        if sub.shape != (row_sizes[bi], col_sizes[bj]):
            raise ValueError(
                f"Block ({bi}, {bj}) has shape {sub.shape}, "
                f"expected {(row_sizes[bi], col_sizes[bj])}"
            )
        for i, row in entries(sub).items():
            target = dod.setdefault(row_offsets[bi] + i, {})
            for j, v in row.items():
                target[col_offsets[bj] + j] = v
    return from_entries(fld, sum(row_sizes), sum(col_sizes), dod)


def hstack(fld: FieldSpec, rows: int, mats: Sequence[Matrix]) -> Matrix:
    """Concatenate matrices with `rows` rows side by side."""
    return block(
        fld, [rows], [m.shape[1] for m in mats], {(0, k): m for k, m in enumerate(mats)}
    )


def vstack(fld: FieldSpec, cols: int, mats: Sequence[Matrix]) -> Matrix:
    """Stack matrices with `cols` columns on top of each other."""
    return block(
        fld, [m.shape[0] for m in mats], [cols], {(k, 0): m for k, m in enumerate(mats)}
    )


def row_slice(m: Matrix, start: int, stop: int) -> Matrix:
    """Rows `start` to `stop` of `m`."""
    dod = {i - start: row for i, row in entries(m).items() if start <= i < stop}
    return DomainMatrix(dod, (stop - start, m.shape[1]), m.domain)


def column_slice(m: Matrix, indices: Sequence[int]) -> Matrix:
    """The columns of `m` at `indices`, in that order."""
    where = {j: k for k, j in enumerate(indices)}
    dod: dict[int, dict[int, Any]] = {}
    for i, row in entries(m).items():
        kept = {where[j]: v for j, v in row.items() if j in where}
        if kept:
            dod[i] = kept
    return DomainMatrix(dod, (m.shape[0], len(indices)), m.domain)


def same(a: Matrix, b: Matrix) -> bool:
    """Whether two matrices have the same shape and entries."""
    return a.shape == b.shape and entries(a) == entries(b)


def _offsets(sizes: Sequence[int]) -> list[int]:
    out, total = [], 0
    for s in sizes:
        out.append(total)
        total += s
    return out


# ----- #  Elimination  # ----- #


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns; the pivot search is first-nonzero."""
    if 0 in m.shape or m.is_zero_matrix:
        return m, ()
    reduced, pivots = m.to_sparse().rref()
    return reduced.to_sparse(), tuple(pivots)


def rank(m: Matrix) -> int:
    """Rank of `m` over its field."""
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> Matrix:
    """A basis of {v : m v = 0}, one vector per column, one per free column of `m`."""
    _, cols = m.shape
    dom = m.domain
    reduced, pivots = rref(m)
    rows = entries(reduced)
    taken = set(pivots)
    free = [j for j in range(cols) if j not in taken]
    dod: dict[int, dict[int, Any]] = {}
    for k, f in enumerate(free):
        dod.setdefault(f, {})[k] = dom.one
        for i, p in enumerate(pivots):
            v = rows.get(i, {}).get(f)
            if v:
                dod.setdefault(p, {})[k] = -v
    return DomainMatrix(dod, (cols, len(free)), dom)


def image_basis(m: Matrix) -> Matrix:
    """The pivot columns of `m`, a basis of its column space."""
    return column_slice(m, rref(m)[1])


def solve(a: Matrix, b: Matrix) -> Matrix:
    """A solution X of a X = b, with free variables set to zero.

    Raises:
        ValueError: if some column of `b` is outside the column space of `a`.
    """
    rows, cols = a.shape
    width = b.shape[1]
    if b.shape[0] != rows:
        raise ValueError(f"Right-hand side has {b.shape[0]} rows, expected {rows}")
    dom = a.domain
    if width == 0 or rows == 0:
        return DomainMatrix({}, (cols, width), dom)
    augmented = block(_field_of(a), [rows], [cols, width], {(0, 0): a, (0, 1): b})
    reduced, pivots = rref(augmented)
    if any(p >= cols for p in pivots):
        raise ValueError("Inconsistent linear system")
    red = entries(reduced)
    dod: dict[int, dict[int, Any]] = {}
    for i, p in enumerate(pivots):
        sol = {j - cols: v for j, v in red.get(i, {}).items() if j >= cols}
        if sol:
            dod[p] = sol
    return DomainMatrix(dod, (cols, width), dom)


def complement_indices(sub: Matrix) -> list[int]:
    """Unit vectors that extend the column span of `sub` to the whole space."""
    n, r = sub.shape
    fld = _field_of(sub)
    augmented = hstack(fld, n, [sub, identity(fld, n)])
    return [p - r for p in rref(augmented)[1] if p >= r]


def _field_of(m: Matrix) -> FieldSpec:
    dom = m.domain
    return RATIONALS if dom == QQ else FieldSpec(int(dom.characteristic()))


# ----- #  Cochain complexes  # ----- #


@dataclass(frozen=True)
class VectorComplex:
    """A bounded cochain complex of vector spaces; `diffs[i]` maps degree i to i + 1."""

    field: FieldSpec
    dims: Mapping[int, int]
    diffs: Mapping[int, Matrix] = dataclass_field(default_factory=dict)

    def __post_init__(self) -> None:
        """Check shapes and d^{i+1} d^i = 0."""
        for i, d in self.diffs.items():
            if d.shape != (self.dim(i + 1), self.dim(i)):
                raise ValueError(
                    f"Differential in degree {i} has shape {d.shape}, "
                    f"expected {(self.dim(i + 1), self.dim(i))}"
                )
        for i, d in self.diffs.items():
            after = self.diffs.get(i + 1)
            if after is not None and not after.matmul(d).is_zero_matrix:
                raise ComplexError(f"d^{i + 1} d^{i} != 0", degree=i)

    def dim(self, degree: int) -> int:
        """Dimension in `degree`."""
        return self.dims.get(degree, 0)

    def differential(self, degree: int) -> Matrix:
        """The differential leaving `degree`, zero if none was given."""
        d = self.diffs.get(degree)
        if d is None:
            return zeros(self.field, self.dim(degree + 1), self.dim(degree))
        return d

    @property
    def degrees(self) -> list[int]:
        """Degrees with a nonzero term, ascending."""
        return sorted(i for i, n in self.dims.items() if n)


def complex_cohomology(c: VectorComplex) -> dict[int, int]:
    """Nonzero cohomology dimensions, dim ker d^i - rank d^{i-1}."""
    ranks = {i: rank(d) for i, d in c.diffs.items()}
    out = {}
    for i in c.degrees:
        h = c.dim(i) - ranks.get(i, 0) - ranks.get(i - 1, 0)
        if h:
            out[i] = h
    return out


@dataclass(frozen=True)
class CohomologyBasis:
    """Coboundaries and cocycle representatives of one cohomology group."""

    field: FieldSpec
    boundaries: Matrix
    representatives: Matrix

    @property
    def dim(self) -> int:
        """Dimension of the cohomology group."""
        return self.representatives.shape[1]

    def coordinates(self, cocycles: Matrix) -> Matrix:
        """Classes of the given cocycles in the basis of representatives."""
        n = self.boundaries.shape[0]
        basis = hstack(self.field, n, [self.boundaries, self.representatives])
        x = solve(basis, cocycles)
        b = self.boundaries.shape[1]
        return row_slice(x, b, b + self.dim)


def cohomology_bases(c: VectorComplex) -> dict[int, CohomologyBasis]:
    """Representatives for every degree of `c`, including zero groups."""
    out = {}
    for i in c.degrees:
        boundaries = image_basis(c.differential(i - 1))
        cycles = kernel_basis(c.differential(i))
        n = c.dim(i)
        stacked = hstack(c.field, n, [boundaries, cycles])
        b = boundaries.shape[1]
        chosen = [p - b for p in rref(stacked)[1] if p >= b]
        out[i] = CohomologyBasis(c.field, boundaries, column_slice(cycles, chosen))
    return out


def induced_map(source: CohomologyBasis, target: CohomologyBasis, f: Matrix) -> Matrix:
    """Matrix of the map on cohomology induced by the cochain-level map `f`."""
    return target.coordinates(f.matmul(source.representatives))
