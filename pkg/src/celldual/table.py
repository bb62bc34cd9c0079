"""The degree-by-cell dimension table every cohomology routine reports."""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass

from celldual.consts import GLOBAL


@dataclass(frozen=True)
class CohomologyTable:
    """Dimensions indexed by degree, then by cell; zero entries are not stored."""

    entries: Mapping[int, Mapping[str, int]]

    @classmethod
    def build(cls, raw: Mapping[int, Mapping[str, int]]) -> CohomologyTable:
        """Normalize a nested mapping, dropping zeros and empty degrees."""
        clean: dict[int, dict[str, int]] = {}
        for degree, row in raw.items():
            kept = {cell: n for cell, n in row.items() if n}
            if kept:
                clean[degree] = kept
        return cls(clean)

    @classmethod
    def scalar(cls, dims: Mapping[int, int]) -> CohomologyTable:
        """A table with the single cell `@global`."""
        return cls.build({i: {GLOBAL: n} for i, n in dims.items()})

    def get(self, degree: int, cell: str = GLOBAL) -> int:
        """Dimension at (degree, cell), zero when absent."""
        return self.entries.get(degree, {}).get(cell, 0)

    @property
    def degrees(self) -> list[int]:
        """Degrees with a nonzero entry, ascending."""
        return sorted(self.entries)

    def column(self, degree: int) -> dict[str, int]:
        """All cells in one degree."""
        return dict(self.entries.get(degree, {}))

    def row(self, cell: str = GLOBAL) -> dict[int, int]:
        """All degrees at one cell."""
        return {i: r[cell] for i, r in sorted(self.entries.items()) if cell in r}

    def nonzero(self) -> Iterator[tuple[int, str, int]]:
        """Every (degree, cell, dimension) entry."""
        for degree in self.degrees:
            for cell, n in self.entries[degree].items():
                yield degree, cell, n

    @property
    def is_zero(self) -> bool:
        """Whether every entry vanishes."""
        return not self.entries

    def to_json(self) -> dict[str, dict[str, int]]:
        """JSON-ready form with string degree keys."""
        return {
            str(i): dict(sorted(self.entries[i].items())) for i in self.degrees
        }
