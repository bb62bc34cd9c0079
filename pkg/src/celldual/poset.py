"""Finite posets: covers, intervals, filters, joins and the Möbius function."""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable, Iterator
from typing import TYPE_CHECKING

import networkx as nx

from celldual.consts import TOP
from celldual.errors import AmbiguousJoinError, InvalidInputError

if TYPE_CHECKING:
    from celldual.cellcomplex import CellComplex

LOGGER = logging.getLogger(__name__)


class Poset:
    """A finite poset presented by irredundant cover relations.

    The order is materialized once as two bitset rows per element (the elements
    above it and the elements below it); every interval query reads those rows.
    """

    def __init__(self, elements: Iterable[str], covers: Iterable[tuple[str, str]]) -> None:
        """Initialize from element ids and (lower, upper) pairs.

        Covers implied by transitivity are dropped with a warning.

        Raises:
            InvalidInputError: on duplicate ids, unknown ids or a cyclic relation.
        """
        self._elements = tuple(elements)
        self._index = {x: i for i, x in enumerate(self._elements)}
        if len(self._index) != len(self._elements):
            dups = sorted(x for x, n in Counter(self._elements).items() if n > 1)
            raise InvalidInputError("Duplicate element ids", dups)

        graph = nx.DiGraph()
        graph.add_nodes_from(self._elements)
        for lower, upper in covers:
            unknown = [x for x in (lower, upper) if x not in self._index]
            if unknown:
                raise InvalidInputError(f"Unknown ids in cover {lower}->{upper}", unknown)
            if lower == upper:
                raise InvalidInputError(f"Cover {lower}->{upper} is a loop", [lower])
            graph.add_edge(lower, upper)
        if not nx.is_directed_acyclic_graph(graph):
            cycle = [u for u, _ in nx.find_cycle(graph)]
            raise InvalidInputError("Cover relation has a cycle", cycle)

        reduced = nx.transitive_reduction(graph)
        dropped = sorted(set(graph.edges) - set(reduced.edges), key=self._pair_key)
        if dropped:
            LOGGER.warning(
                "Dropping %d redundant cover(s): %s",
                len(dropped),
                ", ".join(f"{a}->{b}" for a, b in dropped),
            )

        self._covers = tuple(sorted(reduced.edges, key=self._pair_key))
        self._upper: dict[str, list[str]] = {x: [] for x in self._elements}
        self._lower: dict[str, list[str]] = {x: [] for x in self._elements}
        for lower, upper in self._covers:
            self._upper[lower].append(upper)
            self._lower[upper].append(lower)

        self._topo = tuple(
            nx.lexicographical_topological_sort(reduced, key=self._index.__getitem__)
        )
        self._up = [0] * len(self._elements)
        self._down = [0] * len(self._elements)
        for x in reversed(self._topo):
            i = self._index[x]
            mask = 1 << i
            for u in self._upper[x]:
                mask |= self._up[self._index[u]]
            self._up[i] = mask
        for x in self._topo:
            i = self._index[x]
            mask = 1 << i
            for v in self._lower[x]:
                mask |= self._down[self._index[v]]
            self._down[i] = mask
        self._mobius_rows: dict[str, dict[str, int]] = {}

    def _pair_key(self, pair: tuple[str, str]) -> tuple[int, int]:
        return self._index[pair[1]], self._index[pair[0]]

    def _members(self, mask: int) -> tuple[str, ...]:
        return tuple(x for i, x in enumerate(self._elements) if mask >> i & 1)

    # ----- #  Basic queries  # ----- #

    @property
    def elements(self) -> tuple[str, ...]:
        """Elements in their ingestion order."""
        return self._elements

    @property
    def covers(self) -> tuple[tuple[str, str], ...]:
        """Irredundant (lower, upper) cover pairs."""
        return self._covers

    @property
    def linear_extension(self) -> tuple[str, ...]:
        """Elements sorted so that every element follows everything below it."""
        return self._topo

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self._elements)

    def __contains__(self, x: object) -> bool:
        return x in self._index

    def index(self, x: str) -> int:
        """Position of `x` in `elements`."""
        return self._index[x]

    def upper_covers(self, x: str) -> tuple[str, ...]:
        """Elements covering `x`."""
        return tuple(self._upper[x])

    def lower_covers(self, x: str) -> tuple[str, ...]:
        """Elements covered by `x`."""
        return tuple(self._lower[x])

    def leq(self, x: str, y: str) -> bool:
        """Whether x <= y."""
        return bool(self._up[self._index[x]] >> self._index[y] & 1)

    def up(self, x: str) -> tuple[str, ...]:
        """All y >= x."""
        return self._members(self._up[self._index[x]])

    def down(self, x: str) -> tuple[str, ...]:
        """All y <= x."""
        return self._members(self._down[self._index[x]])

    def interval(self, x: str, y: str) -> tuple[str, ...]:
        """The closed interval [x, y], empty unless x <= y."""
        return self._members(self._up[self._index[x]] & self._down[self._index[y]])

    def minimal(self) -> tuple[str, ...]:
        """Minimal elements."""
        return tuple(x for x in self._elements if not self._lower[x])

    def maximal(self) -> tuple[str, ...]:
        """Maximal elements."""
        return tuple(x for x in self._elements if not self._upper[x])

    # ----- #  Filters and sub-posets  # ----- #

    def filter_witness(self, members: Iterable[str]) -> tuple[str, str] | None:
        """A pair (x, y) with x in `members`, y >= x and y outside, or None for a filter."""
        inside = set(members)
        for x in self._elements:
            if x in inside:
                for y in self.up(x):
                    if y not in inside:
                        return x, y
        return None

    def upward_closure(self, members: Iterable[str]) -> frozenset[str]:
        """The smallest order filter containing `members`."""
        mask = 0
        for x in members:
            mask |= self._up[self._index[x]]
        return frozenset(self._members(mask))

    def downward_closure(self, members: Iterable[str]) -> frozenset[str]:
        """The smallest down-set containing `members`."""
        mask = 0
        for x in members:
            mask |= self._down[self._index[x]]
        return frozenset(self._members(mask))

    def restrict(self, keep: Iterable[str]) -> Poset:
        """The induced sub-poset on `keep`, elements in the original order."""
        kept = set(keep)
        elements = [x for x in self._elements if x in kept]
        order = nx.DiGraph()
        order.add_nodes_from(elements)
        order.add_edges_from(
            (x, y) for x in elements for y in self.up(x) if y != x and y in kept
        )
        return Poset(elements, nx.transitive_reduction(order).edges)

    def opposite(self) -> Poset:
        """The same elements with the order reversed."""
        return Poset(self._elements, [(u, lo) for lo, u in self._covers])

    # ----- #  Möbius function  # ----- #

    def mobius_recursive(self, x: str, y: str) -> int:
        """Möbius value via mu(x, x) = 1 and mu(x, y) = -sum_{x <= z < y} mu(x, z).

        Raises:
            ValueError: if x is not below y.
        """
        if not self.leq(x, y):
            raise ValueError(f"mobius({x}, {y}) needs {x} <= {y}")
        return self._mobius_row(x)[y]

    def _mobius_row(self, x: str) -> dict[str, int]:
        row = self._mobius_rows.get(x)
        if row is not None:
            return row
        row = {}
        above = self._up[self._index[x]]
        for z in self._topo:
            iz = self._index[z]
            if not above >> iz & 1:
                continue
            if z == x:
                row[z] = 1
                continue
            strictly_between = above & self._down[iz] & ~(1 << iz)
            row[z] = -sum(row[w] for w in self._members(strictly_between))
        self._mobius_rows[x] = row
        return row

    # ----- #  Joins  # ----- #

    def _minimal_upper_bounds(self, a: str, b: str) -> tuple[str, ...]:
        common = self._up[self._index[a]] & self._up[self._index[b]]
        return tuple(
            u
            for u in self._members(common)
            if self._down[self._index[u]] & common == 1 << self._index[u]
        )

    def is_meet_semilattice(self) -> tuple[bool, tuple[str, str] | None]:
        """Whether every pair with a common upper bound has a least one.

        Returns:
            The verdict and, when false, the first violating pair in element order.
        """
        for i, a in enumerate(self._elements):
            for b in self._elements[i + 1 :]:
                if len(self._minimal_upper_bounds(a, b)) > 1:
                    return False, (a, b)
        return True, None

    def join(self, a: str, b: str) -> str | None:
        """The least upper bound of a and b, or None when they have no upper bound.

        Raises:
            AmbiguousJoinError: if a and b have several minimal upper bounds.
        """
        bounds = self._minimal_upper_bounds(a, b)
        if len(bounds) > 1:
            raise AmbiguousJoinError(
                f"{a} and {b} have {len(bounds)} minimal upper bounds: {', '.join(bounds)}"
            )
        return bounds[0] if bounds else None

    def maximal_chains(self) -> list[tuple[str, ...]]:
        """Every maximal chain, listed bottom to top."""
        chains: list[tuple[str, ...]] = []

        def extend(chain: tuple[str, ...]) -> None:
            upper = self._upper[chain[-1]]
            if not upper:
                chains.append(chain)
            for u in upper:
                extend((*chain, u))

        for x in self.minimal():
            extend((x,))
        return chains


def adjoin_top(p: Poset, name: str = TOP) -> Poset:
    """A copy of `p` with a fresh maximum covering every maximal element."""
    if name in p:
        raise ValueError(f"Element {name!r} already exists")
    return Poset([*p.elements, name], [*p.covers, *((m, name) for m in p.maximal())])


def order_complex(p: Poset) -> CellComplex:
    """The simplicial complex of chains of `p`; face ids join element ids with '|'."""
    from celldual.cellcomplex import CellComplex

    return CellComplex.from_facets(p.maximal_chains(), separator="|")
