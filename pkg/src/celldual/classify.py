"""Cohen-Macaulay, Buchsbaum and Gorenstein* decisions and the Möbius table."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

from celldual.cellcomplex import CellComplex, cellular_homology, relative_cohomology
from celldual.consts import EMPTY, TOP
from celldual.dualize import OmegaExt, build_omega, compact_cohomology, ext_against_omega
from celldual.errors import InvariantViolation
from celldual.linalg import RATIONALS, FieldSpec
from celldual.poset import adjoin_top
from celldual.repalg import projective

LOGGER = logging.getLogger(__name__)

Witness = tuple[int, str, int]  # (degree, cell, dimension)


def _witness_json(witnesses: list[Witness]) -> list[dict[str, Any]]:
    return [{"degree": i, "cell": x, "dim": n} for i, x, n in witnesses]


def _dualizing_table(c: CellComplex, fld: FieldSpec) -> OmegaExt:
    return ext_against_omega(projective(c, EMPTY, fld))


def is_cohen_macaulay(c: CellComplex, fld: FieldSpec) -> tuple[bool, list[Witness]]:
    """Whether H^i(D(Re_∅)) vanishes for every i != -d.

    Returns:
        The verdict and the offending (degree, cell, dim) entries.
    """
    d = c.dimension
    table = _dualizing_table(c, fld).table
    witnesses = [(i, x, n) for i, x, n in table.nonzero() if i != -d]
    return not witnesses, witnesses


def is_buchsbaum(c: CellComplex, fld: FieldSpec) -> tuple[bool, list[Witness]]:
    """The Cohen-Macaulay test with the ∅ row ignored."""
    d = c.dimension
    table = _dualizing_table(c, fld).table
    witnesses = [(i, x, n) for i, x, n in table.nonzero() if i != -d and x != EMPTY]
    return not witnesses, witnesses


def is_cohen_macaulay_relative(
    c: CellComplex, fld: FieldSpec
) -> tuple[bool, list[Witness]]:
    """Whether H^i(Σ, del σ) = 0 for every cell σ and every i != d."""
    d = c.dimension
    witnesses = []
    for x in c.cells:
        for i, n in sorted(relative_cohomology(c, c.deletion(x), fld).items()):
            if i != d:
                witnesses.append((i, x, n))
    return not witnesses, witnesses


def link_oracle(c: CellComplex, fld: FieldSpec) -> bool:
    """Whether H̃(lk σ) is k in degree d - dim σ - 1 alone, for every face σ.

    Raises:
        InvalidInputError: for a complex that is not simplicial.
    """
    d = c.dimension
    for x in c.cells:
        reduced = cellular_homology(c, c.link(x), fld).reduced
        if reduced != {d - c.dim(x) - 1: 1}:
            LOGGER.info("Link of %s has reduced homology %s", x, reduced)
            return False
    return True


def is_gorenstein_star(c: CellComplex, fld: FieldSpec) -> tuple[bool, dict[str, Any]]:
    """Whether D(Re_∅) is Re_∅ shifted to degree -d.

    The certificate checks concentration in degree -d, an all-ones dimension
    vector and generation at ∅. Simplicial inputs also run the link oracle,
    which must agree.

    Raises:
        InvariantViolation: if the link oracle disagrees.
    """
    d = c.dimension
    result = _dualizing_table(c, fld)
    concentrated = result.table.degrees == [-d]
    ones = generated = False
    if concentrated:
        top = result.module(-d)
        ones = all(top.dim(x) == 1 for x in c.cells)
        generated = ones and all(not top.act(EMPTY, x).is_zero_matrix for x in c.cells)
    verdict = concentrated and ones and generated
    certificate: dict[str, Any] = {
        "concentrated": concentrated,
        "dims_all_one": ones,
        "generated_at_empty": generated,
    }
    if c.is_simplicial:
        oracle = link_oracle(c, fld)
        certificate["link_oracle"] = oracle
        if oracle != verdict:
            raise InvariantViolation(
                f"Gorenstein* certificate says {verdict}, link oracle says {oracle}"
            )
    return verdict, certificate


def omega_concentration(c: CellComplex, fld: FieldSpec) -> tuple[bool, bool]:
    """Whether H^i(ω•) vanishes off degree -d, everywhere and away from ρ = ∅."""
    omega = build_omega(c, fld, check=True)
    d = c.dimension
    return omega.concentrated(-d), omega.concentrated(-d, sheaf_level=True)


def omega_top_support(c: CellComplex, fld: FieldSpec) -> dict[tuple[str, str], int]:
    """Dimensions of H^{-d}(ω•) at every (τ, ρ) where it is nonzero."""
    d = c.dimension
    return {
        pair: h[-d] for pair, h in build_omega(c, fld).cohomology().items() if -d in h
    }


@dataclass(frozen=True)
class MobiusTable:
    """μ(σ, 1̂) for every cell, computed by recursion and from compact cohomology."""

    recursive: dict[str, int]
    cohomological: dict[str, int]

    @property
    def agree(self) -> bool:
        """Whether both routes give the same table."""
        return self.recursive == self.cohomological

    def to_json(self) -> dict[str, Any]:
        """JSON-ready form."""
        return {
            "agree": self.agree,
            "mobius": dict(sorted(self.recursive.items())),
            "mobius_cohomological": dict(sorted(self.cohomological.items())),
        }


def mobius_hat(c: CellComplex, fld: FieldSpec = RATIONALS) -> MobiusTable:
    """μ(σ, 1̂) on Σ with a top adjoined, two ways.

    Raises:
        InvariantViolation: if the two routes disagree.
    """
    hat = adjoin_top(c.poset, TOP)
    recursive = {x: hat.mobius_recursive(x, TOP) for x in c.cells}
    base = projective(c, EMPTY, fld)
    cohomological = {}
    for x in c.cells:
        if x == EMPTY:
            whole = cellular_homology(c, c.whole(), fld)
            cohomological[x] = whole.reduced_euler_characteristic
            continue
        j = c.dim(x)
        h = compact_cohomology(base, c.open_star(x).cells)
        cohomological[x] = sum((-1) ** (i - j + 1) * n for i, n in h.items() if i >= j)
    table = MobiusTable(recursive, cohomological)
    if not table.agree:
        diff = sorted(x for x in c.cells if recursive[x] != cohomological[x])
        raise InvariantViolation(f"Möbius routes disagree at {', '.join(diff)}")
    return table


def mobius_cells(c: CellComplex) -> dict[tuple[str, str], int]:
    """μ(τ, σ) = (-1)^{dim σ - dim τ} for every τ <= σ, checked against recursion.

    Raises:
        InvariantViolation: on any mismatch.
    """
    poset = c.poset
    out = {}
    for tau in c.cells:
        for sigma in poset.up(tau):
            closed = (-1) ** (c.dim(sigma) - c.dim(tau))
            if poset.mobius_recursive(tau, sigma) != closed:
                raise InvariantViolation(f"μ({tau}, {sigma}) breaks the closed form")
            out[tau, sigma] = closed
    return out


@dataclass(frozen=True)
class ClassificationReport:
    """Every classification verdict for one complex over one field."""

    field: str
    cm: bool
    buchsbaum: bool
    gorenstein_star: bool
    cm_relative: bool
    omega_module_level: bool
    omega_sheaf_level: bool
    mobius: dict[str, int]
    witnesses: list[Witness] = field(default_factory=list)
    certificate: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        """JSON-ready form, keys sorted by the writer."""
        return {
            "field": self.field,
            "cm": self.cm,
            "buchsbaum": self.buchsbaum,
            "gorenstein_star": self.gorenstein_star,
            "cm_relative": self.cm_relative,
            "omega": {
                "module_level": self.omega_module_level,
                "sheaf_level": self.omega_sheaf_level,
            },
            "mobius": dict(sorted(self.mobius.items())),
            "witnesses": _witness_json(self.witnesses),
            "certificate": self.certificate,
        }


def _implies(a: bool, b: bool, what: str) -> None:
    if a and not b:
        raise InvariantViolation(f"{what} fails")


def classify_report(c: CellComplex, fld: FieldSpec) -> ClassificationReport:
    """Run every test and assert the implications between them.

    Raises:
        InvariantViolation: if some implication is broken.
    """
    cm, witnesses = is_cohen_macaulay(c, fld)
    buchsbaum, _ = is_buchsbaum(c, fld)
    gorenstein, certificate = is_gorenstein_star(c, fld)
    relative, _ = is_cohen_macaulay_relative(c, fld)
    module_level, sheaf_level = omega_concentration(c, fld)
    mobius = mobius_hat(c, fld)

    _implies(gorenstein, cm, "Gorenstein* => CM")
    _implies(cm, buchsbaum, "CM => Buchsbaum")
    if cm != relative:
        raise InvariantViolation("CM and the deletion criterion disagree")
    _implies(module_level, cm, "ω concentration => CM")
    _implies(sheaf_level, buchsbaum, "ω sheaf-level concentration => Buchsbaum")
    semilattice, _ = c.poset.is_meet_semilattice()
    if semilattice:
        _implies(cm, module_level, "CM => ω concentration on a semilattice")
        _implies(buchsbaum, sheaf_level, "Buchsbaum => ω sheaf-level concentration")

    LOGGER.info(
        "Classified over %s: cm=%s buchsbaum=%s gorenstein*=%s",
        fld.name,
        cm,
        buchsbaum,
        gorenstein,
    )
    return ClassificationReport(
        field=fld.name,
        cm=cm,
        buchsbaum=buchsbaum,
        gorenstein_star=gorenstein,
        cm_relative=relative,
        omega_module_level=module_level,
        omega_sheaf_level=sheaf_level,
        mobius=mobius.recursive,
        witnesses=witnesses,
        certificate=certificate,
    )
