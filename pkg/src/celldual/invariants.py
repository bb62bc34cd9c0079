"""Cross-checks between independent computations, run on seeded random modules.

Every check takes one module and raises InvariantViolation on a mismatch;
`run_suite` collects the failures instead of stopping at the first.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

from celldual.cellcomplex import CellComplex
from celldual.consts import EMPTY
from celldual.dualize import (
    auslander_report,
    cellular_compact_cohomology,
    cellular_sheaf_cohomology,
    compact_cohomology,
    dualize,
    ext_against_omega,
    local_cohomology,
    sheaf_cohomology,
)
from celldual.errors import InvariantViolation
from celldual.koszul import DF, DG
from celldual.linalg import FieldSpec, complex_cohomology, rank
from celldual.repalg import (
    RModule,
    hom_into_complex,
    hom_space,
    ideal_J,
    injective,
    projective,
    random_module,
    u_ext,
)
from celldual.table import CohomologyTable

LOGGER = logging.getLogger(__name__)

Check = Callable[[RModule], None]


def _expect(got: object, want: object, what: str) -> None:
    if got != want:
        raise InvariantViolation(f"{what}: got {got}, expected {want}")


def _identity_table(module: RModule) -> CohomologyTable:
    return CohomologyTable.build({0: dict(module.dims)})


def check_double_duality(module: RModule) -> None:
    """H(D(D(M))) is M in degree 0, with induced actions of the same rank."""
    twice = dualize(dualize(module))
    _expect(twice.cohomology(), _identity_table(module), "D(D(M)) cohomology")
    h0 = twice.cohomology_module(0)
    for pair, m in module.action.items():
        _expect(rank(h0.action[pair]), rank(m), f"Induced action rank on {pair}")


def check_serre_duality(module: RModule) -> None:
    """dim Ext^i(M, ω•)_∅ = dim H^{1-i}_∅(M)."""
    table = ext_against_omega(module).table
    local = local_cohomology(module)
    degrees = set(table.degrees) | {1 - i for i in local}
    for i in sorted(degrees):
        _expect(table.get(i, EMPTY), local.get(1 - i, 0), f"Serre duality in degree {i}")


def check_open_set(module: RModule) -> None:
    """Ext^i(M, ω•)_σ = H^{-i}_c(U_σ, M†), with both compact routes agreeing."""
    c = module.complex
    table = ext_against_omega(module).table
    for x in c.cells:
        if x == EMPTY:
            continue
        star = c.open_star(x).cells
        compact = compact_cohomology(module, star)
        _expect(compact, cellular_compact_cohomology(module, star), f"H_c(U_{x}) routes")
        row = {-i: n for i, n in table.row(x).items()}
        _expect(row, compact, f"Ext(M, ω)_{x} against H_c(U_{x})")


def check_uhom_route(module: RModule) -> None:
    """H(uHom(M, D(Re_∅)))_σ equals Ext(M, ω•)_σ at every cell."""
    c, fld = module.complex, module.field
    table = ext_against_omega(module).table
    dual = dualize(projective(c, EMPTY, fld))
    raw = {}
    for x in c.cells:
        vc = hom_into_complex(module.restrict(c.poset.up(x)), dual)
        for i, n in complex_cohomology(vc).items():
            raw.setdefault(i, {})[x] = n
    _expect(CohomologyTable.build(raw), table, "uHom(M, D(Re_∅)) route")


def check_j_route(module: RModule) -> None:
    """uExt^i(J, M)_∅ = H^i(X, M†) for i >= 1."""
    c, fld = module.complex, module.field
    row = u_ext(ideal_J(c, fld), module).row(EMPTY)
    sheaf = sheaf_cohomology(module, check=False)
    _expect(
        {i: n for i, n in row.items() if i >= 1},
        {i: n for i, n in sheaf.items() if i >= 1},
        "uExt(J, M) at ∅",
    )


def check_cellular(module: RModule) -> None:
    """The Γ_∅ route and the cellular cochain model give the same H(X, M†)."""
    _expect(
        sheaf_cohomology(module, check=False),
        cellular_sheaf_cohomology(module),
        "Sheaf cohomology routes",
    )


def check_four_term(module: RModule) -> None:
    """0 -> H^0_∅ -> M_∅ -> H^0(X, M†) -> H^1_∅ -> 0 has alternating sum zero."""
    local = local_cohomology(module)
    h0 = cellular_sheaf_cohomology(module).get(0, 0)
    total = local.get(0, 0) - module.dim(EMPTY) + h0 - local.get(1, 0)
    _expect(total, 0, "Four-term alternating sum")


def check_empty_stalk(module: RModule) -> None:
    """With the ∅ stalk removed, H^i(X, M†) = H^{i+1}_∅ in every degree, 0 included."""
    c = module.complex
    cut = module.restrict(x for x in c.cells if x != EMPTY)
    local = local_cohomology(cut)
    _expect(
        cellular_sheaf_cohomology(cut),
        {i - 1: n for i, n in sorted(local.items()) if i >= 1},
        "Sheaf cohomology with M_∅ = 0",
    )


def check_hom_into_injectives(module: RModule) -> None:
    """dim Hom(M, E(σ)) = dim M_σ."""
    c, fld = module.complex, module.field
    for x in c.cells:
        _expect(hom_space(module, injective(c, x, fld)).dim, module.dim(x), f"Hom(M, E({x}))")


def check_auslander(module: RModule) -> None:
    """The grade formula and vanishing pattern of Ext(M, ω•)."""
    if module.is_zero:
        return
    report = auslander_report(module)
    if not report.holds:
        raise InvariantViolation(f"Auslander condition fails: {report}")


def check_df_dg(module: RModule) -> None:
    """H(DG(DF(M))) is M in degree 0."""
    _expect(DG(DF(module)).cohomology(), _identity_table(module), "DG(DF(M)) cohomology")


CHECKS: dict[str, Check] = {
    "double_duality": check_double_duality,
    "serre_duality": check_serre_duality,
    "open_set": check_open_set,
    "uhom_route": check_uhom_route,
    "j_route": check_j_route,
    "cellular": check_cellular,
    "four_term": check_four_term,
    "empty_stalk": check_empty_stalk,
    "hom_into_injectives": check_hom_into_injectives,
    "auslander": check_auslander,
    "df_dg": check_df_dg,
}


@dataclass(frozen=True)
class Failure:
    """One failed check on one seeded module."""

    check: str
    seed: int
    message: str


@dataclass
class SuiteReport:
    """Outcome of `run_suite`."""

    field: str
    seed: int
    trials: int
    runs: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Whether every check passed."""
        return not self.failures

    def to_json(self) -> dict[str, Any]:
        """JSON-ready form."""
        return {
            "field": self.field,
            "seed": self.seed,
            "trials": self.trials,
            "checks": sorted(CHECKS),
            "runs": self.runs,
            "ok": self.ok,
            "failures": [
                {"check": f.check, "seed": f.seed, "message": f.message}
                for f in self.failures
            ],
        }


def run_suite(
    c: CellComplex,
    fld: FieldSpec,
    seed: int = 0,
    trials: int = 5,
    checks: dict[str, Check] | None = None,
) -> SuiteReport:
    """Run every check on `trials` random modules seeded seed, seed + 1, ..."""
    checks = checks or CHECKS
    report = SuiteReport(fld.name, seed, trials)
    for offset in range(trials):
        module_seed = seed + offset
        module = random_module(c, fld, module_seed)
        LOGGER.info("Trial %d/%d: %r", offset + 1, trials, module)
        for name, check in checks.items():
            report.runs += 1
            try:
                check(module)
            except InvariantViolation as exc:
                LOGGER.error("Check %s failed on seed %d: %s", name, module_seed, exc)
                report.failures.append(Failure(name, module_seed, str(exc)))
    return report
