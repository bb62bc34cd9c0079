"""The dualizing complex, the functor D and the cohomology it computes."""

from celldual.dualize.cohomology import (
    AuslanderReport,
    auslander_report,
    cellular_cochains,
    cellular_compact_cohomology,
    cellular_sheaf_cohomology,
    compact_cohomology,
    gamma_empty,
    local_cohomology,
    open_cohomology,
    sheaf_cohomology,
)
from celldual.dualize.functor import OmegaExt, dualize, ext_against_omega
from celldual.dualize.omega import OmegaComplex, ProductModule, build_omega

__all__ = [
    "AuslanderReport",
    "OmegaComplex",
    "OmegaExt",
    "ProductModule",
    "auslander_report",
    "build_omega",
    "cellular_cochains",
    "cellular_compact_cohomology",
    "cellular_sheaf_cohomology",
    "compact_cohomology",
    "dualize",
    "ext_against_omega",
    "gamma_empty",
    "local_cohomology",
    "open_cohomology",
    "sheaf_cohomology",
]
