"""Ext and uExt by either resolution route."""

from __future__ import annotations

import logging

from celldual.consts import Route
from celldual.errors import NotSemilatticeError
from celldual.linalg import complex_cohomology
from celldual.repalg.hom import hom_from_complex, hom_into_complex
from celldual.repalg.module import RModule
from celldual.repalg.resolution import min_injective_resolution, min_projective_resolution
from celldual.table import CohomologyTable

LOGGER = logging.getLogger(__name__)


def ext(source: RModule, target: RModule, via: str = Route.INJECTIVE) -> dict[int, int]:
    """dim Ext^i_R(M, N), from Hom(M, I•) or from Hom(P•, M)."""
    if via == Route.INJECTIVE:
        vc = hom_into_complex(source, min_injective_resolution(target))
    elif via == Route.PROJECTIVE:
        vc = hom_from_complex(min_projective_resolution(source).as_complex(), target)
    else:
        raise ValueError(f"Unknown route {via!r}")
    return complex_cohomology(vc)


def u_ext(
    source: RModule,
    target: RModule,
    via: str = Route.INJECTIVE,
    *,
    override: bool = False,
) -> CohomologyTable:
    """uExt^i(M, N)_σ for every cell σ.

    The injective route computes H(Hom(M_{>=σ}, I•)). The projective route
    computes H(Hom(P•_{>=σ}, N)), which agrees with it only on meet-semilattices.

    Raises:
        NotSemilatticeError: for the projective route on a non-semilattice,
            unless `override` is set.
    """
    c = source.complex
    poset = c.poset
    raw: dict[int, dict[str, int]] = {}
    if via == Route.INJECTIVE:
        resolution = min_injective_resolution(target)
        for x in c.cells:
            vc = hom_into_complex(source.restrict(poset.up(x)), resolution)
            for i, n in complex_cohomology(vc).items():
                raw.setdefault(i, {})[x] = n
    elif via == Route.PROJECTIVE:
        ok, witness = poset.is_meet_semilattice()
        if not ok:
            if not override:
                raise NotSemilatticeError(
                    "The projective route needs a meet-semilattice", witness or ()
                )
            LOGGER.warning("Projective route forced on a non-semilattice: %s", witness)
        resolution = min_projective_resolution(source).as_complex()
        for x in c.cells:
            vc = hom_from_complex(resolution.restrict(poset.up(x)), target)
            for i, n in complex_cohomology(vc).items():
                raw.setdefault(i, {})[x] = n
    else:
        raise ValueError(f"Unknown route {via!r}")
    return CohomologyTable.build(raw)
