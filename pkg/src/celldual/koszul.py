"""Koszulness of the incidence algebra, its quadratic dual and the functors DF, DG."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

from celldual.cellcomplex import CellComplex
from celldual.dualize import dualize
from celldual.linalg import (
    RATIONALS,
    FieldSpec,
    entries,
    from_entries,
    hstack,
    kernel_basis,
    rank,
)
from celldual.repalg import (
    GradedResolution,
    ModuleComplex,
    RModule,
    k_dual_complex,
    min_projective_resolution,
    simple,
)

LOGGER = logging.getLogger(__name__)


def grading_audit(res: GradedResolution) -> bool:
    """Whether every differential is homogeneous of internal degree 0.

    A nonzero component from a summand generated at g to one generated at g'
    must shift the generation degree by deg e_{g,g'} = dim g - dim g'.
    """
    c = res.module.complex
    poset = c.poset
    for i, d in enumerate(res.differentials):
        sources, targets = res.generators[i + 1], res.generators[i]
        src_deg, tgt_deg = res.degrees[i + 1], res.degrees[i]
        for k, g in enumerate(sources):
            col = [s for s, h in enumerate(sources) if poset.leq(h, g)].index(k)
            rows = [t for t, h in enumerate(targets) if poset.leq(h, g)]
            for r, row in entries(d[g]).items():
                if not row.get(col):
                    continue
                t = rows[r]
                if src_deg[k] - tgt_deg[t] != c.dim(g) - c.dim(targets[t]):
                    return False
    return True


@dataclass(frozen=True)
class SimpleResolution:
    """Linearity data of the minimal resolution of one simple module."""

    cell: str
    length: int
    degrees: tuple[tuple[int, ...], ...]
    linear: bool
    homogeneous: bool

    def to_json(self) -> dict[str, Any]:
        """JSON-ready form."""
        return {
            "cell": self.cell,
            "length": self.length,
            "degrees": [list(step) for step in self.degrees],
            "linear": self.linear,
        }


def _resolve_simples(c: CellComplex, fld: FieldSpec) -> list[SimpleResolution]:
    out = []
    for x in c.cells:
        res = min_projective_resolution(simple(c, x, fld), graded=True, shift=c.dim(x))
        out.append(
            SimpleResolution(
                cell=x,
                length=res.length,
                degrees=tuple(tuple(sorted(set(step))) for step in res.degrees),
                linear=res.is_linear(),
                homogeneous=grading_audit(res),
            )
        )
    return out


@dataclass(frozen=True)
class KoszulCertificate:
    """Linear resolutions of every simple, on both sides, plus the quadratic dual check."""

    koszul: bool
    quadratic_self_dual: bool
    per_simple: list[SimpleResolution]
    per_simple_opposite: list[SimpleResolution] = field(default_factory=list)
    relations: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        """JSON-ready form."""
        return {
            "koszul": self.koszul,
            "quadratic_self_dual": self.quadratic_self_dual,
            "per_simple": [s.to_json() for s in self.per_simple],
            "per_simple_opposite": [s.to_json() for s in self.per_simple_opposite],
            "relations": self.relations,
        }


def koszul_certificate(c: CellComplex, fld: FieldSpec) -> KoszulCertificate:
    """Resolve every simple over R and over R^op and check each P^{-i} is generated in degree i."""
    ours = _resolve_simples(c, fld)
    theirs = _resolve_simples(c.opposite(), fld)
    koszul = all(s.linear and s.homogeneous for s in (*ours, *theirs))
    self_dual, relations = quadratic_dual_check(c, fld)
    LOGGER.info("Koszul=%s quadratic self-dual=%s", koszul, self_dual)
    return KoszulCertificate(koszul, self_dual, ours, theirs, relations)


def quadratic_dual_check(
    c: CellComplex, fld: FieldSpec = RATIONALS
) -> tuple[bool, dict[str, Any]]:
    """Check R^! ≅ R^op through the relations in degree 2.

    Length-two paths σ > ρ > τ index R_1 ⊗ R_1, and the reversed paths index its
    dual. I_2 holds one commutativity relation per diamond; its annihilator
    must be spanned by the sums e*_{τ,ρ1} e*_{ρ1,σ} + e*_{τ,ρ2} e*_{ρ2,σ}, and
    e_{σ,τ} -> ε(σ, τ) e*_{τ,σ} must carry I_2 into that annihilator.
    """
    dom = fld.domain
    diamonds = c.diamonds()
    paths: dict[tuple[str, str, str], int] = {}
    for top, bottom, middles in diamonds:
        for mid in middles:
            paths.setdefault((top, mid, bottom), len(paths))
    n = len(paths)

    relations: dict[int, dict[int, Any]] = {}
    expected: dict[int, dict[int, Any]] = {}
    mapped: dict[int, dict[int, Any]] = {}
    for k, (top, bottom, middles) in enumerate(diamonds):
        first, second = (paths[top, mid, bottom] for mid in middles[:2])
        relations.setdefault(first, {})[k] = dom.one
        relations.setdefault(second, {})[k] = -dom.one
        expected.setdefault(first, {})[k] = dom.one
        expected.setdefault(second, {})[k] = dom.one
        for mid, p, sign in zip(middles[:2], (first, second), (dom.one, -dom.one), strict=True):
            twist = fld.element(c.incidence(top, mid) * c.incidence(mid, bottom))
            mapped.setdefault(p, {})[k] = sign * twist
    m = len(diamonds)
    rel = from_entries(fld, n, m, relations)
    annihilator = kernel_basis(rel.transpose())
    span = from_entries(fld, n, m, expected)
    images = from_entries(fld, n, m, mapped)

    r_ann = rank(annihilator)
    r_span = rank(span)
    spans_match = r_ann == r_span == rank(hstack(fld, n, [annihilator, span]))
    inside = rank(hstack(fld, n, [annihilator, images])) == r_ann
    onto = rank(images) == r_ann
    report = {
        "diamonds": m,
        "relations": rank(rel),
        "dual_relations": r_ann,
        "span_match": spans_match,
        "sign_map": inside and onto,
    }
    return spans_match and inside and onto, report


def DF(module: RModule | ModuleComplex) -> ModuleComplex:
    """k-dual of D(M), a complex over the opposite side."""
    return k_dual_complex(dualize(module))


def DG(module: RModule | ModuleComplex) -> ModuleComplex:
    """D of the k-dual, taking the opposite side back to the original."""
    if isinstance(module, RModule):
        module = ModuleComplex.concentrated(module)
    return dualize(k_dual_complex(module))


def grading_tags(mc: ModuleComplex) -> dict[tuple[int, str], int]:
    """Internal degree dim σ - i of each nonzero piece M^i_σ."""
    c = mc.complex
    return {
        (i, x): c.dim(x) - i for i in mc.degrees for x in c.cells if mc.term(i).dim(x)
    }
