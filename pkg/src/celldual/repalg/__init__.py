"""Modules over the incidence algebra of a cell complex."""

from celldual.repalg.builders import (
    direct_sum,
    ideal_J,
    injective,
    k_dual,
    k_dual_complex,
    k_dual_map,
    module_from_data,
    parse_module_spec,
    projective,
    projective_sum,
    quotient,
    random_module,
    simple,
    sub_filter,
)
from celldual.repalg.ext import ext, u_ext
from celldual.repalg.hom import HomSpace, hom_from_complex, hom_into_complex, hom_space, u_hom
from celldual.repalg.module import ModuleComplex, ModuleMap, RModule
from celldual.repalg.resolution import (
    GradedResolution,
    InjectiveResolution,
    injective_resolution,
    kernel_submodule,
    min_injective_resolution,
    min_projective_resolution,
    projective_cover,
)

__all__ = [
    "GradedResolution",
    "HomSpace",
    "InjectiveResolution",
    "ModuleComplex",
    "ModuleMap",
    "RModule",
    "direct_sum",
    "ext",
    "hom_from_complex",
    "hom_into_complex",
    "hom_space",
    "ideal_J",
    "injective",
    "injective_resolution",
    "k_dual",
    "k_dual_complex",
    "k_dual_map",
    "kernel_submodule",
    "min_injective_resolution",
    "min_projective_resolution",
    "module_from_data",
    "parse_module_spec",
    "projective",
    "projective_cover",
    "projective_sum",
    "quotient",
    "random_module",
    "simple",
    "sub_filter",
    "u_ext",
    "u_hom",
]
