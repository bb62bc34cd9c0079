import pytest

from celldual.consts import EMPTY
from celldual.dualize import gamma_empty
from celldual.linalg import RATIONALS, identity, same
from celldual.repalg import (
    ModuleComplex,
    hom_into_complex,
    hom_space,
    ideal_J,
    injective,
    projective,
    random_module,
    simple,
    u_hom,
)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_hom_from_projective(small_complex, seed):
    n = random_module(small_complex, RATIONALS, seed)
    for x in small_complex.cells:
        assert hom_space(projective(small_complex, x, RATIONALS), n).dim == n.dim(x)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_hom_into_injective(small_complex, seed):
    m = random_module(small_complex, RATIONALS, seed)
    for x in small_complex.cells:
        assert hom_space(m, injective(small_complex, x, RATIONALS)).dim == m.dim(x)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_hom_from_simple_at_empty(triangle, seed):
    m = random_module(triangle, RATIONALS, seed)
    gamma = gamma_empty(ModuleComplex.concentrated(m))
    assert hom_space(simple(triangle, EMPTY, RATIONALS), m).dim == gamma.dim(0)


def test_endomorphisms_of_injective(disc2):
    e = injective(disc2, "sigma", RATIONALS)
    assert hom_space(e, e).dim == 1


def test_basis_maps_are_morphisms(triangle):
    m = random_module(triangle, RATIONALS, 5)
    space = hom_space(m, m)
    for f in space.basis:
        f.validate()
    coords = space.coordinates([f.components for f in space.basis])
    assert same(coords, identity(RATIONALS, space.dim))


def test_u_hom_into_injective(disc2):
    m = random_module(disc2, RATIONALS, 3)
    e = injective(disc2, "tau1", RATIONALS)
    dims = u_hom(m, e).dims
    for x in disc2.cells:
        expected = m.dim("tau1") if disc2.poset.leq(x, "tau1") else 0
        assert dims[x] == expected


@pytest.mark.parametrize("sigma", ["1", "2,3", "@empty"])
def test_u_hom_from_projective_is_join(triangle, sigma):
    n = random_module(triangle, RATIONALS, 8)
    dims = u_hom(projective(triangle, sigma, RATIONALS), n).dims
    for tau in triangle.cells:
        join = triangle.poset.join(sigma, tau)
        assert dims[tau] == (n.dim(join) if join is not None else 0)


def test_u_hom_from_ideal_gives_global_sections(simplex2):
    re = projective(simplex2, EMPTY, RATIONALS)
    assert u_hom(ideal_J(simplex2, RATIONALS), re).dim(EMPTY) == 1


def test_u_hom_is_a_module(triangle):
    u_hom(random_module(triangle, RATIONALS, 1), random_module(triangle, RATIONALS, 2)).validate()


def test_hom_into_complex_degrees(triangle):
    m = projective(triangle, "1", RATIONALS)
    vc = hom_into_complex(m, ModuleComplex.concentrated(injective(triangle, "1,2", RATIONALS), 3))
    assert vc.dims == {3: 1}
