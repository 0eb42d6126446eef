import numpy as np
import pytest

from cover import (
    commutes_with_action,
    eigenspace_decompose,
    find_roots,
    functor_A,
    functor_B,
    functor_B_morphism,
    projector_check,
    psi_iso,
    RootData,
    SigmaModule,
    skew_associativity_check,
    SkewAlgebra,
)
from errors import DomainError, UsageError
from frobenius import Homotopy, null_homotopic_morphism, structure_maps
from linalg import identity
from ring import GF, PolyRing


def test_find_roots():
    assert (find_roots(7, 3).omega, find_roots(7, 3).mu) == (2, 3)
    assert (find_roots(5, 2).omega, find_roots(5, 2).mu) == (4, 2)
    assert find_roots(13, 3).to_dict() == {"p": 13, "d": 3, "omega": 3, "mu": 4}


def test_find_roots_errors():
    with pytest.raises(DomainError):
        find_roots(7, 2)
    with pytest.raises(DomainError):
        find_roots(3, 3)
    with pytest.raises(UsageError):
        find_roots(6, 3)
    with pytest.raises(UsageError):
        find_roots(7, 1)


def test_root_data_is_checked():
    RootData(7, 3, 4, 3)
    with pytest.raises(DomainError):
        RootData(7, 3, 1, 3)
    with pytest.raises(DomainError):
        RootData(7, 3, 2, 2)


def test_skew_relations(R7, rng):
    f = R7.parse("x^3 + y^4")
    skew = SkewAlgebra(R7, f, find_roots(7, 3))
    z, sigma = skew.z(), skew.sigma()
    assert sigma * z == (z * sigma).scale(2)
    assert z * z * z == skew.one().scale(-f)
    assert sigma * sigma * sigma == skew.one()
    assert skew_associativity_check(skew, 200, rng)["valid"]


@pytest.mark.parametrize("p, d", [(5, 2), (7, 3), (13, 3), (13, 6)])
def test_skew_algebra_is_associative(p, d, rng):
    ring = PolyRing(GF(p), ("x", "y"))
    f = ring.parse("x^3 + y^4")
    roots = find_roots(p, d)
    skew = SkewAlgebra(ring, f, roots)
    z, sigma = skew.z(), skew.sigma()
    assert sigma * z == (z * sigma).scale(roots.omega)
    power = skew.one()
    for _ in range(d):
        power = power * z
    assert power == skew.one().scale(-f)
    assert skew_associativity_check(skew, 200, rng)["valid"]


def test_skew_needs_matching_field(R):
    with pytest.raises(UsageError):
        SkewAlgebra(R, R.parse("x*y"), find_roots(7, 3))


@pytest.mark.parametrize("p, d", [(7, 3), (5, 2), (13, 3)])
def test_psi_is_an_isomorphism(p, d):
    ring = PolyRing(GF(p), ("x", "y"))
    check = psi_iso(find_roots(p, d), ring, ring.parse("x^3 + y^4")).check()
    assert check["unit"]
    assert check["valid"]


def cover_items(items):
    yield items["e6"], find_roots(7, 3)
    yield items["dinfty"].change_field(GF(7)), find_roots(7, 3)
    yield items["triple"].change_field(GF(7)), find_roots(7, 3)
    yield items["pair"].change_field(GF(5)), find_roots(5, 2)


def test_B_then_A_is_the_identity(items):
    for x, roots in cover_items(items):
        module = functor_B(x, roots)
        assert module.rank == x.d * x.n
        assert module.check()["valid"]
        eigen = eigenspace_decompose(module)
        assert eigen.ranks == [x.n] * x.d
        assert all(projector_check(eigen).values())
        assert functor_A(module) == x


def test_B_on_morphisms(items):
    x, roots = items["e6"], find_roots(7, 3)
    maps = structure_maps(x)
    assert commutes_with_action(functor_B(x, roots), functor_B(maps.I, roots), functor_B_morphism(maps.lam))


def random_endomorphisms(x, rng, count):
    maps = structure_maps(x)
    for _ in range(count):
        s = Homotopy.random(x, x, rng)
        yield null_homotopic_morphism(x, x, s, maps).compose(maps.lam)


def test_B_preserves_composition(items, rng):
    for x, roots in cover_items(items):
        module = functor_B(x, roots)
        alphas = list(random_endomorphisms(x, rng, 4))
        for alpha, beta in zip(alphas, alphas[1:]):
            assert alpha.verify().valid and beta.verify().valid
            composite = functor_B_morphism(alpha.compose(beta))
            assert composite == functor_B_morphism(alpha) @ functor_B_morphism(beta)
            assert commutes_with_action(module, module, composite)


def test_B_needs_the_cover_field(items):
    with pytest.raises(UsageError):
        functor_B(items["dinfty"], find_roots(7, 3))
    with pytest.raises(UsageError):
        functor_B(items["e6_pair"], find_roots(7, 3))


def test_A_needs_a_diagonal_sigma(items):
    x, roots = items["e6"], find_roots(7, 3)
    module = functor_B(x, roots)
    twisted = SigmaModule(module.ring, module.f, roots, module.zmat, module.zmat)
    with pytest.raises(DomainError):
        functor_A(twisted)


def test_A_needs_equal_eigenblocks(R7):
    roots = find_roots(7, 3)
    module = SigmaModule(R7, R7.parse("x^3 + y^4"), roots, identity(R7, 2), identity(R7, 2))
    with pytest.raises(DomainError):
        functor_A(module)
