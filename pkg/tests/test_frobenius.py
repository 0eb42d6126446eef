import numpy as np
import pytest

from errors import UsageError
from frobenius import (
    cok_rank_bookkeeping,
    cosyzygy,
    Homotopy,
    homotopy_from_morphism,
    homotopy_verify,
    identity_homotopy,
    interleave_permutation,
    mapping_cone,
    null_homotopic_morphism,
    omega_signature,
    periodic_resolution,
    pullback,
    pushout,
    structure_maps,
    syzygy,
    syzygy_cosyzygy_iso,
)
from linalg import PivotPolicy, PolyMatrix
from mf import Morphism, proj_P


NAMES = ("dinfty", "triple", "pair", "e6")

DINFTY_SYZYGY = (
    [["0", "-y", "-x*y", "-y^2"], ["-x^2", "x", "0", "x*y"], ["1", "0", "0", "0"], ["0", "1", "0", "0"]],
    [["-1", "0", "-x", "-y"], ["-x", "-y", "-x^2", "0"], ["1", "0", "0", "0"], ["0", "1", "0", "0"]],
    [["-x", "-y", "-x^2*y", "0"], ["0", "x", "x^3", "-x^2"], ["1", "0", "0", "0"], ["0", "1", "0", "0"]],
)


@pytest.mark.parametrize("name", NAMES)
def test_structure_maps_are_valid(items, name):
    x = items[name]
    maps = structure_maps(x)
    for y in (maps.P, maps.I, maps.omega, maps.omega_minus):
        assert y.verify().valid
    assert maps.P.n == maps.I.n == x.d * x.n
    assert maps.omega.n == (x.d - 1) * x.n
    for m in (maps.rho, maps.eps, maps.lam, maps.eta):
        assert m.verify().valid


@pytest.mark.parametrize("name", NAMES)
def test_syzygy_sequences_are_exact(items, name):
    x = items[name]
    _, syz = syzygy(x)
    _, cosyz = cosyzygy(x)
    assert syz.check(rng=np.random.default_rng(1))["exact"]
    assert cosyz.check(rng=np.random.default_rng(1))["exact"]


def test_syzygy_of_a_sum(items):
    x, y = items["dinfty"], items["dinfty"].shift(1)
    omega_sum, _ = syzygy(x.direct_sum(y))
    separate = syzygy(x)[0].direct_sum(syzygy(y)[0])
    order = interleave_permutation(x.d, x.n, y.n)
    for k in range(1, x.d + 1):
        assert omega_sum.phi(k).permute(order, order) == separate.phi(k)


def test_syzygy_of_dinfty_entrywise(items):
    x = items["dinfty"]
    omega, _ = syzygy(x)
    for k, grid in enumerate(DINFTY_SYZYGY, start=1):
        assert omega.phi(k) == PolyMatrix(x.ring, grid)


@pytest.mark.parametrize("name", ("pair", "e6_pair"))
@pytest.mark.parametrize("transform", [syzygy, cosyzygy])
def test_two_factor_syzygy_is_negated_shift(items, name, transform):
    x = items[name]
    y, _ = transform(x)
    assert y.d == 2 and y.n == x.n
    for k in (1, 2):
        assert y.phi(k) == -x.phi(k + 1)


@pytest.mark.parametrize("name", ("pair", "e6_pair"))
def test_two_factor_syzygy_iso_is_the_identity(items, name):
    iso = syzygy_cosyzygy_iso(items[name])
    assert iso.forward == Morphism.identity(iso.forward.source)
    assert all(iso.check().values())


@pytest.mark.parametrize("name", NAMES)
def test_syzygy_cosyzygy_iso(items, name):
    check = syzygy_cosyzygy_iso(items[name]).check()
    assert all(check.values())


@pytest.mark.parametrize("name", ("dinfty", "e6", "e6_pseudo"))
def test_bookkeeping_and_signature(items, name):
    x = items[name]
    assert all(row["mu_omega"] == row["mu_theta"] for row in cok_rank_bookkeeping(x))
    signature = omega_signature(x)
    assert signature["observed"] == signature["expected"]
    assert signature["size"][0] == signature["size"][1]


@pytest.mark.parametrize("of", ["identity", "zero", "lambda"])
def test_mapping_cone(items, of):
    x = items["dinfty"]
    maps = structure_maps(x)
    alpha = {"identity": Morphism.identity(x), "zero": Morphism.zero(x, x), "lambda": maps.lam}[of]
    triangle = mapping_cone(alpha, maps)
    assert triangle.cone.n == alpha.target.n + (x.d - 1) * x.n
    assert all(triangle.check().values())


def test_mapping_cone_needs_a_morphism(items):
    x = items["pair"]
    ring = x.ring
    bad = Morphism(x, x, [PolyMatrix(ring, [[1]]), PolyMatrix(ring, [[2]])])
    with pytest.raises(UsageError):
        mapping_cone(bad)


def test_identity_of_a_projective_is_null_homotopic(R):
    f = R.parse("x^2*y")
    for i in (1, 2, 3):
        one = Morphism.identity(proj_P(i, 3, f))
        assert homotopy_verify(one, identity_homotopy(i, 3, f)).valid


def test_identity_of_dinfty_is_not_null_homotopic_via_zero(items):
    x = items["dinfty"]
    check = homotopy_verify(Morphism.identity(x), Homotopy.zero(x, x))
    assert not check.valid
    assert check.indices == [False, False, False]


@pytest.mark.parametrize("name", ("dinfty", "e6", "pair"))
def test_morphisms_through_I_are_null_homotopic(items, name):
    x = items[name]
    maps = structure_maps(x)
    s = Homotopy.random(x, x, np.random.default_rng(3))
    gamma = null_homotopic_morphism(x, x, s, maps)
    assert gamma.verify().valid
    alpha = gamma.compose(maps.lam)
    assert homotopy_verify(alpha, s).valid
    extracted = homotopy_from_morphism(gamma)
    assert list(extracted.maps) == list(s.maps)


def test_extracted_homotopy_sign(items):
    x = items["dinfty"]
    maps = structure_maps(x)
    s = Homotopy.random(x, x, np.random.default_rng(4))
    gamma = null_homotopic_morphism(x, x, s, maps)
    alpha = gamma.compose(maps.lam)
    assert not alpha.is_zero()
    extracted = homotopy_from_morphism(gamma)
    assert homotopy_verify(alpha, extracted).valid
    assert not homotopy_verify(alpha, Homotopy([-m for m in extracted.maps])).valid


def test_homotopy_shape_errors(items):
    x = items["dinfty"]
    with pytest.raises(UsageError):
        homotopy_verify(Morphism.identity(x), Homotopy(list(Homotopy.zero(x, x).maps)[:2]))


@pytest.mark.parametrize("name", ("dinfty", "pair", "e6"))
def test_pushout_along_lambda(items, name):
    x = items[name]
    maps = structure_maps(x)
    square = pushout(maps.lam, Morphism.identity(x))
    check = square.check()
    assert check["corner_valid"] and check["side_verified"] and check["top_verified"] and check["commutes"]
    assert check["rank"] == maps.I.n


@pytest.mark.parametrize("name", ("dinfty", "pair", "e6"))
def test_pullback_along_rho(items, name):
    x = items[name]
    maps = structure_maps(x)
    square = pullback(maps.rho, Morphism.identity(x))
    check = square.check()
    assert check["corner_valid"] and check["side_verified"] and check["top_verified"] and check["commutes"]
    assert check["rank"] == maps.P.n


def test_pushout_in_truncated_mode(items):
    x = items["dinfty"]
    maps = structure_maps(x)
    check = pushout(maps.lam, Morphism.identity(x), PivotPolicy("truncated", 6)).check()
    assert check["commutes"] and check["corner_valid"]
    assert check["mode"] == "truncated"


def test_pushout_preconditions(items):
    x = items["dinfty"]
    maps = structure_maps(x)
    with pytest.raises(UsageError):
        pushout(Morphism.zero(x, maps.I), Morphism.identity(x))
    with pytest.raises(UsageError):
        pushout(maps.lam, Morphism.identity(items["triple"]))
    with pytest.raises(UsageError):
        pullback(Morphism.zero(maps.P, x), Morphism.identity(x))


@pytest.mark.parametrize("name", ("dinfty", "triple", "e6"))
def test_periodic_resolution(items, name):
    x = items[name]
    check = periodic_resolution(x).check(rng=np.random.default_rng(2))
    assert check["exact"]
    assert check["p_ranks"] == [(x.d - 1) * x.n] * x.d
    assert check["q_ranks"] == [x.n] * x.d
