import pytest

from errors import DomainError, UsageError
from frobenius import syzygy
from linalg import PivotPolicy
from mf import proj_sum, zero_mf
from split import compare_with_prediction, is_pseudoprojective, predict_syzygy_split, split_projectives, SplitConfig


def test_predictions(items):
    p = predict_syzygy_split(items["dinfty"])
    assert (p.m, p.stable_size) == ([0, 0, 1], 3)
    p = predict_syzygy_split(items["e6_pseudo"])
    assert (p.m, p.stable_size) == ([0, 0, 3], 3)
    p = predict_syzygy_split(items["e6"])
    assert (p.m, p.stable_size) == ([0, 0, 0], 6)


def test_pseudoprojective(items, R):
    assert is_pseudoprojective(items["e6_pseudo"])
    assert not is_pseudoprojective(items["dinfty"])
    with pytest.raises(UsageError):
        is_pseudoprojective(zero_mf(R, R.parse("x*y"), 2))


def test_split_a_sum_of_projectives(R):
    f = R.parse("x^2*y")
    result = split_projectives(proj_sum([1, 0, 2], f))
    assert result.multiplicities == [1, 0, 2]
    assert result.stable_part.n == 0
    assert result.verify()["valid"]
    assert result.decomposed == proj_sum([1, 0, 2], f)


def test_split_a_shuffled_sum(items):
    x = items["dinfty"]
    p = proj_sum([0, 1, 0], x.f)
    result = split_projectives(p.direct_sum(x).direct_sum(p.shift(1)))
    assert result.multiplicities == [1, 1, 0]
    assert result.stable_part.n == 2
    assert result.verify()["valid"]


def test_unit_entries_without_projective_summand(items):
    x = items["dinfty"]
    result = split_projectives(x)
    assert result.multiplicities == [0, 0, 0]
    assert result.stable_part == x
    assert result.fixpoint_clean
    assert result.verify()["valid"]


@pytest.mark.parametrize("name", ["dinfty", "triple", "pair", "e6", "e6_pseudo"])
def test_syzygy_split_matches_prediction(items, name):
    out = compare_with_prediction(items[name])
    assert out["verified"]
    assert out["multiplicities_match"]
    assert out["stable_size_match"]
    assert out["agrees"]


def test_split_of_syzygy_dinfty(items):
    omega, _ = syzygy(items["dinfty"])
    result = split_projectives(omega)
    assert result.detached == [3]
    assert result.to_dict()["stable_size"] == 3


def test_truncated_mode(items):
    x = items["dinfty"]
    policy = SplitConfig("truncated", 5).policy()
    omega, _ = syzygy(x)
    result = split_projectives(omega, policy)
    assert result.multiplicities == [0, 0, 1]
    assert result.verify()["valid"]
    assert result.to_dict()["mode"] == "truncated"


def test_truncated_precision_below_degree(items):
    with pytest.raises(DomainError):
        split_projectives(items["e6"], PivotPolicy("truncated", 2))
