import pytest

from holetile.constructions import (conjectured_min, has_block_structure, reference_labels_9,
                                    reference_tiling_9, residue_permutation, residue_upper_bound)
from holetile.core import Permutation, Rect, verify_tiling
from holetile.solver import SearchBudget, min_partition


def test_residue_fixture_k3():
    assert residue_permutation(3).map == (7, 4, 1, 8, 5, 2, 9, 6, 3)


def test_residue_k1():
    assert residue_permutation(1).map == (1,)


def test_residue_k2_attains_five():
    perm = residue_permutation(2)
    assert min_partition(perm).min_count == 5
    # the published (2,4,1,3) is a mirror image
    assert min_partition(Permutation.from_sequence((2, 4, 1, 3))).min_count == 5


@pytest.mark.parametrize("k", range(1, 51))
def test_residue_is_valid_block_permutation(k):
    perm = residue_permutation(k)
    assert perm.n == k * k
    assert sorted(perm.map) == list(range(1, k * k + 1))
    assert has_block_structure(perm, k)


def test_block_predicate_rejects():
    assert not has_block_structure(Permutation.from_sequence((2, 4, 1, 3)), 2)
    assert not has_block_structure(Permutation.identity(9), 3)
    assert not has_block_structure(Permutation.identity(4), 3)


@pytest.mark.parametrize("k, expected", [(45, 2112), (5, 32), (4, 21), (3, 12), (2, 5)])
def test_conjectured_min(k, expected):
    assert conjectured_min(k) == expected


def test_conjectured_min_domain():
    with pytest.raises(ValueError):
        conjectured_min(1)


def test_reference_tiling():
    perm, tiling = reference_tiling_9()
    assert perm == residue_permutation(3)
    assert len(tiling) == 12
    assert verify_tiling(perm, tiling)
    labels = reference_labels_9()
    assert labels["A"] == Rect(1, 2, 1, 3)
    assert labels["B"] == Rect(1, 3, 8, 9)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_residue_upper_bound(k):
    res = residue_upper_bound(k, SearchBudget(max_time=600))
    assert res.optimal
    assert res.min_count == conjectured_min(k)
    assert verify_tiling(residue_permutation(k), res.witness)
