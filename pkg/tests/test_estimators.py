import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

from holetile.core import Permutation, verify_tiling
from holetile.estimators import FanningCertifier, TilingSolver
from holetile.validation import check_permutation, check_permutations, check_tiling


def test_solver_fit():
    est = TilingSolver().fit([7, 4, 1, 8, 5, 2, 9, 6, 3])
    assert est.min_count_ == 12 and est.optimal_
    assert verify_tiling(est.perm_, est.witness_)
    assert est.n_features_in_ == 9


def test_solver_params_and_clone():
    est = TilingSolver(max_nodes=10, fooling_bound=False)
    assert est.get_params() == {"max_nodes": 10, "max_time": None, "fooling_bound": False}
    twin = clone(est).set_params(max_nodes=None)
    assert twin.max_nodes is None and est.max_nodes == 10


def test_solver_predict_batch():
    X = np.array([[1, 2, 3], [2, 3, 1], [3, 1, 2]])
    assert TilingSolver().predict(X).tolist() == [4, 4, 4]
    assert TilingSolver().predict([[1], [2, 1], [2, 4, 1, 3]]).tolist() == [0, 2, 5]


def test_certifier_transform():
    X = [[7, 4, 1, 8, 5, 2, 9, 6, 3], [1, 2, 3, 4]]
    out = FanningCertifier().fit_transform(X)
    assert out.shape == (2, 4)
    assert out[0].tolist() == [12, 1, 3, 3]
    assert out[1].tolist() == [6, 1, 4, 1]
    assert list(FanningCertifier().get_feature_names_out()) == ["size", "valid", "lis", "lds"]


def test_certifier_requires_fit():
    with pytest.raises(NotFittedError):
        FanningCertifier().transform([[1, 2]])


def test_certifier_in_pipeline():
    pipe = make_pipeline(FanningCertifier(), FunctionTransformer(lambda a: a[:, :1]))
    assert pipe.fit_transform([[2, 1], [1, 2]]).ravel().tolist() == [2, 2]


def test_check_permutation_forms():
    expected = Permutation(3, (2, 3, 1))
    assert check_permutation([2, 3, 1]) == expected
    assert check_permutation(np.array([2, 3, 1])) == expected
    assert check_permutation("2,3,1") == expected
    assert check_permutation({"n": 3, "map": [2, 3, 1]}) == expected
    assert check_permutation(np.array([2.0, 3.0, 1.0])) == expected
    with pytest.raises(ValueError):
        check_permutation([1.5, 2])
    with pytest.raises(ValueError):
        check_permutation([[1, 2]])
    with pytest.raises(ValueError):
        check_permutation([1, 2], n=3)
    with pytest.raises(ValueError):
        check_permutation("a,b")


def test_check_permutations_batches():
    assert len(check_permutations([1, 2, 3])) == 1
    assert len(check_permutations([[1, 2], [2, 1]])) == 2
    assert len(check_permutations([Permutation.identity(2)] * 3)) == 3


def test_check_tiling():
    t = check_tiling({"n": 1, "rects": []})
    assert t.n == 1
    with pytest.raises(ValueError):
        check_tiling(t, n=2)
    with pytest.raises(TypeError):
        check_tiling([1, 2])
