"""scikit-learn style wrappers so solves and certificates compose with pipelines.

Inputs are permutations given as 1-based rows; a 2-d array holds one per row.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .foolingset import build_fanning, certify, lds, lis, verify_fooling_set
from .solver import SearchBudget, min_partition
from .validation import check_permutation, check_permutations


class TilingSolver(BaseEstimator):
    """Exact minimum tiling.

    ``fit`` solves a single permutation and stores ``min_count_``,
    ``witness_``, ``optimal_`` and ``n_nodes_``.  ``predict`` returns the
    minimum for every row of ``X``.
    """

    def __init__(self, max_nodes=None, max_time=None, fooling_bound=True):
        self.max_nodes = max_nodes
        self.max_time = max_time
        self.fooling_bound = fooling_bound

    def _budget(self):
        return SearchBudget(self.max_nodes, self.max_time)

    def fit(self, X, y=None):
        perm = check_permutation(X)
        res = min_partition(perm, self._budget(), fooling_bound=self.fooling_bound)
        self.perm_ = perm
        self.min_count_ = res.min_count
        self.witness_ = res.witness
        self.optimal_ = res.optimal
        self.n_nodes_ = res.nodes_explored
        self.n_features_in_ = perm.n
        return self

    def predict(self, X):
        perms = check_permutations(X)
        return np.array([min_partition(p, self._budget(), fooling_bound=self.fooling_bound).min_count
                         for p in perms])


class FanningCertifier(TransformerMixin, BaseEstimator):
    """Fooling-set features per permutation.

    ``transform`` maps each row to ``[certificate size, valid before repair,
    LIS length, LDS length]``.  With ``repair=False`` the size is that of the
    raw fanning set.
    """

    feature_names = ("size", "valid", "lis", "lds")

    def __init__(self, repair=True):
        self.repair = repair

    def fit(self, X, y=None):
        perms = check_permutations(X)
        self.n_features_in_ = perms[0].n if perms else 0
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        rows = []
        for perm in check_permutations(X):
            fan = build_fanning(perm)
            valid = verify_fooling_set(perm, fan).valid
            size = certify(perm).size if self.repair else len(fan)
            rows.append((size, int(valid), len(lis(perm)), len(lds(perm))))
        return np.array(rows, dtype=int).reshape(-1, 4)

    def get_feature_names_out(self, input_features=None):
        return np.array(self.feature_names, dtype=object)
