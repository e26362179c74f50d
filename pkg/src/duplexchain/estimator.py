"""scikit-learn style wrappers so the simulator composes with pipelines.

Both transformers take ``X`` with four columns (theta1, phi1, theta2, phi2),
one row per pair of sender states. ``fit`` only validates the chain
parameters and warms the mode-table cache; there is nothing to learn.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .chain import ChainConfig, make_qubit
from .fidelity import end_fidelities
from .propagator import mode_table
from .sweep import End, TimeWindow, _evaluate_point, parallel_map

N_FEATURES = 4


class _ChainEstimator(TransformerMixin, BaseEstimator):
    def _fit_chain(self, X):
        self.chain_ = ChainConfig(self.n_sites, self.coupling, self.field, self.field_sign)
        mode_table(self.chain_)
        if X is not None:
            X = check_array(X, dtype=float)
            if X.shape[1] != N_FEATURES:
                raise ValueError(f"expected {N_FEATURES} columns (theta1, phi1, theta2, phi2), "
                                 f"got {X.shape[1]}")
        self.n_features_in_ = N_FEATURES
        return self

    def _validate(self, X):
        check_is_fitted(self, "chain_")
        X = check_array(X, dtype=float)
        if X.shape[1] != N_FEATURES:
            raise ValueError(f"expected {N_FEATURES} columns, got {X.shape[1]}")
        return X


class FidelityTransformer(_ChainEstimator):
    """Maps sender angles to (F_bob, F_alice) at a fixed time ``t``."""

    def __init__(self, n_sites=10, coupling=1.0, field=0.0, field_sign="eq3", t=0.0):
        self.n_sites = n_sites
        self.coupling = coupling
        self.field = field
        self.field_sign = field_sign
        self.t = t

    def fit(self, X=None, y=None):
        return self._fit_chain(X)

    def transform(self, X):
        X = self._validate(X)
        f1, fn = mode_table(self.chain_).end_rows([float(self.t)])
        out = np.empty((len(X), 2))
        for k, (t1, p1, t2, p2) in enumerate(X):
            bob, alice = end_fidelities(f1, fn, make_qubit(t1, p1), make_qubit(t2, p2))
            out[k] = bob[0], alice[0]
        return out

    def get_feature_names_out(self, input_features=None):
        return np.array(["f_bob", "f_alice"], dtype=object)


class FmaxSearch(_ChainEstimator):
    """Maps sender angles to (F_max, tau) for the chosen receiving end."""

    def __init__(self, n_sites=10, coupling=1.0, field=0.0, field_sign="eq3",
                 t_min=10.0, t_max=50.0, coarse_step=0.05, refine_tol=1e-4,
                 end="bob", n_jobs=1):
        self.n_sites = n_sites
        self.coupling = coupling
        self.field = field
        self.field_sign = field_sign
        self.t_min = t_min
        self.t_max = t_max
        self.coarse_step = coarse_step
        self.refine_tol = refine_tol
        self.end = end
        self.n_jobs = n_jobs

    def fit(self, X=None, y=None):
        self._fit_chain(X)
        self.window_ = TimeWindow(self.t_min, self.t_max, self.coarse_step, self.refine_tol)
        self.end_ = End(self.end)
        return self

    def transform(self, X):
        X = self._validate(X)
        points = [(self.chain_, self.window_, self.end_, *map(float, row)) for row in X]
        return np.array(parallel_map(_evaluate_point, points, self.n_jobs), dtype=float).reshape(-1, 2)

    def get_feature_names_out(self, input_features=None):
        return np.array(["f_max", "tau"], dtype=object)
