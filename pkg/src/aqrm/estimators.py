"""scikit-learn style front end.

Each estimator maps a batch of parameter rows ``(delta, g, eta)`` to
features (energies, Taylor coefficients) or labels (degeneracy onset), so
sweeps compose with pipelines, ``get_params``/``set_params`` and
``clone``. Nothing is learned: ``fit`` only validates hyper-parameters and
the input shape.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import bo, ed, spectral
from ._validation import (
    PARAM_COLUMNS,
    check_params_array,
    check_positive_float,
    check_positive_int,
    rows_to_params,
)
from .model import Branch
from .potential import taylor_coefficients


class _ParamsEstimator(BaseEstimator):
    def _validate_hyperparams(self):
        pass

    def fit(self, X, y=None):
        X = check_params_array(X)
        self._validate_hyperparams()
        self.n_features_in_ = X.shape[1]
        self.feature_names_in_ = np.array(PARAM_COLUMNS, dtype=object)
        return self

    def _rows(self, X):
        check_is_fitted(self, "n_features_in_")
        return rows_to_params(X)


class BOSpectrum(TransformerMixin, _ParamsEstimator):
    """Lowest ``n_levels`` energies of one Born-Oppenheimer branch per row.

    Parameters
    ----------
    n_levels : int, default=8
    n_basis : int, default=120
        Oscillator basis size.
    branch : {"negative", "positive"}, default="negative"
    subtract_zero_point : bool, default=False
        Shift by -1/2 so the energies share the zero of :class:`EDSpectrum`.
    """

    def __init__(self, n_levels=8, n_basis=bo.DEFAULT_BASIS, branch="negative",
                 subtract_zero_point=False):
        self.n_levels = n_levels
        self.n_basis = n_basis
        self.branch = branch
        self.subtract_zero_point = subtract_zero_point

    def _validate_hyperparams(self):
        check_positive_int(self.n_basis, "n_basis", 2)
        check_positive_int(self.n_levels, "n_levels")
        Branch.parse(self.branch)

    def transform(self, X):
        shift = bo.ZERO_POINT if self.subtract_zero_point else 0.0
        rows = [
            bo.solve_bo(p, Branch.parse(self.branch), self.n_basis, self.n_levels).energies
            for p in self._rows(X)
        ]
        return np.array(rows).reshape(-1, self.n_levels) - shift

    def get_feature_names_out(self, input_features=None):
        return np.array([f"level_{i}" for i in range(self.n_levels)], dtype=object)


class EDSpectrum(TransformerMixin, _ParamsEstimator):
    """Lowest ``n_levels`` exact-diagonalization energies per row."""

    def __init__(self, n_levels=8, n_fock=ed.DEFAULT_FOCK):
        self.n_levels = n_levels
        self.n_fock = n_fock

    def _validate_hyperparams(self):
        check_positive_int(self.n_fock, "n_fock", 2)
        check_positive_int(self.n_levels, "n_levels")

    def transform(self, X):
        rows = [ed.solve_ed(p, self.n_fock, self.n_levels).energies for p in self._rows(X)]
        return np.array(rows).reshape(-1, self.n_levels)

    def get_feature_names_out(self, input_features=None):
        return np.array([f"level_{i}" for i in range(self.n_levels)], dtype=object)


class TaylorExpansion(TransformerMixin, _ParamsEstimator):
    """Coefficients ``c0..c4`` of the effective potential about ``xi = 0``.

    Rows with ``g = 0`` raise unless ``on_singular="nan"``.
    """

    def __init__(self, on_singular="raise"):
        self.on_singular = on_singular

    def _validate_hyperparams(self):
        if self.on_singular not in ("raise", "nan"):
            raise ValueError("on_singular must be 'raise' or 'nan'")

    def transform(self, X):
        out = []
        for p in self._rows(X):
            if p.g == 0 and self.on_singular == "nan":
                out.append((np.nan,) * 5)
            else:
                out.append(taylor_coefficients(p).as_tuple())
        return np.array(out).reshape(-1, 5)

    def get_feature_names_out(self, input_features=None):
        return np.array([f"c{i}" for i in range(5)], dtype=object)


class DegeneracyClassifier(_ParamsEstimator):
    """Predicts the onset level of adjacent-level pairing, ``-1`` for none.

    Strong coupling (``g >= 1.2 g_c``) is required for every row.
    """

    def __init__(self, threshold=spectral.DEFAULT_THRESHOLD, n_levels=8, n_fock=ed.DEFAULT_FOCK):
        self.threshold = threshold
        self.n_levels = n_levels
        self.n_fock = n_fock

    def _validate_hyperparams(self):
        check_positive_float(self.threshold, "threshold")
        check_positive_int(self.n_levels, "n_levels", 2)
        check_positive_int(self.n_fock, "n_fock", 2)

    def predict(self, X):
        reports = [
            spectral.classify_degeneracy(p, self.n_levels, self.threshold, self.n_fock)
            for p in self._rows(X)
        ]
        return np.array([-1 if r.onset_level is None else r.onset_level for r in reports])
