"""Input validation for array-shaped parameter batches."""

from __future__ import annotations

import numpy as np
from sklearn.utils import check_array

from .errors import InvalidInputError
from .model import ModelParams

PARAM_COLUMNS = ("delta", "g", "eta")


def check_params_array(X) -> np.ndarray:
    """Validate an ``(n_samples, 3)`` array of ``(delta, g, eta)`` rows."""
    try:
        X = check_array(X, dtype=np.float64, ensure_2d=True)
    except ValueError as exc:
        raise InvalidInputError(str(exc)) from exc
    if X.shape[1] != len(PARAM_COLUMNS):
        raise InvalidInputError(
            f"expected {len(PARAM_COLUMNS)} columns {PARAM_COLUMNS}, got {X.shape[1]}"
        )
    return X


def rows_to_params(X) -> list:
    return [ModelParams(*row) for row in check_params_array(X)]


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < minimum:
        raise InvalidInputError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def check_positive_float(value, name: str) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InvalidInputError(f"{name} must be a number") from None
    if not np.isfinite(value) or value <= 0:
        raise InvalidInputError(f"{name} must be a positive finite number, got {value}")
    return value
