"""Numerical kernels: oscillator eigenfunctions, Gauss-Hermite quadrature,
matrix elements in the oscillator basis and a checked symmetric eigensolver.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .errors import EigensolverError, InvalidInputError

HERMITE_MAX_ORDER = 1024
QUADRATURE_MAX_ORDER = 2048
EIGEN_MAX_DIM = 8192

_PI_QUARTER = math.pi ** -0.25
# rescale the recurrence once the mantissa passes 2**500
_RESCALE_AT = 2.0 ** 500


def _hermite_scaled(nmax: int, x: np.ndarray):
    """Normalized oscillator functions up to order ``nmax`` in split form.

    Returns ``(mant, expo)`` of shape ``(nmax + 1, x.size)`` with
    ``psi_n(x) = mant[n] * exp(expo[n])``. The exponent absorbs both the
    Gaussian factor and any rescaling, so nothing overflows even where
    ``exp(-x**2/2)`` alone would underflow.
    """
    x = np.asarray(x, dtype=float).ravel()
    mant = np.empty((nmax + 1, x.size))
    expo = np.empty((nmax + 1, x.size))
    prev = np.zeros_like(x)
    cur = np.full_like(x, _PI_QUARTER)
    e = -0.5 * x * x
    mant[0], expo[0] = cur, e
    for k in range(nmax):
        nxt = x * math.sqrt(2.0 / (k + 1)) * cur - math.sqrt(k / (k + 1)) * prev
        prev, cur = cur, nxt
        big = np.abs(cur) > _RESCALE_AT
        if big.any():
            scale = np.where(big, np.abs(cur), 1.0)
            cur = cur / scale
            prev = prev / scale
            e = e + np.log(scale)
        mant[k + 1], expo[k + 1] = cur, e
    return mant, expo


def _combine(mant, expo):
    with np.errstate(divide="ignore"):
        return np.sign(mant) * np.exp(np.log(np.abs(mant)) + expo)


def _check_order(n, ceiling, name):
    if isinstance(n, bool) or int(n) != n:
        raise InvalidInputError(f"{name} must be an integer, got {n!r}")
    n = int(n)
    if n < 0 or n > ceiling:
        raise InvalidInputError(f"{name} must lie in [0, {ceiling}], got {n}")
    return n


def hermite_functions(nmax: int, xi) -> np.ndarray:
    """Table ``psi_n(xi)`` for ``n = 0..nmax``, shape ``(nmax + 1, len(xi))``."""
    nmax = _check_order(nmax, HERMITE_MAX_ORDER, "order")
    x = np.atleast_1d(np.asarray(xi, dtype=float))
    return _combine(*_hermite_scaled(nmax, x)).reshape((nmax + 1,) + x.shape)


def hermite_function(n: int, xi):
    """L2-normalized harmonic-oscillator eigenfunction ``psi_n(xi)``.

    Uses the normalized three-term recurrence
    ``psi_{k+1} = xi sqrt(2/(k+1)) psi_k - sqrt(k/(k+1)) psi_{k-1}``.
    Accurate for ``n <= 1024``; larger orders are rejected.
    """
    n = _check_order(n, HERMITE_MAX_ORDER, "n")
    scalar = np.ndim(xi) == 0
    x = np.atleast_1d(np.asarray(xi, dtype=float))
    mant, expo = _hermite_scaled(n, x.ravel())
    out = _combine(mant[n], expo[n]).reshape(x.shape)
    return float(out[0]) if scalar else out


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss-Hermite rule for the weight ``exp(-x**2)``.

    ``log_weights`` is kept next to ``weights`` because the outermost
    weights underflow at large orders.
    """

    nodes: np.ndarray
    weights: np.ndarray
    log_weights: np.ndarray

    @property
    def order(self) -> int:
        return self.nodes.size

    @property
    def log_scaled_weights(self) -> np.ndarray:
        """``log(w_i * exp(x_i**2))``, the weights for integrands that already
        carry the Gaussian factor."""
        return self.log_weights + self.nodes ** 2


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    values: np.ndarray
    vectors: np.ndarray


def sym_eigen(a) -> EigenDecomposition:
    """Full eigendecomposition of a real symmetric matrix.

    Eigenvalues come back ascending and the columns of ``vectors`` are
    orthonormal. Backed by LAPACK ``syevd`` through :func:`numpy.linalg.eigh`.

    Raises
    ------
    InvalidInputError
        Non-square, non-finite or non-symmetric input (relative tolerance 1e-12).
    EigensolverError
        The LAPACK driver did not converge or produced non-finite output.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInputError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] > EIGEN_MAX_DIM:
        raise InvalidInputError(f"matrix dimension {a.shape[0]} exceeds {EIGEN_MAX_DIM}")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("matrix contains non-finite entries")
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    asym = float(np.abs(a - a.T).max(initial=0.0))
    if asym > 1e-12 * scale:
        raise InvalidInputError(f"matrix is not symmetric (max |A - A^T| = {asym:.3g})")
    try:
        values, vectors = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"symmetric eigensolver did not converge: {exc}") from exc
    if not (np.all(np.isfinite(values)) and np.all(np.isfinite(vectors))):
        raise EigensolverError("symmetric eigensolver returned non-finite output")
    values.setflags(write=False)
    vectors.setflags(write=False)
    return EigenDecomposition(values, vectors)


@functools.lru_cache(maxsize=64)
def gauss_hermite(order: int) -> QuadratureRule:
    """Gauss-Hermite nodes and weights by the Golub-Welsch construction.

    Nodes are the eigenvalues of the symmetric Jacobi matrix of the Hermite
    recurrence, polished by one Newton step. Weights use the Christoffel
    form ``w_i = 1 / sum_k p_k(x_i)**2`` evaluated in log space; it equals
    the squared first eigenvector component but does not underflow.
    """
    q = _check_order(order, QUADRATURE_MAX_ORDER, "order")
    if q < 1:
        raise InvalidInputError("quadrature order must be >= 1")
    off = np.sqrt(np.arange(1, q) / 2.0)
    jacobi = np.diag(off, 1) + np.diag(off, -1)
    x = np.array(sym_eigen(jacobi).values)

    mant, expo = _hermite_scaled(q, x)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = mant[q] / mant[q - 1] * np.exp(expo[q] - expo[q - 1])
    step = np.where(np.isfinite(ratio), ratio / math.sqrt(2.0 * q), 0.0)
    x = x - step
    x = 0.5 * (x - x[::-1])

    mant, expo = _hermite_scaled(q - 1, x)
    with np.errstate(divide="ignore"):
        log_sq = 2.0 * (np.log(np.abs(mant)) + expo)
    log_scaled = -logsumexp(log_sq, axis=0)
    log_w = log_scaled - x * x
    log_w = 0.5 * (log_w + log_w[::-1])

    for arr in (x, log_w):
        arr.setflags(write=False)
    w = np.exp(log_w)
    w.setflags(write=False)
    return QuadratureRule(x, w, log_w)


def default_quadrature_order(n_basis: int) -> int:
    return max(128, 2 * int(n_basis) + 32)


def oscillator_projector(n_basis: int, rule: QuadratureRule) -> np.ndarray:
    """Matrix ``B[i, n] = sqrt(w~_i) psi_n(x_i)`` of shape ``(Q, n_basis)``.

    ``B.T @ diag(f(x)) @ B`` is then the matrix of ``f`` in the oscillator
    basis. The half-weight is folded into the exponent before combining.
    """
    if n_basis < 1:
        raise InvalidInputError("basis size must be >= 1")
    _check_order(n_basis - 1, HERMITE_MAX_ORDER, "basis order")
    mant, expo = _hermite_scaled(n_basis - 1, rule.nodes)
    return _combine(mant, expo + 0.5 * rule.log_scaled_weights).T


@functools.lru_cache(maxsize=32)
def _cached_projector(n_basis: int, order: int) -> np.ndarray:
    b = oscillator_projector(n_basis, gauss_hermite(order))
    b.setflags(write=False)
    return b


def _evaluate(f, x):
    try:
        values = np.asarray(f(x), dtype=float)
        if values.shape == x.shape:
            return values
    except (TypeError, ValueError):
        pass
    return np.array([float(f(float(xi))) for xi in x])


def basis_matrix(f, n_basis: int, rule: QuadratureRule) -> np.ndarray:
    """Symmetric ``n_basis x n_basis`` matrix ``<n|f(xi)|m>`` by quadrature."""
    b = oscillator_projector(n_basis, rule)
    fx = _evaluate(f, rule.nodes)
    m = b.T @ (fx[:, None] * b)
    return 0.5 * (m + m.T)


def basis_matrix_element(f, n: int, m: int, rule: QuadratureRule) -> float:
    """``<n|f(xi)|m>`` between normalized oscillator states."""
    n = _check_order(n, HERMITE_MAX_ORDER, "n")
    m = _check_order(m, HERMITE_MAX_ORDER, "m")
    b = oscillator_projector(max(n, m) + 1, rule)
    fx = _evaluate(f, rule.nodes)
    return float(np.sum(b[:, n] * fx * b[:, m]))
