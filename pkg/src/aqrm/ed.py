"""Exact diagonalization of the full Hamiltonian in a truncated Fock x spin basis.

``H = a^dagger a + (delta/2) sigma_x + g sigma_z (a + a^dagger) + eta sigma_z``

This is the reference the Born-Oppenheimer solver is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .model import ModelParams
from .numerics import hermite_functions, sym_eigen
from .results import (
    CONVERGENCE_TOL,
    Method,
    SpectrumResult,
    WavefunctionGrid,
    check_grid,
    check_span,
    fix_sign,
)

DEFAULT_FOCK = 250
CONVERGENCE_STEP = 20
ORDERINGS = ("up-first", "interleaved")


@dataclass(frozen=True)
class FockSpinBasis:
    """Product basis ``|n, s>``.

    With the default ``"up-first"`` layout all ``|n, up>`` come first
    (``n = 0 .. n_fock-1``), then all ``|n, down>``. ``"interleaved"``
    alternates up and down for each ``n``; it exists to check that results
    do not depend on the layout.
    """

    n_fock: int
    ordering: str = "up-first"

    def __post_init__(self):
        if isinstance(self.n_fock, bool) or int(self.n_fock) != self.n_fock or self.n_fock < 2:
            raise InvalidInputError(f"n_fock must be an integer >= 2, got {self.n_fock!r}")
        if self.ordering not in ORDERINGS:
            raise InvalidInputError(f"ordering must be one of {ORDERINGS}")
        object.__setattr__(self, "n_fock", int(self.n_fock))

    @property
    def dim(self) -> int:
        return 2 * self.n_fock

    def index(self, n, spin_up: bool):
        n = np.asarray(n)
        if self.ordering == "up-first":
            return n if spin_up else n + self.n_fock
        return 2 * n if spin_up else 2 * n + 1

    def split(self, vector: np.ndarray):
        """Fock coefficients ``(up, down)`` of a state vector."""
        n = np.arange(self.n_fock)
        return vector[self.index(n, True)], vector[self.index(n, False)]


def _full_hamiltonian(delta: float, g: float, eta: float, basis: FockSpinBasis) -> np.ndarray:
    # raw floats so tests can also build the mirror sector eta < 0
    nf = basis.n_fock
    n = np.arange(nf)
    up, dn = basis.index(n, True), basis.index(n, False)
    h = np.zeros((basis.dim, basis.dim))
    h[up, up] = n + eta
    h[dn, dn] = n - eta
    hop = g * np.sqrt(n[1:])
    h[up[:-1], up[1:]] = hop
    h[up[1:], up[:-1]] = hop
    h[dn[:-1], dn[1:]] = -hop
    h[dn[1:], dn[:-1]] = -hop
    h[up, dn] = 0.5 * delta
    h[dn, up] = 0.5 * delta
    return h


def build_full_hamiltonian(params: ModelParams, basis: FockSpinBasis) -> np.ndarray:
    return _full_hamiltonian(params.delta, params.g, params.eta, basis)


def parity_operator(basis: FockSpinBasis) -> np.ndarray:
    """``P = sigma_x exp(i pi a^dagger a)``: swaps spin blocks with sign ``(-1)^n``."""
    n = np.arange(basis.n_fock)
    up, dn = basis.index(n, True), basis.index(n, False)
    p = np.zeros((basis.dim, basis.dim))
    sign = np.where(n % 2 == 0, 1.0, -1.0)
    p[up, dn] = sign
    p[dn, up] = sign
    return p


def parity_commutator_norm(params: ModelParams, n_fock: int = 100) -> float:
    """``||[H, P]||_F / ||H||_F`` in the truncated basis."""
    basis = FockSpinBasis(n_fock)
    h = build_full_hamiltonian(params, basis)
    p = parity_operator(basis)
    return float(np.linalg.norm(h @ p - p @ h) / np.linalg.norm(h))


def _check_k(k, dim):
    if isinstance(k, bool) or int(k) != k or not 1 <= k <= dim:
        raise InvalidInputError(f"k must be an integer in [1, {dim}], got {k!r}")
    return int(k)


def _eigh(params, n_fock, ordering="up-first"):
    basis = FockSpinBasis(n_fock, ordering)
    return basis, sym_eigen(build_full_hamiltonian(params, basis))


def solve_ed(params: ModelParams, n_fock: int = DEFAULT_FOCK, k: int = 8,
             ordering: str = "up-first") -> SpectrumResult:
    """Lowest ``k`` levels of the full model.

    Convergence is judged by re-solving with ``n_fock + 20`` photons.
    """
    basis, dec = _eigh(params, n_fock, ordering)
    k = _check_k(k, basis.dim)
    _, bigger = _eigh(params, basis.n_fock + CONVERGENCE_STEP, ordering)
    delta = abs(float(bigger.values[0] - dec.values[0]))
    return SpectrumResult(
        method=Method.ED,
        params=params,
        branch=None,
        basis_size=basis.n_fock,
        energies=tuple(dec.values[:k]),
        converged=delta < CONVERGENCE_TOL,
        convergence_delta=delta,
    )


def ed_eigenvector(params: ModelParams, n_fock: int, level: int):
    """Fock-space coefficients ``(up, down)`` of one eigenstate."""
    basis, dec = _eigh(params, n_fock)
    if isinstance(level, bool) or int(level) != level or not 0 <= level < basis.dim:
        raise InvalidInputError(f"level must lie in [0, {basis.dim}), got {level!r}")
    return basis.split(dec.vectors[:, int(level)])


def ed_wavefunction(params: ModelParams, n_fock: int, level: int, grid) -> WavefunctionGrid:
    """Project an eigenstate onto position space, spin component by component."""
    xi = check_grid(grid)
    check_span(xi, params)
    c_up, c_down = ed_eigenvector(params, n_fock, level)
    psi = hermite_functions(n_fock - 1, xi)
    up, down = fix_sign(c_up @ psi, c_down @ psi)
    return WavefunctionGrid(xi, up, down, int(level), Method.ED)
