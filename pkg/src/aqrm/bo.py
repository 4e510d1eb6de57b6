"""Second diagonalization: the scalar problem on one adiabatic branch.

After the spin sector is diagonalized at every ``xi`` and the coupling
between the two branches is dropped, each branch is the one-dimensional
problem ``H0 + epsilon_branch(xi)`` with ``H0 = (-d^2/dxi^2 + xi^2) / 2``.
It is solved in the truncated oscillator basis ``|0>, ..., |N-1>``.

Note that ``H0 = a^dagger a + 1/2``: the branch energies carry the
oscillator zero-point energy, while the Fock-space Hamiltonian used by
:mod:`aqrm.ed` does not. Energies are reported raw; comparisons subtract
:data:`ZERO_POINT`.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError
from .model import Branch, ModelParams, epsilon, spin_components
from .numerics import (
    _cached_projector,
    default_quadrature_order,
    gauss_hermite,
    hermite_functions,
    sym_eigen,
)
from .results import (
    CONVERGENCE_TOL,
    Method,
    SpectrumResult,
    WavefunctionGrid,
    check_grid,
    check_span,
    fix_sign,
)

DEFAULT_BASIS = 120
CONVERGENCE_STEP = 20
ZERO_POINT = 0.5


def _check_basis(n_basis) -> int:
    if isinstance(n_basis, bool) or int(n_basis) != n_basis or n_basis < 2:
        raise InvalidInputError(f"basis size must be an integer >= 2, got {n_basis!r}")
    return int(n_basis)


def build_bo_hamiltonian(params: ModelParams, branch: Branch, n_basis: int,
                         quad_order: int | None = None) -> np.ndarray:
    """Matrix ``(n + 1/2) delta_nm + <n|epsilon_branch|m>`` of size ``n_basis``.

    The potential matrix elements are computed by Gauss-Hermite quadrature
    of order ``max(128, 2 N + 32)`` unless ``quad_order`` is given.
    """
    branch = Branch.parse(branch)
    n_basis = _check_basis(n_basis)
    order = default_quadrature_order(n_basis) if quad_order is None else int(quad_order)
    b = _cached_projector(n_basis, order)
    eps = epsilon(params, branch, gauss_hermite(order).nodes)
    h = b.T @ (eps[:, None] * b)
    h[np.diag_indices(n_basis)] += np.arange(n_basis) + 0.5
    return 0.5 * (h + h.T)


def _eigh(params, branch, n_basis, quad_order):
    return sym_eigen(build_bo_hamiltonian(params, branch, n_basis, quad_order))


def solve_bo(params: ModelParams, branch: Branch = Branch.NEGATIVE, n_basis: int = DEFAULT_BASIS,
             k: int = 8, quad_order: int | None = None) -> SpectrumResult:
    """Lowest ``k`` levels of one branch.

    Convergence is judged by re-solving at ``n_basis + 20`` and comparing
    ground energies.
    """
    branch = Branch.parse(branch)
    n_basis = _check_basis(n_basis)
    if k < 1 or k > n_basis:
        raise InvalidInputError(f"k must lie in [1, {n_basis}], got {k}")
    values = _eigh(params, branch, n_basis, quad_order).values
    bigger = _eigh(params, branch, n_basis + CONVERGENCE_STEP, quad_order).values
    delta = abs(float(bigger[0] - values[0]))
    return SpectrumResult(
        method=Method.BO,
        params=params,
        branch=branch,
        basis_size=n_basis,
        energies=tuple(values[:k]),
        converged=delta < CONVERGENCE_TOL,
        convergence_delta=delta,
    )


def bo_wavefunction(params: ModelParams, branch: Branch, n_basis: int, level: int,
                    grid) -> WavefunctionGrid:
    """Total wavefunction ``phi_branch(xi) * sum_n a_n psi_n(xi)`` on ``grid``.

    ``a`` is the eigenvector of the chosen level. The grid must be ascending
    and cover ``|xi| <= 1.5 sqrt(2) g + 6``.
    """
    branch = Branch.parse(branch)
    n_basis = _check_basis(n_basis)
    if not 0 <= level < n_basis:
        raise InvalidInputError(f"level must lie in [0, {n_basis}), got {level}")
    xi = check_grid(grid)
    check_span(xi, params)
    vec = _eigh(params, branch, n_basis, None).vectors[:, level]
    envelope = vec @ hermite_functions(n_basis - 1, xi)
    s_up, s_down = spin_components(params, branch, xi)
    up, down = fix_sign(s_up * envelope, s_down * envelope)
    return WavefunctionGrid(xi, up, down, level, Method.BO)
