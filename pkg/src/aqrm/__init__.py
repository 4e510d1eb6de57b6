"""Asymmetric quantum Rabi model: Born-Oppenheimer and exact spectra,
effective double-well potential and hidden-symmetry degeneracy analysis."""

from .bo import bo_wavefunction, build_bo_hamiltonian, solve_bo
from .ed import (
    FockSpinBasis,
    build_full_hamiltonian,
    ed_wavefunction,
    parity_commutator_norm,
    solve_ed,
)
from .errors import (
    AQRMError,
    BOValidityWarning,
    EigensolverError,
    InvalidInputError,
    PreconditionError,
    SolverError,
)
from .estimators import BOSpectrum, DegeneracyClassifier, EDSpectrum, TaylorExpansion
from .model import (
    Branch,
    ModelParams,
    SpinVector,
    critical_coupling,
    epsilon,
    spin_eigenvector,
    spin_hamiltonian,
)
from .potential import (
    TaylorCoefficients,
    WellReport,
    WellShape,
    double_well_onset,
    find_wells,
    matching_condition,
    taylor_coefficients,
    v_eff,
)
from .results import Method, SpectrumResult, WavefunctionGrid
from .spectral import (
    DegeneracyReport,
    ScanTable,
    classify_degeneracy,
    compare_methods,
    gaps,
    scan_coupling,
)

__version__ = "0.1.0"
