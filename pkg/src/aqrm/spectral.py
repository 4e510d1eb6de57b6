"""Parameter sweeps, adjacent gaps, degeneracy onset and BO/ED comparison."""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import bo, ed
from .errors import (
    AQRMError,
    BOValidityWarning,
    InvalidInputError,
    PreconditionError,
    SolverError,
)
from .model import Branch, ModelParams, critical_coupling
from .potential import matching_condition
from .results import Method, SpectrumResult

DEFAULT_THRESHOLD = 1e-3
STRONG_COUPLING_RATIO = 1.2
AXES = ("g", "g_over_gc", "eta")


@dataclass(frozen=True)
class ScanTable:
    """One solver's spectra over a sweep. ``values`` are in ``axis`` units."""

    axis: str
    values: tuple
    results: tuple
    levels: int
    method: Method

    def __post_init__(self):
        if self.axis not in AXES:
            raise InvalidInputError(f"axis must be one of {AXES}")
        if len(self.values) != len(self.results):
            raise ValueError("values and results differ in length")
        if np.any(np.diff(self.values) <= 0):
            raise ValueError("axis values must be strictly ascending")
        if any(r.levels < self.levels for r in self.results):
            raise ValueError("every result must carry at least `levels` energies")

    @property
    def points(self):
        return list(zip(self.values, self.results))

    def energies(self) -> np.ndarray:
        """Array of shape ``(points, levels)``."""
        return np.array([r.energies[: self.levels] for r in self.results])

    def to_dict(self) -> dict:
        return {
            "axis": self.axis,
            "levels": self.levels,
            "method": self.method.value,
            "values": list(self.values),
            "results": [r.to_dict() for r in self.results],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ScanTable":
        return cls(
            axis=data["axis"],
            values=tuple(float(v) for v in data["values"]),
            results=tuple(SpectrumResult.from_dict(r) for r in data["results"]),
            levels=int(data["levels"]),
            method=Method.parse(data["method"]),
        )


@dataclass(frozen=True)
class DegeneracyReport:
    params: ModelParams
    levels: int
    gaps: tuple
    threshold: float
    onset_level: Optional[int]
    predicted_onset: Optional[int]

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "g_over_gc": self.params.g_over_gc,
            "levels": self.levels,
            "gaps": list(self.gaps),
            "threshold": self.threshold,
            "onset_level": self.onset_level,
            "predicted_onset": self.predicted_onset,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DegeneracyReport":
        return cls(
            params=ModelParams.from_dict(data["params"]),
            levels=int(data["levels"]),
            gaps=tuple(float(x) for x in data["gaps"]),
            threshold=float(data["threshold"]),
            onset_level=data["onset_level"],
            predicted_onset=data["predicted_onset"],
        )


def _solve(method: Method, params: ModelParams, k: int, n_basis: int, n_fock: int,
           branch: Branch) -> SpectrumResult:
    if method is Method.BO:
        return bo.solve_bo(params, branch, n_basis, k)
    return ed.solve_ed(params, n_fock, k)


def _methods(method) -> list:
    if str(getattr(method, "value", method)).lower() == "both":
        return [Method.BO, Method.ED]
    return [Method.parse(method)]


def scan_coupling(delta: float, eta: float, g_values, method="ed", k: int = 8,
                  axis: str = "g", n_basis: int = bo.DEFAULT_BASIS,
                  n_fock: int = ed.DEFAULT_FOCK, branch=Branch.NEGATIVE,
                  n_jobs: int = 1) -> dict:
    """Spectra over a coupling sweep.

    ``g_values`` are raw couplings when ``axis="g"`` and multiples of
    ``g_c`` when ``axis="g_over_gc"``. Returns ``{Method: ScanTable}``; with
    ``method="both"`` both solvers run. Points are independent and may be
    spread over ``n_jobs`` threads; results are assembled in input order.
    """
    values = tuple(float(v) for v in g_values)
    if axis not in ("g", "g_over_gc"):
        raise InvalidInputError("coupling scans use axis 'g' or 'g_over_gc'")
    if len(values) < 1 or np.any(np.diff(values) <= 0):
        raise InvalidInputError("g_values must be non-empty and strictly ascending")
    scale = critical_coupling(delta) if axis == "g_over_gc" else 1.0
    params = [ModelParams(delta, v * scale, eta) for v in values]
    branch = Branch.parse(branch)

    tables = {}
    for m in _methods(method):
        def run(i):
            try:
                return _solve(m, params[i], k, n_basis, n_fock, branch)
            except AQRMError as exc:
                raise type(exc)(f"scan point {i} ({axis}={values[i]!r}, {m.value}): {exc}") from exc

        if n_jobs == 1:
            results = [run(i) for i in range(len(values))]
        else:
            with ThreadPoolExecutor(max_workers=n_jobs) as pool:
                results = list(pool.map(run, range(len(values))))
        tables[m] = ScanTable(axis, values, tuple(results), k, m)
    return tables


def gaps(result) -> np.ndarray:
    """Adjacent level spacings ``E[i+1] - E[i]``."""
    energies = np.asarray(getattr(result, "energies", result), dtype=float)
    if energies.size < 2:
        raise InvalidInputError("need at least two energies to form gaps")
    # eigenvalues are sorted; clip round-off on exact degeneracies
    return np.maximum(np.diff(energies), 0.0)


def classify_degeneracy(params: ModelParams, k: int = 8, threshold: float = DEFAULT_THRESHOLD,
                        n_fock: int = ed.DEFAULT_FOCK) -> DegeneracyReport:
    """Lowest level from which adjacent levels pair up, from converged ED gaps.

    Only defined at strong coupling, ``g >= 1.2 g_c``.
    """
    if not threshold > 0:
        raise InvalidInputError("threshold must be positive")
    if params.g < STRONG_COUPLING_RATIO * params.g_c:
        raise PreconditionError(
            f"degeneracy classification needs g >= {STRONG_COUPLING_RATIO} g_c "
            f"(g/g_c = {params.g_over_gc:.4g})"
        )
    result = ed.solve_ed(params, n_fock, k)
    if not result.converged:
        raise SolverError(
            f"ED not converged at n_fock={n_fock} (ground-energy change {result.convergence_delta:.3g})"
        )
    gap = gaps(result)
    below = np.flatnonzero(gap < threshold)
    return DegeneracyReport(
        params=params,
        levels=k,
        gaps=tuple(float(x) for x in gap),
        threshold=float(threshold),
        onset_level=int(below[0]) if below.size else None,
        predicted_onset=matching_condition(params.eta),
    )


def compare_methods(params: ModelParams, k: int = 8, n_basis: int = bo.DEFAULT_BASIS,
                    n_fock: int = ed.DEFAULT_FOCK) -> np.ndarray:
    """``|E_BO,i - 1/2 - E_ED,i|`` for the lowest ``k`` levels.

    The BO branch Hamiltonian contains the oscillator zero-point energy and
    the Fock-space one does not, hence the shift. Emits a
    :class:`BOValidityWarning` for ``delta < 1``, where large differences are
    expected.
    """
    if params.delta < 1:
        warnings.warn(
            f"delta = {params.delta} < 1: the Born-Oppenheimer reduction is not expected to hold",
            BOValidityWarning,
            stacklevel=2,
        )
    e_bo = np.array(bo.solve_bo(params, Branch.NEGATIVE, n_basis, k).energies) - bo.ZERO_POINT
    e_ed = np.array(ed.solve_ed(params, n_fock, k).energies)
    return np.abs(e_bo - e_ed)
