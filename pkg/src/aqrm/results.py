"""Immutable result containers shared by the two solvers."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InvalidInputError, PreconditionError
from .model import SQRT2, Branch, ModelParams

CONVERGENCE_TOL = 1e-8


class Method(enum.Enum):
    BO = "bo"
    ED = "ed"

    @classmethod
    def parse(cls, value) -> "Method":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


@dataclass(frozen=True)
class SpectrumResult:
    """Lowest eigenenergies of one solve, ascending, in units of the mode frequency.

    ``convergence_delta`` is the change of the ground energy when the basis
    was enlarged once; ``converged`` is true when it is below 1e-8.
    """

    method: Method
    params: ModelParams
    branch: Optional[Branch]
    basis_size: int
    energies: tuple
    converged: bool
    convergence_delta: float

    def __post_init__(self):
        object.__setattr__(self, "energies", tuple(float(e) for e in self.energies))
        if self.converged and not self.convergence_delta < CONVERGENCE_TOL:
            raise ValueError("converged=True requires convergence_delta < 1e-8")

    @property
    def levels(self) -> int:
        return len(self.energies)

    def to_dict(self) -> dict:
        return {
            "method": self.method.value,
            "params": self.params.to_dict(),
            "branch": None if self.branch is None else self.branch.value,
            "basis_size": self.basis_size,
            "energies": list(self.energies),
            "converged": self.converged,
            "convergence_delta": self.convergence_delta,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SpectrumResult":
        branch = data.get("branch")
        return cls(
            method=Method.parse(data["method"]),
            params=ModelParams.from_dict(data["params"]),
            branch=None if branch is None else Branch.parse(branch),
            basis_size=int(data["basis_size"]),
            energies=tuple(data["energies"]),
            converged=bool(data["converged"]),
            convergence_delta=float(data["convergence_delta"]),
        )


@dataclass(frozen=True, eq=False)
class WavefunctionGrid:
    """Spin-up and spin-down amplitudes of one eigenstate sampled on a grid."""

    xi: np.ndarray
    up: np.ndarray
    down: np.ndarray
    level: int
    method: Method
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        arrays = [np.asarray(a, dtype=float) for a in (self.xi, self.up, self.down)]
        if len({a.shape for a in arrays}) != 1 or arrays[0].ndim != 1:
            raise ValueError("xi, up and down must be 1-D arrays of one length")
        for name, arr in zip(("xi", "up", "down"), arrays):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def density(self) -> np.ndarray:
        return self.up ** 2 + self.down ** 2

    def norm(self) -> float:
        """Trapezoid-rule integral of the density."""
        return float(np.trapezoid(self.density, self.xi))

    def __eq__(self, other):
        if not isinstance(other, WavefunctionGrid):
            return NotImplemented
        return (
            self.level == other.level
            and self.method == other.method
            and np.array_equal(self.xi, other.xi)
            and np.array_equal(self.up, other.up)
            and np.array_equal(self.down, other.down)
        )

    def to_dict(self) -> dict:
        return {
            "method": self.method.value,
            "level": self.level,
            "xi": self.xi.tolist(),
            "up": self.up.tolist(),
            "down": self.down.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "WavefunctionGrid":
        return cls(
            xi=np.array(data["xi"], dtype=float),
            up=np.array(data["up"], dtype=float),
            down=np.array(data["down"], dtype=float),
            level=int(data["level"]),
            method=Method.parse(data["method"]),
        )


def fix_sign(up: np.ndarray, down: np.ndarray):
    """Flip the overall sign so the largest-magnitude sample is positive."""
    both = np.concatenate([up, down])
    if both.size and both[np.argmax(np.abs(both))] < 0:
        return -up, -down
    return up, down


def check_grid(grid) -> np.ndarray:
    xi = np.asarray(grid, dtype=float)
    if xi.ndim != 1 or xi.size < 1:
        raise InvalidInputError("grid must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(xi)):
        raise InvalidInputError("grid contains non-finite values")
    if np.any(np.diff(xi) <= 0):
        raise InvalidInputError("grid must be strictly ascending")
    return xi


def required_half_width(params: ModelParams) -> float:
    """Half-width a wavefunction grid must cover: both wells plus tails."""
    return SQRT2 * params.g * 1.5 + 6.0


def check_span(xi: np.ndarray, params: ModelParams) -> None:
    half = required_half_width(params)
    # tolerate round-off from linspace endpoints
    slack = 1e-9 * max(1.0, half)
    if xi[0] > -half + slack or xi[-1] < half - slack:
        raise PreconditionError(
            f"grid [{xi[0]:.6g}, {xi[-1]:.6g}] must span at least [-{half:.6g}, {half:.6g}]"
        )
