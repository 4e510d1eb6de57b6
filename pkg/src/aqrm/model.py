"""Model parameters and the analytic diagonalization of the spin sector.

At fixed position ``xi`` the spin part of the Hamiltonian is the real
symmetric 2x2 matrix::

    [[ d(xi),  delta/2 ],
     [ delta/2, -d(xi) ]],      d(xi) = sqrt(2) * g * xi + eta

whose eigenvalues ``+/- sqrt(d**2 + delta**2/4)`` are the two adiabatic
surfaces. All energies are in units of the mode frequency.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InvalidInputError

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless parameters of the asymmetric Rabi Hamiltonian.

    Parameters
    ----------
    delta : float
        Two-level splitting, must be positive.
    g : float
        Spin-oscillator coupling, non-negative.
    eta : float
        Bias (asymmetry), non-negative. Negative bias maps onto positive bias
        by ``xi -> -xi`` together with a spin flip, so it is not accepted.
    """

    delta: float
    g: float
    eta: float = 0.0

    def __post_init__(self):
        for name in ("delta", "g", "eta"):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise InvalidInputError(f"{name} must be a real number, got {value!r}") from None
            if not math.isfinite(value):
                raise InvalidInputError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        if self.delta <= 0:
            raise InvalidInputError(f"delta must be > 0, got {self.delta}")
        if self.g < 0:
            raise InvalidInputError(f"g must be >= 0, got {self.g}")
        if self.eta < 0:
            raise InvalidInputError(
                f"eta must be >= 0, got {self.eta} (use the mirror-equivalent positive value)"
            )

    @property
    def beta(self) -> float:
        return 2.0 * SQRT2 * self.g / self.delta

    @property
    def g_c(self) -> float:
        """Coupling scale used to normalize the coupling axis."""
        return critical_coupling(self.delta)

    @property
    def g_over_gc(self) -> float:
        return self.g / self.g_c

    def with_g(self, g: float) -> "ModelParams":
        return ModelParams(self.delta, g, self.eta)

    def with_eta(self, eta: float) -> "ModelParams":
        return ModelParams(self.delta, self.g, eta)

    def to_dict(self) -> dict:
        return {"delta": self.delta, "g": self.g, "eta": self.eta}

    @classmethod
    def from_dict(cls, data: dict) -> "ModelParams":
        return cls(data["delta"], data["g"], data["eta"])


def critical_coupling(delta: float) -> float:
    """``sqrt(1 + sqrt(1 + delta**2 / 16))``."""
    return math.sqrt(1.0 + math.sqrt(1.0 + delta * delta / 16.0))


class Branch(enum.Enum):
    """Adiabatic spin branch. The physics of interest lives on ``NEGATIVE``."""

    NEGATIVE = "negative"
    POSITIVE = "positive"

    @property
    def sign(self) -> int:
        return -1 if self is Branch.NEGATIVE else 1

    @classmethod
    def parse(cls, value) -> "Branch":
        if isinstance(value, cls):
            return value
        aliases = {"neg": cls.NEGATIVE, "-": cls.NEGATIVE, "pos": cls.POSITIVE, "+": cls.POSITIVE}
        key = str(value).lower()
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise InvalidInputError(f"unknown branch {value!r}") from None


class SpinVector(NamedTuple):
    up: float
    down: float


def bias_field(params: ModelParams, xi):
    """Diagonal entry ``d(xi) = sqrt(2) g xi + eta`` of the spin matrix."""
    if np.ndim(xi):
        return SQRT2 * params.g * np.asarray(xi, dtype=float) + params.eta
    return SQRT2 * params.g * float(xi) + params.eta


def spin_hamiltonian(params: ModelParams, xi: float) -> np.ndarray:
    d = bias_field(params, float(xi))
    h = 0.5 * params.delta
    return np.array([[d, h], [h, -d]])


def epsilon(params: ModelParams, branch: Branch, xi):
    """Adiabatic surface ``+/- sqrt(d(xi)**2 + delta**2/4)``.

    Written through ``d(xi)`` rather than through ``beta`` so that ``g = 0``
    is regular. Accepts scalars or arrays.
    """
    branch = Branch.parse(branch)
    d = bias_field(params, xi)
    return branch.sign * np.hypot(d, 0.5 * params.delta)


def _half_angles(params: ModelParams, xi):
    # mixing angle theta in (0, pi): cos(theta) = d/r, sin(theta) = (delta/2)/r
    theta = np.arctan2(0.5 * params.delta, bias_field(params, xi))
    return np.cos(0.5 * theta), np.sin(0.5 * theta)


def spin_components(params: ModelParams, branch: Branch, xi):
    """Vectorized ``(up, down)`` eigenvector components of the chosen branch.

    The down component is always positive, which makes the map continuous
    in ``xi``.
    """
    branch = Branch.parse(branch)
    c, s = _half_angles(params, xi)
    if branch is Branch.POSITIVE:
        return c, s
    return -s, c


def spin_eigenvector(params: ModelParams, branch: Branch, xi: float) -> SpinVector:
    up, down = spin_components(params, branch, float(xi))
    return SpinVector(float(up), float(down))
