"""Effective potential of the negative branch and its double-well geometry."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .errors import InvalidInputError, PreconditionError
from .model import SQRT2, Branch, ModelParams, bias_field, epsilon

ROOT_XTOL = 1e-10


def v_eff(params: ModelParams, xi):
    """``xi**2 / 2 + epsilon_-(xi)``."""
    x = np.asarray(xi, dtype=float) if np.ndim(xi) else float(xi)
    return 0.5 * x * x + epsilon(params, Branch.NEGATIVE, x)


def v_eff_derivative(params: ModelParams, xi):
    d = bias_field(params, xi)
    return xi - SQRT2 * params.g * d / np.hypot(d, 0.5 * params.delta)


def v_eff_curvature(params: ModelParams, xi):
    d = bias_field(params, xi)
    r = np.hypot(d, 0.5 * params.delta)
    return 1.0 - 2.0 * params.g ** 2 * (0.5 * params.delta) ** 2 / r ** 3


@dataclass(frozen=True)
class TaylorCoefficients:
    """Expansion ``V_eff(xi) = c0 + c1 xi + c2 xi^2 + c3 xi^3 + c4 xi^4 + ...``."""

    c0: float
    c1: float
    c2: float
    c3: float
    c4: float

    def as_tuple(self) -> tuple:
        return (self.c0, self.c1, self.c2, self.c3, self.c4)

    def __call__(self, xi):
        return np.polynomial.polynomial.polyval(xi, self.as_tuple())

    def to_dict(self) -> dict:
        return {f"c{i}": c for i, c in enumerate(self.as_tuple())}

    @classmethod
    def from_dict(cls, data: dict) -> "TaylorCoefficients":
        return cls(*(float(data[f"c{i}"]) for i in range(5)))


def taylor_coefficients(params: ModelParams) -> TaylorCoefficients:
    """Closed-form Taylor coefficients of ``V_eff`` about ``xi = 0``.

    Raises :class:`PreconditionError` at ``g = 0``, where the formulas are
    singular; the potential is then exactly ``xi**2/2 - sqrt(eta**2 + delta**2/4)``.
    """
    g, delta, eta = params.g, params.delta, params.eta
    if g == 0:
        raise PreconditionError(
            "Taylor coefficients are singular at g = 0; there V_eff = xi^2/2 - sqrt(eta^2 + delta^2/4)"
        )
    s = 2.0 * g * g + params.beta ** 2 * eta * eta
    c0 = -delta / (2.0 * SQRT2 * g) * s ** 0.5
    c1 = -4.0 * g ** 2 * eta / delta * s ** -0.5
    c2 = 0.5 - 4.0 * SQRT2 * g ** 5 / delta * s ** -1.5
    c3 = 64.0 * g ** 8 * eta / delta ** 3 * s ** -2.5
    c4 = (32.0 * SQRT2 * g ** 11 / delta ** 3 - 512.0 * SQRT2 * g ** 11 * eta ** 2 / delta ** 5) * s ** -3.5
    return TaylorCoefficients(c0, c1, c2, c3, c4)


class WellShape(enum.Enum):
    SINGLE = "SingleWell"
    DOUBLE = "DoubleWell"


@dataclass(frozen=True)
class WellReport:
    """Stationary-point geometry of ``V_eff``.

    ``minima`` holds ``(xi, V)`` pairs in ascending ``xi``; ``offset`` is
    ``V(higher minimum) - V(lower minimum)``. ``curvatures`` are ``V''`` at
    the minima (each well's squared local frequency).
    """

    shape: WellShape
    minima: tuple
    barrier: Optional[tuple] = None
    offset: Optional[float] = None
    matched_level: Optional[int] = None
    curvatures: tuple = field(default=())

    @property
    def lower_minimum(self) -> tuple:
        return min(self.minima, key=lambda m: m[1])

    @property
    def higher_minimum(self) -> tuple:
        return max(self.minima, key=lambda m: m[1])

    def to_dict(self) -> dict:
        return {
            "shape": self.shape.value,
            "minima": [list(m) for m in self.minima],
            "barrier": None if self.barrier is None else list(self.barrier),
            "offset": self.offset,
            "matched_level": self.matched_level,
            "curvatures": list(self.curvatures),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "WellReport":
        barrier = data.get("barrier")
        return cls(
            shape=WellShape(data["shape"]),
            minima=tuple(tuple(float(v) for v in m) for m in data["minima"]),
            barrier=None if barrier is None else tuple(float(v) for v in barrier),
            offset=data.get("offset"),
            matched_level=data.get("matched_level"),
            curvatures=tuple(float(c) for c in data.get("curvatures", ())),
        )


def _search_half_width(params: ModelParams) -> float:
    return SQRT2 * params.g + 6.0


def _inflection_points(params: ModelParams) -> list:
    # V'' = 0  <=>  r^3 = g^2 delta^2 / 2 with r = sqrt(d^2 + delta^2/4)
    if params.g == 0:
        return []
    h = 0.5 * params.delta
    r_star = (2.0 * params.g ** 2 * h * h) ** (1.0 / 3.0)
    if r_star <= h:
        return []
    d = math.sqrt(r_star * r_star - h * h)
    return sorted((s * d - params.eta) / (SQRT2 * params.g) for s in (-1.0, 1.0))


def stationary_points(params: ModelParams) -> list:
    """All roots of ``V_eff'`` in ascending order.

    ``V_eff'`` is monotone between its (at most two) inflection points, so
    each monotone piece holds at most one root and is bracketed exactly.
    """
    half = _search_half_width(params)
    edges = [-half] + [x for x in _inflection_points(params) if -half < x < half] + [half]
    f = lambda x: float(v_eff_derivative(params, x))
    roots = []
    for a, b in zip(edges[:-1], edges[1:]):
        fa, fb = f(a), f(b)
        if fa == 0.0:
            root = a
        elif fb == 0.0:
            root = b
        elif fa * fb < 0:
            root = brentq(f, a, b, xtol=ROOT_XTOL, rtol=4 * np.finfo(float).eps)
        else:
            continue
        if not roots or root - roots[-1] > ROOT_XTOL:
            roots.append(root)
    return roots


def find_wells(params: ModelParams) -> WellReport:
    """Locate and classify the minima of ``V_eff``."""
    roots = stationary_points(params)
    points = [(x, float(v_eff(params, x)), float(v_eff_curvature(params, x))) for x in roots]
    minima = [p for p in points if p[2] > 0]
    maxima = [p for p in points if p[2] < 0]
    if len(minima) == 2 and len(maxima) == 1:
        barrier = maxima[0]
        lo, hi = sorted(minima, key=lambda p: p[1])
        # a maximum between two minima lies above both; comparing values instead
        # fails near the onset, where the well depth is below float resolution
        if minima[0][0] < barrier[0] < minima[1][0]:
            return WellReport(
                shape=WellShape.DOUBLE,
                minima=tuple((x, v) for x, v, _ in minima),
                barrier=(barrier[0], barrier[1]),
                offset=hi[1] - lo[1],
                matched_level=matching_condition(params.eta),
                curvatures=tuple(c for _, _, c in minima),
            )
    if not minima:
        # only reachable at an exact fold; fall back to the global sample minimum
        grid = np.linspace(-_search_half_width(params), _search_half_width(params), 4001)
        x = float(grid[np.argmin(v_eff(params, grid))])
        minima = [(x, float(v_eff(params, x)), float(v_eff_curvature(params, x)))]
    lowest = min(minima, key=lambda p: p[1])
    return WellReport(
        shape=WellShape.SINGLE,
        minima=((lowest[0], lowest[1]),),
        curvatures=(lowest[2],),
    )


def matching_condition(eta: float, tolerance: float = 1e-9) -> Optional[int]:
    """Integer ``n >= 1`` with ``|2 eta - n| <= tolerance``, else ``None``.

    When the wells are offset by ``2 eta = n`` quanta, the ground level of
    the higher well lines up with the ``n``-th level of the lower one, and
    ``n`` is the first excited level expected to pair up.
    """
    if not tolerance > 0:
        raise InvalidInputError("tolerance must be positive")
    n = round(2.0 * eta)
    if n >= 1 and abs(2.0 * eta - n) <= tolerance:
        return int(n)
    return None


def _is_double(delta, eta, g) -> bool:
    return find_wells(ModelParams(delta, g, eta)).shape is WellShape.DOUBLE


def double_well_onset(delta: float, eta: float, g_range: tuple, xtol: float = 1e-10) -> float:
    """Coupling at which ``V_eff`` turns from a single into a double well.

    Bisection on the :func:`find_wells` classifier over ``g_range``. At
    ``eta = 0`` the answer is ``sqrt(delta) / 2``.
    """
    lo, hi = (float(v) for v in g_range)
    if not 0 <= lo < hi:
        raise InvalidInputError(f"g_range must be an ascending non-negative interval, got {g_range}")
    d_lo, d_hi = _is_double(delta, eta, lo), _is_double(delta, eta, hi)
    if d_lo == d_hi:
        raise PreconditionError(f"no single/double-well transition in g range [{lo}, {hi}]")
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if _is_double(delta, eta, mid) == d_hi:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class Lobe:
    """One well's share of a wavefunction."""

    lower: float
    upper: float
    mass: float
    nodes: int
    peak: float


def lobe_analysis(wf, split: float, cutoff: float = 1e-3) -> tuple:
    """Split a :class:`~aqrm.results.WavefunctionGrid` at ``split`` (normally
    the barrier) and report mass and interior node count on each side.

    Nodes are sign changes of the dominant spin component, counted only
    across samples whose magnitude exceeds ``cutoff`` times the lobe
    maximum so that tails do not contribute.
    """
    xi, dens = wf.xi, wf.density
    lobes = []
    for mask in (xi < split, xi >= split):
        x = xi[mask]
        if x.size < 2:
            lobes.append(Lobe(float(split), float(split), 0.0, 0, float(split)))
            continue
        comps = (wf.up[mask], wf.down[mask])
        amp = max(comps, key=lambda a: float(np.sum(a * a)))
        big = np.abs(amp) > cutoff * np.abs(amp).max()
        signs = np.sign(amp[big])
        nodes = int(np.count_nonzero(signs[1:] != signs[:-1]))
        lobes.append(Lobe(
            lower=float(x[0]),
            upper=float(x[-1]),
            mass=float(np.trapezoid(dens[mask], x)),
            nodes=nodes,
            peak=float(x[np.argmax(dens[mask])]),
        ))
    return tuple(lobes)


def local_maxima(values: np.ndarray, rel_height: float = 1e-4) -> np.ndarray:
    """Indices of interior local maxima above ``rel_height * max``."""
    v = np.asarray(values)
    idx = np.flatnonzero((v[1:-1] > v[:-2]) & (v[1:-1] >= v[2:])) + 1
    return idx[v[idx] > rel_height * v.max()]
