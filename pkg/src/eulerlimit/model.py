"""Closure, flux and characteristic speeds of the system

    rho_t + (rho u)_x = 0,
    u_t + (u^2/2 + p(rho))_x = 0,      p(rho) = (gamma - 1)/4 * rho^(gamma - 1).

Both ``rho`` and ``u`` are the conserved variables. Functions accept Python
floats or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

GAMMA_MAX = 3.0


def power(base, exponent):
    """``base**exponent`` evaluated as ``exp(exponent * ln(base))``.

    Every non-integer power in the package goes through here so that curve
    evaluations agree bitwise between modules. ``base == 0`` gives 0 for a
    positive exponent.
    """
    if isinstance(base, np.ndarray):
        with np.errstate(divide="ignore"):
            return np.exp(exponent * np.log(base))
    if base == 0.0:
        return 0.0 if exponent > 0 else math.inf
    return math.exp(exponent * math.log(base))


@dataclass(frozen=True)
class GasModel:
    """Adiabatic exponent and the derived constant ``theta = (gamma - 1)/2``.

    The limit analysis covers ``1 < gamma < 2``; exponents up to 3 are accepted
    so that stiffer cases such as ``gamma = 2.5`` can be simulated.
    """

    gamma: float
    theta: float = field(init=False)

    def __post_init__(self):
        g = float(self.gamma)
        if not math.isfinite(g) or g <= 1.0 or g >= GAMMA_MAX:
            raise DomainError(f"gamma must lie in (1, {GAMMA_MAX:g}), got {self.gamma!r}")
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "theta", (g - 1.0) / 2.0)


@dataclass(frozen=True)
class State:
    """A constant state ``(rho, u)``; ``vacuum`` marks samples inside a vacuum."""

    rho: float
    u: float
    vacuum: bool = False

    def __post_init__(self):
        if not (self.rho >= 0.0) or not math.isfinite(self.u):
            raise DomainError(f"invalid state rho={self.rho!r}, u={self.u!r}")
        if self.rho == 0.0 and not self.vacuum:
            raise DomainError("zero density is only allowed for vacuum samples")

    @property
    def conserved(self):
        return np.array([self.rho, self.u])

    def mirrored(self):
        """Image under ``x -> -x``, ``u -> -u``."""
        return State(self.rho, -self.u, self.vacuum)


@dataclass(frozen=True)
class FluxVector:
    f_rho: float
    f_u: float


def _check_density(rho, strict=False):
    bad = np.any(np.asarray(rho) <= 0.0) if strict else np.any(np.asarray(rho) < 0.0)
    if bad or np.any(np.isnan(rho)):
        kind = "positive" if strict else "non-negative"
        raise DomainError(f"density must be {kind}")


def pressure(g: GasModel, rho):
    """``p(rho) = (gamma - 1)/4 * rho^(gamma - 1)``."""
    _check_density(rho)
    return 0.5 * g.theta * power(rho, g.gamma - 1.0)


def flux(g: GasModel, s: State) -> FluxVector:
    return FluxVector(s.rho * s.u, 0.5 * s.u * s.u + pressure(g, s.rho))


def flux_arrays(g: GasModel, rho, u):
    """Array form of :func:`flux`, returns ``(f_rho, f_u)``."""
    return rho * u, 0.5 * u * u + pressure(g, rho)


def sound_speed(g: GasModel, rho):
    """Half-spread of the eigenvalues, ``theta * rho^theta``."""
    return g.theta * power(rho, g.theta)


def eigenvalues(g: GasModel, s: State):
    """Characteristic speeds ``u -/+ theta rho^theta``; requires ``rho > 0``."""
    _check_density(s.rho, strict=True)
    c = sound_speed(g, s.rho)
    return s.u - c, s.u + c


def eigenvalue_arrays(g: GasModel, rho, u):
    _check_density(rho, strict=True)
    c = sound_speed(g, rho)
    return u - c, u + c
