"""Quadrature checks of the self-similar weak formulation and of the
distributional limit ``gamma -> 1``.

For a solution ``(rho, u)(xi)`` and a test function ``phi(xi)``:

    mass:      -int rho (u - xi) phi' + int rho phi = 0
    velocity:   int u phi - int (u/2 - xi) u phi' - (gamma-1)/4 int rho^(gamma-1) phi' = 0
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exact_riemann import WaveFan
from .gamma_limit import limit_values, solve_star_log
from .model import GasModel, State, power
from .quadrature import DEFAULT_RTOL, Bump, gauss_mean, integrate

TestFunction1D = Bump
RESIDUAL_RTOL = 1e-8


@dataclass(frozen=True)
class PairingReport:
    terms: tuple
    residual: float
    error_estimate: float
    magnitudes: tuple = ()

    @property
    def scale(self):
        """Sum of the integrals of the absolute integrands (of ``|terms|`` if absent)."""
        return sum(self.magnitudes) if self.magnitudes else sum(abs(t) for t in self.terms)

    @property
    def relative(self):
        return abs(self.residual) / self.scale if self.scale else 0.0


def _fan_breakpoints(fan: WaveFan):
    return tuple(fan.speeds)


def _report(pieces):
    values = tuple(q.value for q in pieces)
    return PairingReport(values, sum(values), sum(q.error for q in pieces), tuple(q.magnitude for q in pieces))


def residual_mass(fan: WaveFan, phi, rtol=DEFAULT_RTOL) -> PairingReport:
    """Terms ``(-int rho (u - xi) phi', int rho phi)`` and their sum."""
    a, b = phi.support
    br = _fan_breakpoints(fan)

    def flux_part(xi):
        rho, u, _ = fan.profile(xi)
        return -rho * (u - xi) * phi.derivative(xi)

    def source_part(xi):
        return fan.profile(xi)[0] * phi(xi)

    return _report([integrate(flux_part, a, b, br, rtol), integrate(source_part, a, b, br, rtol)])


def residual_velocity(fan: WaveFan, phi, rtol=DEFAULT_RTOL, include_pressure=True) -> PairingReport:
    """Terms ``(int u phi, -int (u/2 - xi) u phi', -(gamma-1)/4 int rho^(gamma-1) phi')``.

    ``include_pressure=False`` drops the last term (an ablation check).
    """
    a, b = phi.support
    br = _fan_breakpoints(fan)
    gm1 = fan.gas.gamma - 1.0

    def source_part(xi):
        return fan.profile(xi)[1] * phi(xi)

    def flux_part(xi):
        u = fan.profile(xi)[1]
        return -(0.5 * u - xi) * u * phi.derivative(xi)

    def pressure_part(xi):
        rho = fan.profile(xi)[0]
        return -0.25 * gm1 * power(rho, gm1) * phi.derivative(xi)

    pieces = [integrate(source_part, a, b, br, rtol), integrate(flux_part, a, b, br, rtol)]
    if include_pressure:
        pieces.append(integrate(pressure_part, a, b, br, rtol))
    return _report(pieces)


def _phi_integral(phi, a, b, rtol):
    lo, hi = phi.support
    a, b = max(a, lo), min(b, hi)
    if b <= a:
        return 0.0
    return integrate(phi, a, b, rtol=rtol).value


@dataclass(frozen=True)
class LimitPairing:
    gamma: float
    density_pairing: float
    density_target: float
    velocity_pairing: float

    @property
    def density_rel_error(self):
        return abs(self.density_pairing - self.density_target) / abs(self.density_target)


def _star_mean(phi, s1, s2, rtol):
    lo, hi = phi.support
    if s2 - s1 > 1e-6 * (hi - lo):
        return _phi_integral(phi, s1, s2, rtol) / (s2 - s1)
    return gauss_mean(phi, s1, s2)


def _pairings(star, left: State, right: State, phi, rtol):
    """``int (rho_gamma - rho_0) phi`` and ``int (u_gamma - u_0) phi`` in ``xi``.

    The star interval enters the density pairing through
    ``mass_rate * mean(phi over [sigma1, sigma2])`` only.
    """
    sigma, _, _ = limit_values(left, right)
    s1, s2 = star.sigma1, star.sigma2
    lo, hi = phi.support
    pts = sorted({lo, hi, *(c for c in (s1, s2, sigma) if lo < c < hi)})
    dens = vel = 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        m = 0.5 * (a + b)
        w = integrate(phi, a, b, rtol=rtol).value
        rho_0, u_0 = (left.rho, left.u) if m < sigma else (right.rho, right.u)
        if m < s1:
            dens += (left.rho - rho_0) * w
            vel += (left.u - u_0) * w
        elif m > s2:
            dens += (right.rho - rho_0) * w
            vel += (right.u - u_0) * w
        else:
            dens -= rho_0 * w
            vel += (star.u_star - u_0) * w
    dens += star.mass_rate * _star_mean(phi, s1, s2, rtol)
    return dens, vel


def delta_pairing_limit(left: State, right: State, gammas, phi, rtol=DEFAULT_RTOL):
    """Convergence table of the pairings against their delta-wave limits.

    Each row holds ``int (rho_gamma - rho_0) phi``, the target
    ``(sigma[rho] - [rho u]) phi(sigma)`` and ``int (u_gamma - u_0) phi``.
    """
    sigma, _, rate = limit_values(left, right)
    target = rate * float(phi(np.array([sigma]))[0])
    rows = []
    for gamma in gammas:
        star = solve_star_log(GasModel(gamma), left, right)
        dens, vel = _pairings(star, left, right, phi, rtol)
        rows.append(LimitPairing(float(gamma), dens, target, vel))
    return rows


class _Slice:
    """``xi -> phi(t, xi t)`` for fixed ``t``, exposing a ``support`` in ``xi``."""

    def __init__(self, phi2d, t):
        self.phi2d, self.t = phi2d, t
        x0, x1 = phi2d.x_support
        self.support = (x0 / t, x1 / t)

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        return self.phi2d(np.full(xi.shape, self.t), xi * self.t)


def delta_pairing_tx(left: State, right: State, gamma, phi2d, rtol=DEFAULT_RTOL):
    """``int int (rho_gamma - rho_0)(x/t) phi(t, x) dx dt`` through the ``xi`` pairing:
    the inner integral is ``t * int (rho_gamma - rho_0)(xi) phi(t, xi t) dxi``."""
    star = solve_star_log(GasModel(gamma), left, right)
    t0, t1 = phi2d.t_support

    def outer(ts):
        return np.array([t * _pairings(star, left, right, _Slice(phi2d, t), rtol)[0] for t in ts])

    return integrate(outer, max(t0, 0.0), t1, rtol=rtol).value


def direct_pairing_tx(fan: WaveFan, phi2d, rtol=DEFAULT_RTOL):
    """Same quantity by plain 2-D quadrature in ``(t, x)``; needs a representable star density."""
    sigma, _, _ = limit_values(fan.left, fan.right)
    t0, t1 = phi2d.t_support
    x0, x1 = phi2d.x_support
    lt, rt = fan.left, fan.right

    def inner(t):
        cuts = [s * t for s in (*fan.speeds, sigma)]

        def f(x):
            rho = fan.profile(x / t)[0]
            rho0 = np.where(x < sigma * t, lt.rho, rt.rho)
            return (rho - rho0) * phi2d(np.full(x.shape, t), x)

        return integrate(f, x0, x1, cuts, rtol).value

    return integrate(lambda ts: np.array([inner(t) for t in ts]), max(t0, 0.0), t1, rtol=rtol).value
