"""Delta-wave solution of the pressureless system

    rho_t + (rho u)_x = 0,    u_t + (u^2/2)_x = 0

for Riemann data with ``u_r < u_l``. The density is a piecewise-constant
background plus a Dirac mass of weight ``w(t)`` on the line ``x = sigma t``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, NotADeltaWaveError
from .model import State
from .quadrature import DEFAULT_RTOL, integrate


def jump(left, right):
    """``[q] = q_right - q_left``."""
    return right - left


@dataclass(frozen=True)
class WeightedDirac:
    """Dirac measure ``w(t) delta_S`` on the line ``S = {(t, sigma t)}``.

    ``weight`` must accept numpy arrays.
    """

    sigma: float
    weight: Callable

    def pair(self, phi, rtol=DEFAULT_RTOL):
        return pair(self, phi, rtol=rtol)


@dataclass(frozen=True)
class DeltaWaveSolution:
    sigma: float
    weight_rate: float
    left: State
    right: State
    support_speed: float = field(default=None)

    def __post_init__(self):
        if self.support_speed is None:
            object.__setattr__(self, "support_speed", self.sigma)

    def weight(self, t):
        return self.weight_rate * np.asarray(t, dtype=float)

    def dirac(self) -> WeightedDirac:
        return WeightedDirac(self.support_speed, self.weight)

    def background(self, t, x):
        """``(rho_0, u_0)`` off the support; ``u_0 = sigma`` on it."""
        t = np.asarray(t, dtype=float)
        x = np.asarray(x, dtype=float)
        pos = x - self.support_speed * t
        rho0 = np.where(pos < 0.0, self.left.rho, self.right.rho)
        u0 = np.where(pos < 0.0, self.left.u, np.where(pos > 0.0, self.right.u, self.sigma))
        return rho0, u0


def solve_delta(left: State, right: State) -> DeltaWaveSolution:
    """Speed ``(u_l + u_r)/2`` and weight ``w(t) = (rho_l + rho_r)(u_l - u_r) t / 2``."""
    if not right.u < left.u:
        raise NotADeltaWaveError("a delta wave needs u_right < u_left")
    if left.rho <= 0.0 or right.rho <= 0.0:
        raise DomainError("delta wave data needs positive densities")
    sigma = 0.5 * (left.u + right.u)
    rate = 0.5 * (left.rho + right.rho) * (left.u - right.u)
    return DeltaWaveSolution(sigma, rate, left, right)


def general_weight_rate(sigma, left: State, right: State):
    """``sigma [rho] - [rho u]``."""
    return sigma * jump(left.rho, right.rho) - jump(left.rho * left.u, right.rho * right.u)


def grh_residual(d: DeltaWaveSolution, t=1.0):
    """Residuals of ``dx/dt = sigma``, ``dw/dt = sigma[rho] - [rho u]``,
    ``sigma[u] = [u^2/2]`` at time ``t``."""
    if t < 0.0:
        raise DomainError("time must be non-negative")
    lt, rt = d.left, d.right
    r_x = d.support_speed - d.sigma
    r_w = d.weight_rate - general_weight_rate(d.sigma, lt, rt)
    r_u = d.sigma * jump(lt.u, rt.u) - jump(0.5 * lt.u**2, 0.5 * rt.u**2)
    return r_x, r_w, r_u


def pair(d: WeightedDirac, phi, rtol=DEFAULT_RTOL):
    """``<w delta_S, phi> = int w(t) phi(t, sigma t) dt``.

    ``phi`` needs a finite ``t_support``; the part with ``t < 0`` is ignored.
    """
    support = getattr(phi, "t_support", None)
    if support is None or not np.all(np.isfinite(support)):
        raise DomainError("test function must declare a finite t_support")
    t0, t1 = max(0.0, support[0]), support[1]

    def integrand(t):
        return d.weight(t) * phi(t, d.sigma * t)

    return integrate(integrand, t0, t1, rtol=rtol).value


def distributional_residuals(d: DeltaWaveSolution, phi, rtol=DEFAULT_RTOL):
    """Relative residuals of the weak mass and velocity equations.

    Mass: ``<rho, phi_t> + <rho u, phi_x>`` with the singular parts
    ``<w delta, phi_t>`` and ``<sigma w delta, phi_x>``.
    Velocity: ``<u, phi_t> + <u^2/2, phi_x>``.
    ``phi`` is a :class:`~eulerlimit.quadrature.TensorBump` supported in ``t > 0``.
    """
    t0, t1 = phi.t_support
    if t0 < 0.0:
        raise DomainError("test function must vanish for t <= 0")
    x0, x1 = phi.x_support
    s = d.support_speed
    lt, rt = d.left, d.right

    def plane(coef_l, coef_r, deriv):
        def inner(t):
            out = np.empty_like(t)
            for k, tk in enumerate(t):
                xs = s * tk
                fl = integrate(lambda x: deriv(tk, x), x0, min(xs, x1), rtol=rtol).value if xs > x0 else 0.0
                fr = integrate(lambda x: deriv(tk, x), max(xs, x0), x1, rtol=rtol).value if xs < x1 else 0.0
                out[k] = coef_l * fl + coef_r * fr
            return out

        return integrate(inner, t0, t1, rtol=rtol).value

    def line(coef, deriv):
        return integrate(lambda t: coef * d.weight(t) * deriv(t, s * t), t0, t1, rtol=rtol).value

    mass_terms = (
        plane(lt.rho, rt.rho, phi.d_t),
        line(1.0, phi.d_t),
        plane(lt.rho * lt.u, rt.rho * rt.u, phi.d_x),
        line(d.sigma, phi.d_x),
    )
    vel_terms = (
        plane(lt.u, rt.u, phi.d_t),
        plane(0.5 * lt.u**2, 0.5 * rt.u**2, phi.d_x),
    )

    def rel(terms):
        scale = sum(abs(v) for v in terms)
        return abs(sum(terms)) / scale if scale else 0.0

    return rel(mass_terms), rel(vel_terms)
