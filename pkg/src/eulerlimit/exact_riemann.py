"""Exact self-similar solution of the Riemann problem in ``xi = x/t``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .model import GasModel, State, eigenvalues, power
from .wave_curves import (
    Region,
    classify,
    rh_residual,
    satisfies_lax,
    shock_factor,
    star_function,
    wave_strength,
)

__all__ = [
    "RiemannProblem",
    "Wave",
    "WaveFan",
    "solve",
    "sample",
    "rh_residual",
]

STAR_RTOL = 1e-13
MAX_ITER = 200
# relative density jump below which a shock is indistinguishable from a characteristic
RESOLVABLE_JUMP = 1e-10


@dataclass(frozen=True)
class RiemannProblem:
    gas: GasModel
    left: State
    right: State

    def __post_init__(self):
        if self.left.rho <= 0.0 or self.right.rho <= 0.0:
            raise DomainError("Riemann data needs positive densities on both sides")

    def mirrored(self):
        """The problem reflected by ``x -> -x``, ``u -> -u``."""
        return RiemannProblem(self.gas, self.right.mirrored(), self.left.mirrored())


@dataclass(frozen=True)
class Wave:
    """One elementary wave; a shock has ``left_speed == right_speed``."""

    family: int
    kind: str
    left_speed: float
    right_speed: float

    @property
    def is_shock(self):
        return self.kind == "shock"

    @property
    def speed(self):
        if not self.is_shock:
            raise AttributeError("a rarefaction has no single speed")
        return self.left_speed


@dataclass(frozen=True)
class WaveFan:
    """Complete Riemann solution.

    ``star`` is ``None`` when the rarefactions are separated by vacuum; then
    ``vacuum`` holds the ``(xi_left, xi_right)`` interval.
    """

    config: Region
    gas: GasModel
    left: State
    right: State
    waves: tuple
    star: State | None = None
    vacuum: tuple | None = None

    @property
    def speeds(self):
        out = []
        for w in self.waves:
            out.append(w.left_speed)
            if not w.is_shock:
                out.append(w.right_speed)
        return tuple(out)

    def shocks(self):
        """``(family, left_state, right_state, sigma)`` for each shock."""
        out = []
        w1, w2 = self.waves
        if w1.is_shock:
            out.append((1, self.left, self.star, w1.speed))
        if w2.is_shock:
            out.append((2, self.star, self.right, w2.speed))
        return out

    def profile(self, xi):
        """Vectorised sampler: arrays ``(rho, u, vacuum_mask)`` at ``xi``."""
        xi = np.asarray(xi, dtype=float)
        th = self.gas.theta
        lt, rt = self.left, self.right
        w1, w2 = self.waves
        rho = np.full(xi.shape, lt.rho)
        u = np.full(xi.shape, lt.u)
        vac = np.zeros(xi.shape, dtype=bool)

        fan1 = (xi >= w1.left_speed) & (xi < w1.right_speed)
        if fan1.any():
            beta = np.maximum((lt.u + power(lt.rho, th) - xi[fan1]) / (1.0 + th), 0.0)
            rho[fan1] = power(beta, 1.0 / th)
            u[fan1] = xi[fan1] + th * beta

        mid = (xi >= w1.right_speed) & (xi <= w2.left_speed)
        if self.star is not None:
            rho[mid] = self.star.rho
            u[mid] = self.star.u
        else:
            rho[mid] = 0.0
            u[mid] = xi[mid]
            vac[mid] = True

        fan2 = (xi > w2.left_speed) & (xi <= w2.right_speed)
        if fan2.any():
            beta = np.maximum((xi[fan2] - rt.u + power(rt.rho, th)) / (1.0 + th), 0.0)
            rho[fan2] = power(beta, 1.0 / th)
            u[fan2] = xi[fan2] - th * beta

        right = xi > w2.right_speed
        rho[right] = rt.rho
        u[right] = rt.u
        return rho, u, vac

    def sample(self, xi) -> State:
        rho, u, vac = self.profile(np.array([xi], dtype=float))
        if vac[0] or rho[0] == 0.0:
            return State(0.0, float(u[0]), vacuum=True)
        return State(float(rho[0]), float(u[0]))

    def sample_tx(self, t, x) -> State:
        return self.sample(x / t)

    def rh_residuals(self, relative=True):
        return [rh_residual(self.gas, l, r, s, relative=relative) for _, l, r, s in self.shocks()]

    def entropy_ok(self):
        """Strict Lax conditions for every shock stronger than :data:`RESOLVABLE_JUMP`.

        The inequality margins are proportional to the density jump, so for
        weaker shocks they drown in the rounding of the speeds.
        """
        return all(
            satisfies_lax(self.gas, l, r, s, fam)
            for fam, l, r, s in self.shocks()
            if abs(r.rho - l.rho) > RESOLVABLE_JUMP * max(l.rho, r.rho)
        )


def _bisect_log(f, lo, hi):
    """Geometric bisection for the sign change ``f(lo) < 0 <= f(hi)``."""
    for _ in range(MAX_ITER):
        if hi / lo - 1.0 <= 1e-15:
            break
        mid = math.sqrt(lo) * math.sqrt(hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    if hi / lo - 1.0 > STAR_RTOL:
        raise ConvergenceError(f"star density bisection stalled in [{lo!r}, {hi!r}]")
    return 0.5 * (lo + hi)


def star_density(g: GasModel, left: State, right: State, config: Region):
    """Intermediate density for a non-vacuum configuration."""
    th = g.theta
    if config is Region.I:
        beta = 0.5 * (left.u - right.u + power(left.rho, th) + power(right.rho, th))
        return power(beta, 1.0 / th)

    def f(r):
        return star_function(g, left, right, r)

    if config is Region.II:
        lo, hi = left.rho, right.rho
    elif config is Region.III:
        lo, hi = right.rho, left.rho
    else:
        lo = max(left.rho, right.rho)
        hi = 2.0 * lo
        while f(hi) < 0.0:
            hi *= 2.0
            if not math.isfinite(hi) or hi > 1e300:
                raise ConvergenceError(
                    "intermediate density exceeds the floating-point range; "
                    "use gamma_limit.solve_star_log"
                )
    if f(lo) >= 0.0:
        return lo
    return _bisect_log(f, lo, hi)


def _vacuum_fan(g: GasModel, left: State, right: State) -> WaveFan:
    l1, _ = eigenvalues(g, left)
    _, r2 = eigenvalues(g, right)
    a = left.u + power(left.rho, g.theta)
    b = right.u - power(right.rho, g.theta)
    waves = (Wave(1, "rarefaction", l1, a), Wave(2, "rarefaction", b, r2))
    return WaveFan(Region.V, g, left, right, waves, star=None, vacuum=(a, b))


def solve(problem: RiemannProblem) -> WaveFan:
    """Solve the Riemann problem exactly."""
    g, left, right = problem.gas, problem.left, problem.right
    config = classify(g, left, right)
    if config is Region.V:
        return _vacuum_fan(g, left, right)
    rho_s = star_density(g, left, right, config)
    if rho_s == 0.0:
        return _vacuum_fan(g, left, right)
    u_s = left.u - wave_strength(g, rho_s, left.rho)
    star = State(rho_s, u_s)
    lam_star = eigenvalues(g, star)

    s1 = left.u - rho_s * shock_factor(g, rho_s, left.rho) if config.one_shock else None
    s2 = right.u + rho_s * shock_factor(g, rho_s, right.rho) if config.two_shock else None
    if config is Region.IV and s2 < s1:
        # the true gap is below one ulp of the speeds; merge instead of crossing
        s1 = s2 = 0.5 * (s1 + s2)
    # edges are clamped so that a near-zero-strength fan never has negative width
    if config.one_shock:
        w1 = Wave(1, "shock", s1, s1)
    else:
        head = eigenvalues(g, left)[0]
        w1 = Wave(1, "rarefaction", head, max(head, lam_star[0]))
    if config.two_shock:
        w2 = Wave(2, "shock", s2, s2)
    else:
        tail = eigenvalues(g, right)[1]
        w2 = Wave(2, "rarefaction", min(lam_star[1], tail), tail)
    return WaveFan(config, g, left, right, (w1, w2), star=star)


def sample(fan: WaveFan, xi) -> State:
    return fan.sample(xi)
