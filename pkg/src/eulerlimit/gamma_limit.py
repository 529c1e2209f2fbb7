"""Two-shock intermediate state for gamma close to one.

As gamma decreases to one the intermediate density grows like
``(2a/(gamma-1))^(1/(gamma-1))`` and leaves the floating-point range already
around ``gamma - 1 = 1e-3``. Everything here is written in the log-density
``L = ln rho_star``: with ``r = rho_side / rho_star = exp(ln rho_side - L)``
each shock contributes

    T(L) = sqrt(a_gamma - theta rho_side^(gamma-1)) * sqrt((1 - r)/(1 + r)),
    a_gamma = theta * exp((gamma-1) L),

to the velocity jump, and the star equation reads ``T_l(L) + T_r(L) = u_l - u_r``.
The density itself is never formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, EulerLimitError, PreconditionError
from .model import GasModel, State, power
from .wave_curves import Region, classify

L_RTOL = 1e-12
MAX_ITER = 200


@dataclass(frozen=True)
class StarLog:
    gamma: float
    L: float
    u_star: float
    sigma1: float
    sigma2: float
    a_gamma: float
    mass_rate: float

    @property
    def rho_star(self):
        """``exp(L)``; ``inf`` once it overflows."""
        try:
            return math.exp(self.L)
        except OverflowError:
            return math.inf


@dataclass(frozen=True)
class SweepRecord:
    gamma: float
    star: StarLog | None
    dev_u_star: float = math.nan
    dev_sigma1: float = math.nan
    dev_sigma2: float = math.nan
    dev_a: float = math.nan
    dev_mass_rate: float = math.nan
    error: str | None = None

    @property
    def ok(self):
        return self.error is None


def limit_values(left: State, right: State):
    """``(sigma, a, sigma[rho] - [rho u])`` of the delta-wave limit."""
    sigma = 0.5 * (left.u + right.u)
    a = 0.25 * (left.u - right.u) ** 2
    rate = sigma * (right.rho - left.rho) - (right.rho * right.u - left.rho * left.u)
    return sigma, a, rate


def _side_terms(g: GasModel, L, rho_side):
    """``(T, q)`` for one shock: its velocity jump ``T`` and ``q`` with
    ``sqrt(q) = T / (1 - r)`` (speed offset from the outer state)."""
    gm1 = g.gamma - 1.0
    ln_side = math.log(rho_side)
    delta = L - ln_side
    base = g.theta * math.exp(gm1 * ln_side)
    r = math.exp(-delta)
    # a_gamma - theta rho_side^(gamma-1), cancellation-free
    excess = base * math.expm1(gm1 * delta) if gm1 * delta < 700.0 else math.inf
    one_minus_r = -math.expm1(-delta)
    T = math.sqrt(excess) * math.sqrt(one_minus_r / (1.0 + r))
    if delta == 0.0:
        q = base * gm1 / 2.0
    else:
        q = excess / (one_minus_r * (1.0 + r))
    return T, q


def star_equation(g: GasModel, left: State, right: State, L):
    """``T_l(L) + T_r(L) - (u_l - u_r)``; strictly increasing in ``L``."""
    return _side_terms(g, L, left.rho)[0] + _side_terms(g, L, right.rho)[0] - (left.u - right.u)


def solve_star_log(g: GasModel, left: State, right: State) -> StarLog:
    """Intermediate state of the two-shock solution, computed in ``L = ln rho_star``."""
    config = classify(g, left, right)
    if config is not Region.IV:
        raise PreconditionError(f"data is in region {config.name}, not the two-shock region IV")

    def G(L):
        return star_equation(g, left, right, L)

    base = math.log(max(left.rho, right.rho))
    lo = base + 1e-9
    if G(lo) >= 0.0:
        lo = base
    if G(lo) >= 0.0:
        L = lo
    else:
        step = 1.0
        hi = max(lo, 0.0) + step
        while G(hi) < 0.0:
            step *= 2.0
            hi = max(lo, 0.0) + step
            if step > 1e300:
                raise ConvergenceError("no upper bracket for the log star density")
        # bisect to machine resolution; L_RTOL is the acceptance bound
        for _ in range(MAX_ITER):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if G(mid) < 0.0:
                lo = mid
            else:
                hi = mid
        if hi - lo > L_RTOL * max(abs(lo), 1.0):
            raise ConvergenceError("log star density bisection did not converge")
        L = 0.5 * (lo + hi)

    T_l, q_l = _side_terms(g, L, left.rho)
    _, q_r = _side_terms(g, L, right.rho)
    u_star = left.u - T_l
    sigma1 = left.u - math.sqrt(q_l)
    sigma2 = right.u + math.sqrt(q_r)
    if sigma2 < sigma1:
        # the true gap rate/rho_star is below one ulp of the speeds
        sigma1 = sigma2 = 0.5 * (sigma1 + sigma2)
    a_gamma = g.theta * math.exp((g.gamma - 1.0) * L)
    mass_rate = left.rho * left.u - sigma1 * left.rho + sigma2 * right.rho - right.rho * right.u
    return StarLog(g.gamma, L, u_star, sigma1, sigma2, a_gamma, mass_rate)


def sweep(gammas, left: State, right: State):
    """One :class:`SweepRecord` per gamma; failures are recorded, not raised."""
    sigma, a, rate = limit_values(left, right)
    out = []
    for gamma in gammas:
        try:
            s = solve_star_log(GasModel(gamma), left, right)
        except EulerLimitError as exc:
            out.append(SweepRecord(float(gamma), None, error=str(exc)))
            continue
        out.append(
            SweepRecord(
                float(gamma),
                s,
                dev_u_star=abs(s.u_star - sigma),
                dev_sigma1=abs(s.sigma1 - sigma),
                dev_sigma2=abs(s.sigma2 - sigma),
                dev_a=abs(s.a_gamma - a),
                dev_mass_rate=abs(s.mass_rate - rate),
            )
        )
    return out


DEVIATION_COLUMNS = ("dev_u_star", "dev_sigma1", "dev_sigma2", "dev_a", "dev_mass_rate")


def empirical_orders(records, column):
    """Observed orders ``log(d_k/d_{k+1}) / log(eps_k/eps_{k+1})`` with ``eps = gamma - 1``."""
    pts = [(r.gamma - 1.0, getattr(r, column)) for r in records if r.ok]
    orders = []
    for (e0, d0), (e1, d1) in zip(pts, pts[1:]):
        if d0 > 0 and d1 > 0 and e0 != e1:
            orders.append(math.log(d0 / d1) / math.log(e0 / e1))
        else:
            orders.append(math.nan)
    return orders


def inequality_lhs(gamma, left: State, right: State):
    """Left side of the two-shock criterion
    ``sqrt(theta (rho_r^(g-1) - rho_l^(g-1)) / (rho_r^2 - rho_l^2)) < (u_l - u_r)/|rho_r - rho_l|``."""
    g = GasModel(gamma)
    gm1 = g.gamma - 1.0
    num = g.theta * (power(right.rho, gm1) - power(left.rho, gm1))
    return math.sqrt(num / (right.rho**2 - left.rho**2))


@dataclass(frozen=True)
class ThresholdScan:
    qualifying: tuple
    gamma0: float | None

    @property
    def all_qualify(self):
        return self.gamma0 is not None and len(self.qualifying) > 0


def region_iv_threshold(left: State, right: State, gammas) -> ThresholdScan:
    """Grid scan of the two-shock criterion.

    ``qualifying`` lists every grid gamma satisfying it; ``gamma0`` is the
    largest grid gamma such that every grid point at or below it qualifies
    (``None`` if the smallest one already fails).
    """
    if not right.u < left.u:
        raise PreconditionError("the two-shock criterion needs u_right < u_left")
    grid = sorted(float(g) for g in gammas)
    if right.rho == left.rho:
        ok = [True] * len(grid)
    else:
        rhs = (left.u - right.u) / abs(right.rho - left.rho)
        ok = [inequality_lhs(g, left, right) < rhs for g in grid]
    gamma0 = None
    for g, flag in zip(grid, ok):
        if not flag:
            break
        gamma0 = g
    return ThresholdScan(tuple(g for g, f in zip(grid, ok) if f), gamma0)
