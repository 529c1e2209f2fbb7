"""Elementary wave curves in the (rho, u) phase plane.

Through a left state ``(rho_l, u_l)`` the right states reachable by a single
wave lie on

* ``R1``: ``u = u_l - (rho^theta - rho_l^theta)``, ``rho <= rho_l``
* ``R2``: ``u = u_l + (rho^theta - rho_l^theta)``, ``rho >= rho_l``
* ``S1``: ``u = u_l - s(rho, rho_l) (rho - rho_l)``, ``rho >= rho_l``
* ``S2``: ``u = u_l + s(rho, rho_l) (rho - rho_l)``, ``rho <= rho_l``

with the shock factor
``s(a, b) = sqrt(theta (a^(gamma-1) - b^(gamma-1)) / (a^2 - b^2))``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DegenerateJumpError, DomainError, InconsistentStatesError
from .model import GasModel, State, eigenvalues, power, pressure

RH_RTOL = 1e-10


class Region(enum.Enum):
    """Position of the right state relative to the curves through the left."""

    I = "R1+R2"
    II = "S1+R2"
    III = "R1+S2"
    IV = "S1+S2"
    V = "R1+Vac+R2"

    @property
    def one_shock(self):
        return self in (Region.II, Region.IV)

    @property
    def two_shock(self):
        return self in (Region.III, Region.IV)


class Branch(enum.Enum):
    R1 = "R1"
    R2 = "R2"
    S1 = "S1"
    S2 = "S2"


@dataclass(frozen=True)
class CurveBranch:
    kind: Branch
    anchor: State
    gas: GasModel

    def contains(self, rho):
        if self.kind in (Branch.R1, Branch.S2):
            return 0.0 <= rho <= self.anchor.rho
        return rho >= self.anchor.rho


def shock_factor(g: GasModel, rho, rho_anchor):
    """The radical ``s(rho, rho_anchor)``, free of the 0/0 at the anchor.

    ``rho^(gamma-1) - rho_anchor^(gamma-1)`` is formed with ``expm1``/``log1p``
    near the anchor, and the exact limit is used at ``rho == rho_anchor``.
    """
    gm1 = g.gamma - 1.0
    base = power(rho_anchor, gm1)
    d = (rho - rho_anchor) / rho_anchor
    if d == 0.0:
        ratio = gm1 * base / (2.0 * rho_anchor * rho_anchor)
    elif abs(d) < 0.5:
        ratio = base * math.expm1(gm1 * math.log1p(d)) / (rho_anchor * d * (rho + rho_anchor))
    else:
        ratio = (power(rho, gm1) - base) / ((rho - rho_anchor) * (rho + rho_anchor))
    return math.sqrt(g.theta * ratio)


def _theta_power_diff(g: GasModel, rho, rho_anchor):
    """``rho^theta - rho_anchor^theta`` without cancellation."""
    if rho == 0.0:
        return -power(rho_anchor, g.theta)
    return power(rho_anchor, g.theta) * math.expm1(g.theta * math.log(rho / rho_anchor))


def wave_strength(g: GasModel, rho, rho_anchor):
    """Velocity drop across the composite wave curve anchored at ``rho_anchor``.

    Rarefaction branch for ``rho < rho_anchor``, shock branch above. The
    forward 1-curve is ``u = u_l - wave_strength(rho, rho_l)`` and the
    backward 2-curve through a right state is ``u = u_r + wave_strength(rho, rho_r)``.
    Strictly increasing in ``rho``.
    """
    if rho < rho_anchor:
        return _theta_power_diff(g, rho, rho_anchor)
    return shock_factor(g, rho, rho_anchor) * (rho - rho_anchor)


def star_function(g: GasModel, left: State, right: State, rho):
    """Residual whose unique root in ``rho`` is the intermediate density."""
    return (
        wave_strength(g, rho, left.rho)
        + wave_strength(g, rho, right.rho)
        - (left.u - right.u)
    )


def curve_u(branch: CurveBranch, rho):
    """Velocity on ``branch`` at density ``rho``."""
    if not branch.contains(rho):
        raise DomainError(f"rho={rho!r} outside the domain of {branch.kind.value}")
    g, a = branch.gas, branch.anchor
    if branch.kind is Branch.R1:
        return a.u - _theta_power_diff(g, rho, a.rho)
    if branch.kind is Branch.R2:
        return a.u + _theta_power_diff(g, rho, a.rho)
    s = shock_factor(g, rho, a.rho)
    if branch.kind is Branch.S1:
        return a.u - s * (rho - a.rho)
    return a.u + s * (rho - a.rho)


def rh_residual(g: GasModel, left: State, right: State, sigma, relative=False):
    """Residuals ``(sigma[rho] - [rho u], sigma[u] - [u^2/2 + p])``.

    With ``relative=True`` each residual is divided by the larger of the two
    jump magnitudes entering it (zero jumps give zero).
    """
    a1 = sigma * (right.rho - left.rho)
    b1 = right.rho * right.u - left.rho * left.u
    a2 = sigma * (right.u - left.u)
    b2 = (0.5 * right.u**2 + pressure(g, right.rho)) - (0.5 * left.u**2 + pressure(g, left.rho))
    r1, r2 = a1 - b1, a2 - b2
    if not relative:
        return r1, r2
    s1, s2 = max(abs(a1), abs(b1)), max(abs(a2), abs(b2))
    return (r1 / s1 if s1 else 0.0), (r2 / s2 if s2 else 0.0)


def shock_speed(g: GasModel, left: State, right: State, rtol=RH_RTOL):
    """``sigma = [rho u]/[rho]``, checked against both jump conditions."""
    if right.rho == left.rho:
        raise DegenerateJumpError("shock speed undefined for equal densities")
    sigma = (right.rho * right.u - left.rho * left.u) / (right.rho - left.rho)
    r1, r2 = rh_residual(g, left, right, sigma, relative=True)
    if abs(r1) > rtol or abs(r2) > rtol:
        raise InconsistentStatesError(
            f"states violate the Rankine-Hugoniot relations (residuals {r1:.3e}, {r2:.3e})"
        )
    return sigma


def satisfies_lax(g: GasModel, left: State, right: State, sigma, family):
    """Strict Lax entropy inequalities for a ``family``-shock."""
    l1, l2 = eigenvalues(g, left)
    r1, r2 = eigenvalues(g, right)
    if family == 1:
        return sigma < l1 and r1 < sigma < r2
    if family == 2:
        return l1 < sigma < l2 and r2 < sigma and r1 < sigma
    raise ValueError("family must be 1 or 2")


def vacuum_forms(g: GasModel, left: State, right: State):
    """True when the rarefactions separate: ``u_r - u_l >= rho_l^theta + rho_r^theta``."""
    return right.u - left.u >= power(left.rho, g.theta) + power(right.rho, g.theta)


def classify(g: GasModel, left: State, right: State) -> Region:
    """Region of the right state relative to the wave curves through the left.

    A right state exactly on a curve resolves to the shock configuration with a
    zero-strength wave, so ``left == right`` gives ``Region.IV``.
    """
    if left.rho <= 0.0 or right.rho <= 0.0:
        raise DomainError("classify needs positive densities")
    if vacuum_forms(g, left, right):
        return Region.V
    one_shock = star_function(g, left, right, left.rho) <= 0.0
    two_shock = star_function(g, left, right, right.rho) <= 0.0
    return {
        (False, False): Region.I,
        (True, False): Region.II,
        (False, True): Region.III,
        (True, True): Region.IV,
    }[(one_shock, two_shock)]
