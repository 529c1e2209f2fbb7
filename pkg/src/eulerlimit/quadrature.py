"""Composite Gauss-Legendre quadrature with declared breakpoints, and the
compactly supported bump test functions used by the weak-form checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, DomainError

DEFAULT_RTOL = 1e-9


class Quadrature(NamedTuple):
    value: float
    error: float
    magnitude: float = 0.0  # integral of |f|


@lru_cache(maxsize=None)
def _rule(order):
    return np.polynomial.legendre.leggauss(order)


def _composite(f, edges, n_sub, order):
    x, w = _rule(order)
    sub = np.linspace(0.0, 1.0, n_sub + 1)
    lo = (edges[:-1, None] + np.diff(edges)[:, None] * sub[None, :-1]).ravel()
    hi = (edges[:-1, None] + np.diff(edges)[:, None] * sub[None, 1:]).ravel()
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    pts = mid[:, None] + half[:, None] * x[None, :]
    vals = np.asarray(f(pts.ravel()), dtype=float).reshape(pts.shape)
    hw = half[:, None] * w[None, :]
    return float(np.sum(hw * vals)), float(np.sum(hw * np.abs(vals)))


def integrate(f, a, b, breakpoints=(), rtol=DEFAULT_RTOL, atol=0.0, order=12, max_level=12):
    """Integrate a vectorised ``f`` over ``[a, b]``.

    Panels never straddle a breakpoint. Every panel is halved until two
    successive estimates differ by less than ``max(rtol*max(|I|, I_abs), atol)``,
    where ``I_abs`` integrates ``|f|``; that difference is returned as the error
    estimate and ``I_abs`` as ``magnitude``.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("integration limits must be finite")
    if b <= a:
        return Quadrature(0.0, 0.0)
    inner = sorted({float(p) for p in breakpoints if a < p < b})
    edges = np.array([a, *inner, b], dtype=float)
    n_sub = 2
    prev, _ = _composite(f, edges, n_sub, order)
    for _ in range(max_level):
        n_sub *= 2
        cur, cur_abs = _composite(f, edges, n_sub, order)
        err = abs(cur - prev)
        if err <= max(rtol * max(abs(cur), cur_abs), atol):
            return Quadrature(cur, err, cur_abs)
        prev = cur
    raise ConvergenceError(f"quadrature on [{a}, {b}] did not reach rtol={rtol} (last change {err:.3e})")


def gauss_mean(f, a, b, order=12):
    """Mean of ``f`` over ``[a, b]`` from one Gauss panel; ``f(a)`` when ``a == b``.

    Meant for intervals so short that ``f`` is a low-degree polynomial there.
    """
    if a == b:
        return float(np.asarray(f(np.array([a], dtype=float)), dtype=float)[0])
    x, w = _rule(order)
    pts = 0.5 * (a + b) + 0.5 * (b - a) * x
    return float(0.5 * np.sum(w * np.asarray(f(pts), dtype=float)))


@dataclass(frozen=True)
class Bump:
    """Mollifier ``exp(-1 / (1 - s^2))`` with ``s = (x - center)/width``."""

    center: float
    width: float

    def __post_init__(self):
        if not (self.width > 0.0 and math.isfinite(self.width) and math.isfinite(self.center)):
            raise DomainError("bump needs a finite centre and positive width")

    @property
    def support(self):
        return (self.center - self.width, self.center + self.width)

    @property
    def sup_norm(self):
        return math.exp(-1.0)

    def _parts(self, x):
        s = (np.asarray(x, dtype=float) - self.center) / self.width
        inside = np.abs(s) < 1.0
        q = np.where(inside, 1.0 - s * s, 1.0)
        val = np.where(inside, np.exp(-1.0 / q), 0.0)
        return s, q, val

    def __call__(self, x):
        return self._parts(x)[2]

    def derivative(self, x):
        s, q, val = self._parts(x)
        return val * (-2.0 * s / (q * q)) / self.width


@dataclass(frozen=True)
class TensorBump:
    """``phi(t, x) = bump_t(t) * bump_x(x)``."""

    t_bump: Bump
    x_bump: Bump

    @property
    def t_support(self):
        return self.t_bump.support

    @property
    def x_support(self):
        return self.x_bump.support

    def __call__(self, t, x):
        return self.t_bump(t) * self.x_bump(x)

    def d_t(self, t, x):
        return self.t_bump.derivative(t) * self.x_bump(x)

    def d_x(self, t, x):
        return self.t_bump(t) * self.x_bump.derivative(x)
