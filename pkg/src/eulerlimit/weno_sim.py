"""Finite-difference WENO5 solver for ``U_t + F(U)_x = 0`` with ``U = (rho, u)``.

Global Lax-Friedrichs flux splitting ``F+- = (F +- alpha U)/2`` applied
component-wise, Jiang-Shu fifth-order reconstruction of the split fluxes,
three-stage SSP Runge-Kutta in time and zero-order extrapolation through three
ghost cells per side.
"""

from __future__ import annotations

import math
import time as _time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import BlowUpError, DomainError
from .model import GasModel, State, flux_arrays, sound_speed

GHOST = 3
WENO_EPS = 1e-6
LINEAR_WEIGHTS = (0.1, 0.6, 0.3)


@dataclass(frozen=True)
class SimConfig:
    gamma: float
    left: State
    right: State
    domain: tuple = (-1.0, 1.0)
    cells: int = 200
    cfl: float = 0.4
    t_end: float = 0.3
    boundary: str = "extrapolate"

    def __post_init__(self):
        xl, xr = self.domain
        if not xl < 0.0 < xr:
            raise DomainError("domain must straddle x = 0")
        if self.cells < 20:
            raise DomainError("at least 20 cells are required")
        if not 0.0 < self.cfl <= 0.6:
            raise DomainError("CFL number must lie in (0, 0.6]")
        if not self.t_end >= 0.0:
            raise DomainError("end time must be non-negative")
        if self.boundary != "extrapolate":
            raise DomainError("only zero-order extrapolation boundaries are supported")
        if self.left.rho <= 0.0 or self.right.rho <= 0.0:
            raise DomainError("initial densities must be positive")
        GasModel(self.gamma)

    @property
    def gas(self):
        return GasModel(self.gamma)

    @property
    def dx(self):
        return (self.domain[1] - self.domain[0]) / self.cells

    @property
    def centers(self):
        return self.domain[0] + (np.arange(self.cells) + 0.5) * self.dx


@dataclass(frozen=True)
class Field:
    x: np.ndarray
    rho: np.ndarray
    u: np.ndarray
    t: float = 0.0

    @property
    def dx(self):
        return float(self.x[1] - self.x[0])


def initialize(cfg: SimConfig) -> Field:
    x = cfg.centers
    left = x < 0.0
    rho = np.where(left, cfg.left.rho, cfg.right.rho)
    u = np.where(left, cfg.left.u, cfg.right.u)
    return Field(x, rho, u, 0.0)


def _weno5(a, b, c, d, e):
    """Value at the right face of ``c`` from the five-point stencil ``a..e``."""
    q0 = (2.0 * a - 7.0 * b + 11.0 * c) / 6.0
    q1 = (-b + 5.0 * c + 2.0 * d) / 6.0
    q2 = (2.0 * c + 5.0 * d - e) / 6.0
    b0 = 13.0 / 12.0 * (a - 2.0 * b + c) ** 2 + 0.25 * (a - 4.0 * b + 3.0 * c) ** 2
    b1 = 13.0 / 12.0 * (b - 2.0 * c + d) ** 2 + 0.25 * (b - d) ** 2
    b2 = 13.0 / 12.0 * (c - 2.0 * d + e) ** 2 + 0.25 * (3.0 * c - 4.0 * d + e) ** 2
    a0 = LINEAR_WEIGHTS[0] / (WENO_EPS + b0) ** 2
    a1 = LINEAR_WEIGHTS[1] / (WENO_EPS + b1) ** 2
    a2 = LINEAR_WEIGHTS[2] / (WENO_EPS + b2) ** 2
    return (a0 * q0 + a1 * q1 + a2 * q2) / (a0 + a1 + a2)


def max_speed(g: GasModel, rho, u):
    return float(np.max(np.abs(u) + sound_speed(g, rho)))


def _check(rho, u, t):
    bad = ~(np.isfinite(rho) & np.isfinite(u)) | (rho <= 0.0)
    if bad.any():
        cell = int(np.argmax(bad))
        raise BlowUpError(
            f"non-physical state at t={t:.6g}, cell {cell}: rho={rho[cell]!r}, u={u[cell]!r}",
            time=t,
            cell=cell,
        )


def spatial_operator(g: GasModel, U, dx):
    """``-(f_{i+1/2} - f_{i-1/2})/dx`` and the two boundary face fluxes."""
    Up = np.pad(U, ((0, 0), (GHOST, GHOST)), mode="edge")
    rho, u = Up
    alpha = max_speed(g, rho, u)
    F = np.stack(flux_arrays(g, rho, u))
    fp = 0.5 * (F + alpha * Up)
    fm = 0.5 * (F - alpha * Up)
    n = Up.shape[1]
    j = np.arange(GHOST - 1, n - GHOST)  # faces j+1/2, boundary faces included
    face = _weno5(fp[:, j - 2], fp[:, j - 1], fp[:, j], fp[:, j + 1], fp[:, j + 2])
    face += _weno5(fm[:, j + 3], fm[:, j + 2], fm[:, j + 1], fm[:, j], fm[:, j - 1])
    return -(face[:, 1:] - face[:, :-1]) / dx, face[:, 0], face[:, -1]


@dataclass(frozen=True)
class StepReport:
    dt: float
    boundary_transfer: np.ndarray
    conservation_defect: np.ndarray


def advance(f: Field, cfg: SimConfig, dt: float):
    """One SSP-RK3 step of size ``dt``; returns the new field and a :class:`StepReport`.

    ``boundary_transfer`` is ``dt * (f_left - f_right)`` with the RK stage
    weights (1/6, 1/6, 2/3), i.e. the exact change of ``sum(U) dx`` that the
    telescoping flux difference allows.
    """
    g, dx = cfg.gas, f.dx
    U0 = np.stack([f.rho, f.u])
    L0, l0, r0 = spatial_operator(g, U0, dx)
    U1 = U0 + dt * L0
    _check(U1[0], U1[1], f.t + dt)
    L1, l1, r1 = spatial_operator(g, U1, dx)
    U2 = 0.75 * U0 + 0.25 * (U1 + dt * L1)
    _check(U2[0], U2[1], f.t + 0.5 * dt)
    L2, l2, r2 = spatial_operator(g, U2, dx)
    U3 = U0 / 3.0 + 2.0 / 3.0 * (U2 + dt * L2)
    _check(U3[0], U3[1], f.t + dt)

    transfer = dt * ((l0 - r0) / 6.0 + (l1 - r1) / 6.0 + 2.0 * (l2 - r2) / 3.0)
    change = (U3.sum(axis=1) - U0.sum(axis=1)) * dx
    # relative to the largest quantity involved; sum |U0| alone vanishes for u = 0 data
    scale = np.maximum.reduce([np.abs(U0).sum(axis=1) * dx, np.abs(U3).sum(axis=1) * dx, np.abs(transfer)])
    scale = np.maximum(scale, np.finfo(float).tiny)
    defect = np.abs(change - transfer) / scale
    return Field(f.x, U3[0], U3[1], f.t + dt), StepReport(dt, transfer, defect)


def stable_dt(f: Field, cfg: SimConfig):
    return cfg.cfl * f.dx / max_speed(cfg.gas, f.rho, f.u)


def step(f: Field, cfg: SimConfig) -> Field:
    """Advance by one CFL-limited step."""
    return advance(f, cfg, stable_dt(f, cfg))[0]


@dataclass
class RunResult:
    config: SimConfig
    snapshots: dict = field(default_factory=dict)
    steps: int = 0
    max_defect: float = 0.0
    contained: bool = True
    wall_clock: float = 0.0

    @property
    def final(self) -> Field:
        return self.snapshots[max(self.snapshots)]


def _boundary_intact(f: Field, cfg: SimConfig, width=GHOST):
    lt, rt = cfg.left, cfg.right
    tol = 1e-10
    return bool(
        np.all(np.abs(f.rho[:width] - lt.rho) <= tol * lt.rho)
        and np.all(np.abs(f.u[:width] - lt.u) <= tol * max(1.0, abs(lt.u)))
        and np.all(np.abs(f.rho[-width:] - rt.rho) <= tol * rt.rho)
        and np.all(np.abs(f.u[-width:] - rt.u) <= tol * max(1.0, abs(rt.u)))
    )


def run(cfg: SimConfig, times=None, max_steps=1_000_000) -> RunResult:
    """Integrate to ``cfg.t_end``, storing a snapshot at each requested time.

    ``max_defect`` is the largest per-step conservation defect (relative to
    the conserved totals) over the steps taken while the boundary cells still hold
    the initial states; ``contained`` reports whether that held to the end.
    """
    clock = _time.perf_counter()
    targets = sorted({float(t) for t in (times if times is not None else (cfg.t_end,))} | {cfg.t_end})
    if targets[0] < 0.0 or targets[-1] > cfg.t_end:
        raise DomainError("snapshot times must lie in [0, t_end]")
    f = initialize(cfg)
    result = RunResult(cfg)
    pending = list(targets)
    while pending and pending[0] <= 0.0:
        result.snapshots[pending.pop(0)] = f
    while pending:
        if result.steps >= max_steps:
            raise BlowUpError(f"step limit {max_steps} reached at t={f.t:.6g}", time=f.t)
        dt = stable_dt(f, cfg)
        target = pending[0]
        last = f.t + dt >= target * (1.0 - 1e-14)
        if last:
            dt = target - f.t
        f, report = advance(f, cfg, dt)
        result.steps += 1
        if last:
            f = Field(f.x, f.rho, f.u, target)
            result.snapshots[pending.pop(0)] = f
        if result.contained and _boundary_intact(f, cfg):
            result.max_defect = max(result.max_defect, float(report.conservation_defect.max()))
        else:
            result.contained = False
    result.wall_clock = _time.perf_counter() - clock
    return result


@dataclass(frozen=True)
class Diagnostics:
    mass: float
    total_u: float
    max_rho: float
    rise_position: float
    drop_position: float

    @property
    def shock_gap(self):
        return self.drop_position - self.rise_position


def _refined_extremum(x, d, i):
    """Face position of the extremum ``d[i]`` refined by a parabola through its neighbours."""
    xf = 0.5 * (x[i] + x[i + 1])
    if 0 < i < len(d) - 1:
        denom = d[i - 1] - 2.0 * d[i] + d[i + 1]
        if denom != 0.0:
            off = 0.5 * (d[i - 1] - d[i + 1]) / denom
            return xf + min(max(off, -0.5), 0.5) * (x[1] - x[0])
    return xf


def gradient_extrema(f: Field, refine=True):
    """Positions of the steepest density rise and the steepest density drop.

    A position is ``nan`` when the field has no rise (drop) at all.
    """
    d = np.diff(f.rho)
    out = []
    for i, present in ((int(np.argmax(d)), d.max() > 0.0), (int(np.argmin(d)), d.min() < 0.0)):
        if not present:
            out.append(math.nan)
        elif refine:
            out.append(_refined_extremum(f.x, d, i))
        else:
            out.append(0.5 * (f.x[i] + f.x[i + 1]))
    return tuple(out)


def diagnostics(f: Field, refine=True) -> Diagnostics:
    dx = f.dx
    up, dn = gradient_extrema(f, refine)
    return Diagnostics(
        mass=float(np.sum(f.rho) * dx),
        total_u=float(np.sum(f.u) * dx),
        max_rho=float(np.max(f.rho)),
        rise_position=float(up),
        drop_position=float(dn),
    )


def snapshot_stem(gamma, t):
    return f"sim_gamma{gamma:g}_t{t:g}"


def fmt(v):
    return format(float(v), ".17g")


def format_table(header, columns):
    """Comma-separated table with 17 significant digits, newline-terminated."""
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def write_table(path, header, columns):
    path = Path(path)
    path.write_text(format_table(header, columns))
    return path


def write_snapshot(f: Field, cfg: SimConfig, outdir, wall_clock=math.nan):
    """``sim_gamma<g>_t<t>.csv`` (``x,rho,u``) plus a ``.meta`` sidecar."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = snapshot_stem(cfg.gamma, f.t)
    csv = write_table(outdir / f"{stem}.csv", ("x", "rho", "u"), (f.x, f.rho, f.u))
    meta = outdir / f"{stem}.meta"
    meta.write_text(
        "\n".join(
            [
                f"domain={fmt(cfg.domain[0])},{fmt(cfg.domain[1])}",
                f"cells={cfg.cells}",
                f"cfl={fmt(cfg.cfl)}",
                f"gamma={fmt(cfg.gamma)}",
                f"time={fmt(f.t)}",
                f"left={fmt(cfg.left.rho)},{fmt(cfg.left.u)}",
                f"right={fmt(cfg.right.rho)},{fmt(cfg.right.u)}",
                f"wall_clock={wall_clock:.3f}",
            ]
        )
        + "\n"
    )
    return csv, meta
