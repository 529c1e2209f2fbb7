"""Command-line front end: ``eulerlimit <command> [flags]``.

Reports are ``key=value`` lines, tables are comma-separated with a header row,
and every float is printed with 17 significant digits. The exit status is 0
only when every residual or invariant check of the command passed.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .errors import BlowUpError, ConvergenceError, EulerLimitError
from .exact_riemann import RiemannProblem, solve as solve_riemann
from .gamma_limit import DEVIATION_COLUMNS, limit_values, solve_star_log, sweep
from .model import GAMMA_MAX, GasModel, State
from .pressureless import grh_residual, solve_delta
from .quadrature import Bump
from .wave_curves import RH_RTOL, Region
from .weak_form import RESIDUAL_RTOL, residual_mass, residual_velocity
from .weno_sim import (
    SimConfig,
    diagnostics,
    fmt,
    format_table,
    run,
    write_snapshot,
    write_table,
)

REPRO_GAMMAS = (2.5, 1.3, 1.05, 1.0001)
REPRO_LEFT = State(1.5, 1.5)
REPRO_RIGHT = State(2.0, -0.5)
DEFAULT_BUMPS = ((0.5, 0.3), (0.3, 0.4), (0.6, 1.0))
CONSERVATION_RTOL = 1e-10


# ---------------------------------------------------------------- flag types


def _finite(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return v


def _positive(text):
    v = _finite(text)
    if v <= 0.0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _gamma(text):
    v = _finite(text)
    if not 1.0 < v < GAMMA_MAX:
        raise argparse.ArgumentTypeError(f"gamma must lie in (1, {GAMMA_MAX:g}): {text!r}")
    return v


def _gamma_list(text):
    return [_gamma(part) for part in text.split(",") if part.strip()]


def _time_list(text):
    out = [_finite(part) for part in text.split(",") if part.strip()]
    if any(t < 0.0 for t in out):
        raise argparse.ArgumentTypeError("times must be non-negative")
    return out


def _bump(text):
    try:
        c, w = text.split(",")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected CENTER,WIDTH: {text!r}") from None
    return _finite(c), _positive(w)


def _add_states(p, required=True):
    p.add_argument("--rho-left", type=_positive, required=required)
    p.add_argument("--u-left", type=_finite, required=required)
    p.add_argument("--rho-right", type=_positive, required=required)
    p.add_argument("--u-right", type=_finite, required=required)


def _states(args):
    return State(args.rho_left, args.u_left), State(args.rho_right, args.u_right)


def build_parser():
    parser = argparse.ArgumentParser(prog="eulerlimit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact Riemann solution")
    p.add_argument("--gamma", type=_gamma, required=True)
    _add_states(p)
    p.add_argument("--samples", type=int, default=0, help="number of xi samples to tabulate")
    p.add_argument("--xi-min", type=_finite, default=-2.0)
    p.add_argument("--xi-max", type=_finite, default=2.0)

    p = sub.add_parser("delta", help="delta-wave solution of the pressureless system")
    _add_states(p)
    p.add_argument("--time", type=_finite, default=1.0)

    p = sub.add_parser("sweep", help="two-shock star state as gamma -> 1")
    _add_states(p)
    p.add_argument("--gammas", type=_gamma_list, default=[1.01, 1.0001, 1.000001])

    p = sub.add_parser("weak", help="weak-form residuals of an exact fan")
    p.add_argument("--gamma", type=_gamma, required=True)
    _add_states(p)
    p.add_argument("--bump", type=_bump, action="append", help="CENTER,WIDTH (repeatable)")
    p.add_argument("--rtol", type=_positive, default=1e-10)

    p = sub.add_parser("simulate", help="WENO5 simulation")
    p.add_argument("--gamma", type=_gamma, required=True)
    _add_states(p)
    _add_sim_flags(p)
    p.add_argument("--times", type=_time_list, default=None, help="extra snapshot times")
    p.add_argument("--outdir", type=Path, default=Path("."))

    p = sub.add_parser("repro-figs", help="four-gamma concentration experiment")
    p.add_argument("--outdir", type=Path, required=True)
    _add_sim_flags(p)
    return parser


def _add_sim_flags(p):
    p.add_argument("--cells", type=int, default=200)
    p.add_argument("--cfl", type=_positive, default=0.4)
    p.add_argument("--t-end", type=_finite, default=0.3)
    p.add_argument("--x-min", type=_finite, default=-1.0)
    p.add_argument("--x-max", type=_finite, default=1.0)


# ------------------------------------------------------------------ commands


def _kv(out, key, value):
    if isinstance(value, (float, np.floating)):
        value = fmt(value)
    out.write(f"{key}={value}\n")


def _log_star_fan(g, left, right):
    """Stand-in for a two-shock fan whose star density overflows."""
    s = solve_star_log(g, left, right)

    def profile(xi):
        xi = np.asarray(xi, dtype=float)
        rho = np.where(xi < s.sigma1, left.rho, np.where(xi > s.sigma2, right.rho, s.rho_star))
        u = np.where(xi < s.sigma1, left.u, np.where(xi > s.sigma2, right.u, s.u_star))
        return rho, u

    return s, profile


def cmd_solve(args, out):
    g = GasModel(args.gamma)
    left, right = _states(args)
    _kv(out, "gamma", g.gamma)
    if left == right:
        out.write("constant solution\n")
        _kv(out, "rho", left.rho)
        _kv(out, "u", left.u)
        if args.samples > 0:
            xi = np.linspace(args.xi_min, args.xi_max, args.samples)
            out.write(format_table(("xi", "rho", "u"), (xi, np.full_like(xi, left.rho), np.full_like(xi, left.u))))
        return 0
    try:
        fan = solve_riemann(RiemannProblem(g, left, right))
    except ConvergenceError:
        s, profile = _log_star_fan(g, left, right)
        _kv(out, "config", f"{Region.IV.name} ({Region.IV.value})")
        _kv(out, "log_rho_star", s.L)
        _kv(out, "u_star", s.u_star)
        _kv(out, "wave1", f"shock speed={fmt(s.sigma1)}")
        _kv(out, "wave2", f"shock speed={fmt(s.sigma2)}")
        ok = True
    else:
        profile = lambda xi: fan.profile(xi)[:2]  # noqa: E731
        _kv(out, "config", f"{fan.config.name} ({fan.config.value})")
        if fan.star is not None:
            _kv(out, "rho_star", fan.star.rho)
            _kv(out, "u_star", fan.star.u)
        else:
            _kv(out, "vacuum", f"{fmt(fan.vacuum[0])},{fmt(fan.vacuum[1])}")
        for w in fan.waves:
            if w.is_shock:
                _kv(out, f"wave{w.family}", f"shock speed={fmt(w.speed)}")
            else:
                _kv(out, f"wave{w.family}", f"rarefaction head={fmt(w.left_speed)} tail={fmt(w.right_speed)}")
        residuals = fan.rh_residuals(relative=True)
        for (fam, *_), res in zip(fan.shocks(), residuals):
            _kv(out, f"rh_residual{fam}", ",".join(fmt(r) for r in res))
        entropy = fan.entropy_ok()
        _kv(out, "entropy", "ok" if entropy else "violated")
        ok = entropy and all(max(abs(v) for v in r) < RH_RTOL for r in residuals)
    if args.samples > 0:
        xi = np.linspace(args.xi_min, args.xi_max, args.samples)
        rho, u = profile(xi)
        out.write(format_table(("xi", "rho", "u"), (xi, rho, u)))
    return 0 if ok else 1


def cmd_delta(args, out):
    left, right = _states(args)
    d = solve_delta(left, right)
    if args.time < 0.0:
        raise EulerLimitError("time must be non-negative")
    _kv(out, "sigma", d.sigma)
    _kv(out, "weight_rate", d.weight_rate)
    _kv(out, "time", args.time)
    _kv(out, "weight", float(d.weight(args.time)))
    _kv(out, "position", d.sigma * args.time)
    res = grh_residual(d, args.time)
    for name, r in zip(("support", "weight", "velocity"), res):
        _kv(out, f"grh_residual_{name}", float(r))
    scale = 1.0 + abs(d.weight_rate) + max(abs(left.u), abs(right.u)) ** 2
    return 0 if all(abs(r) <= 1e-12 * scale for r in res) else 1


def cmd_sweep(args, out):
    left, right = _states(args)
    sigma, a, rate = limit_values(left, right)
    _kv(out, "limit_sigma", sigma)
    _kv(out, "limit_a", a)
    _kv(out, "limit_mass_rate", rate)
    records = sweep(args.gammas, left, right)
    good = [r for r in records if r.ok]
    cols = [[r.gamma for r in good]]
    cols += [[getattr(r.star, k) for r in good] for k in ("L", "u_star", "sigma1", "sigma2", "a_gamma", "mass_rate")]
    cols += [[getattr(r, k) for r in good] for k in DEVIATION_COLUMNS]
    header = ("gamma", "log_rho_star", "u_star", "sigma1", "sigma2", "a_gamma", "mass_rate", *DEVIATION_COLUMNS)
    out.write(format_table(header, cols))
    for r in records:
        if not r.ok:
            sys.stderr.write(f"gamma={fmt(r.gamma)}: {r.error}\n")
    return 0 if len(good) == len(records) else 1


def cmd_weak(args, out):
    g = GasModel(args.gamma)
    left, right = _states(args)
    fan = solve_riemann(RiemannProblem(g, left, right))
    bumps = [Bump(c, w) for c, w in (args.bump or DEFAULT_BUMPS)]
    mass = [residual_mass(fan, b, rtol=args.rtol).relative for b in bumps]
    vel = [residual_velocity(fan, b, rtol=args.rtol).relative for b in bumps]
    _kv(out, "config", f"{fan.config.name} ({fan.config.value})")
    out.write(
        format_table(
            ("center", "width", "mass_residual", "velocity_residual"),
            ([b.center for b in bumps], [b.width for b in bumps], mass, vel),
        )
    )
    return 0 if max(mass + vel) < RESIDUAL_RTOL else 1


def _sim_config(args, gamma, left, right):
    return SimConfig(
        gamma,
        left,
        right,
        domain=(args.x_min, args.x_max),
        cells=args.cells,
        cfl=args.cfl,
        t_end=args.t_end,
    )


def cmd_simulate(args, out):
    left, right = _states(args)
    cfg = _sim_config(args, args.gamma, left, right)
    result = run(cfg, args.times)
    rows = []
    for t, f in sorted(result.snapshots.items()):
        write_snapshot(f, cfg, args.outdir, result.wall_clock)
        d = diagnostics(f)
        rows.append((t, d.mass, d.total_u, d.max_rho, d.rise_position, d.drop_position, d.shock_gap))
    _kv(out, "steps", result.steps)
    _kv(out, "max_conservation_defect", result.max_defect)
    _kv(out, "contained", "yes" if result.contained else "no")
    header = ("time", "mass", "total_u", "max_rho", "rise_position", "drop_position", "shock_gap")
    out.write(format_table(header, list(zip(*rows))))
    if not result.contained:
        sys.stderr.write("warning: waves reached the boundary; conservation checked up to that point only\n")
    return 0 if result.max_defect < CONSERVATION_RTOL else 1


def exact_overlay(gamma, left, right, x, t):
    """Exact ``(rho, u)`` on ``x`` at time ``t`` and ``(sigma1, sigma2, u_star)``.

    Falls back to the log-density solve when the star density overflows.
    """
    g = GasModel(gamma)
    xi = np.asarray(x, dtype=float) / t
    try:
        fan = solve_riemann(RiemannProblem(g, left, right))
    except ConvergenceError:
        s, profile = _log_star_fan(g, left, right)
        return (*profile(xi), (s.sigma1, s.sigma2, s.u_star))
    rho, u, _ = fan.profile(xi)
    sp = fan.speeds
    return rho, u, (sp[0], sp[-1], fan.star.u if fan.star is not None else math.nan)


def _strictly(values, increasing):
    pairs = list(zip(values, values[1:]))
    return all((b > a) if increasing else (b < a) for a, b in pairs)


def cmd_repro_figs(args, out):
    outdir = args.outdir
    outdir.mkdir(parents=True, exist_ok=True)
    failures = []

    def guarded(label, fn, *a):
        try:
            fn(*a)
        except OSError as exc:
            failures.append(f"{label}: {exc}")
            sys.stderr.write(f"could not write {label}: {exc}\n")

    summary = []
    for gamma in REPRO_GAMMAS:
        cfg = _sim_config(args, gamma, REPRO_LEFT, REPRO_RIGHT)
        result = run(cfg)
        f = result.final
        d = diagnostics(f)
        tag = f"gamma{gamma:g}"
        guarded(f"snapshot {tag}", write_snapshot, f, cfg, outdir, result.wall_clock)
        guarded(f"density_{tag}.csv", write_table, outdir / f"density_{tag}.csv", ("x", "rho"), (f.x, f.rho))
        guarded(f"velocity_{tag}.csv", write_table, outdir / f"velocity_{tag}.csv", ("x", "u"), (f.x, f.u))
        rho_e, u_e, (s1, s2, us) = exact_overlay(gamma, REPRO_LEFT, REPRO_RIGHT, f.x, f.t)
        guarded(f"exact_{tag}.csv", write_table, outdir / f"exact_{tag}.csv", ("x", "rho", "u"), (f.x, rho_e, u_e))
        summary.append((gamma, d.max_rho, d.shock_gap, s1, s2, us))
        if result.max_defect >= CONSERVATION_RTOL:
            failures.append(f"{tag}: conservation defect {result.max_defect:.3e}")
        if not result.contained:
            failures.append(f"{tag}: waves reached the boundary")

    dl = solve_delta(REPRO_LEFT, REPRO_RIGHT)
    t = args.t_end
    guarded(
        "delta_reference.csv",
        write_table,
        outdir / "delta_reference.csv",
        ("sigma", "weight_rate", "time", "weight", "position"),
        ([dl.sigma], [dl.weight_rate], [t], [float(dl.weight(t))], [dl.sigma * t]),
    )
    header = ("gamma", "peak_rho", "shock_gap", "sigma1", "sigma2", "u_star")
    columns = list(zip(*summary))
    guarded("summary.csv", write_table, outdir / "summary.csv", header, columns)
    out.write(format_table(header, columns))

    peaks, gaps = [r[1] for r in summary], [r[2] for r in summary]
    if not _strictly(peaks, increasing=True):
        failures.append("peak density is not strictly increasing as gamma decreases")
    if not _strictly(gaps, increasing=False):
        failures.append("shock gap is not strictly decreasing as gamma decreases")
    _kv(out, "checks", "ok" if not failures else "failed")
    for msg in failures:
        sys.stderr.write(f"check failed: {msg}\n")
    return 0 if not failures else 1


COMMANDS = {
    "solve": cmd_solve,
    "delta": cmd_delta,
    "sweep": cmd_sweep,
    "weak": cmd_weak,
    "simulate": cmd_simulate,
    "repro-figs": cmd_repro_figs,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "samples", 0) < 0:
        parser.error("--samples must be non-negative")
    try:
        return COMMANDS[args.command](args, out)
    except BlowUpError as exc:
        sys.stderr.write(f"blow-up: {exc}\n")
        return 3
    except (EulerLimitError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
