import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerlimit.errors import BlowUpError, DomainError
from eulerlimit.exact_riemann import RiemannProblem, solve
from eulerlimit.model import GasModel, State, flux_arrays
from eulerlimit.weno_sim import (
    GHOST,
    Field,
    SimConfig,
    _weno5,
    advance,
    diagnostics,
    format_table,
    gradient_extrema,
    initialize,
    run,
    spatial_operator,
    stable_dt,
    write_snapshot,
)


def two_shock_state(g, rho_star, right):
    """Left state joined to ``right`` by a single 2-shock, and its speed."""
    # [u]^2 = theta [rho^(gamma-1)] [rho] / (rho_star + rho_right)
    du2 = g.theta * (rho_star ** (g.gamma - 1) - right.rho ** (g.gamma - 1)) * (rho_star - right.rho) / (rho_star + right.rho)
    u_star = right.u + math.sqrt(du2)
    sigma = (right.rho * right.u - rho_star * u_star) / (right.rho - rho_star)
    return State(rho_star, u_star), sigma


class TestConfig:
    @pytest.mark.parametrize(
        "kw",
        [
            dict(domain=(0.0, 1.0)),
            dict(cells=19),
            dict(cfl=0.0),
            dict(cfl=0.61),
            dict(t_end=-0.1),
            dict(boundary="periodic"),
            dict(gamma=3.0),
        ],
    )
    def test_rejects(self, two_shock, kw):
        args = dict(gamma=1.3, left=two_shock[0], right=two_shock[1]) | kw
        with pytest.raises(DomainError):
            SimConfig(**args)

    def test_rejects_nonpositive_density(self):
        with pytest.raises(DomainError):
            SimConfig(1.3, State(1.0, 0.0), State(0.0, 0.0, vacuum=True))

    def test_grid(self, two_shock):
        cfg = SimConfig(1.3, *two_shock, domain=(-0.5, 0.5), cells=200)
        f = initialize(cfg)
        assert cfg.dx == 0.005
        assert np.sum(f.x < 0) == 100 and np.sum(f.x > 0) == 100
        assert f.x[0] == pytest.approx(-0.4975, abs=1e-15)
        assert np.all(f.rho[:100] == 1.5) and np.all(f.u[100:] == -0.5)


class TestReconstruction:
    def test_constant_preserved(self):
        a = np.full(7, 2.3)
        assert _weno5(a, a, a, a, a) == pytest.approx(a, rel=1e-15)

    def test_smooth_operator_order(self):
        # interior truncation error of -f(U)_x for smooth data
        g = GasModel(1.4)
        errs = []
        for n in (80, 160, 320):
            x = -1.0 + (np.arange(n) + 0.5) * (2.0 / n)
            rho = 2.0 + 0.5 * np.sin(np.pi * x)
            u = 0.3 * np.cos(np.pi * x)
            drho = 0.5 * np.pi * np.cos(np.pi * x)
            du = -0.3 * np.pi * np.sin(np.pi * x)
            exact_mass = -(drho * u + rho * du)
            exact_vel = -(u * du + 0.5 * g.theta * (g.gamma - 1) * rho ** (g.gamma - 2) * drho)
            L, _, _ = spatial_operator(g, np.stack([rho, u]), 2.0 / n)
            inner = np.abs(x) < 0.5
            errs.append(max(np.abs(L[0] - exact_mass)[inner].max(), np.abs(L[1] - exact_vel)[inner].max()))
        orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
        assert np.all(orders > 4.5), orders

    def test_uniform_state_is_steady(self):
        cfg = SimConfig(1.3, State(1.2, 0.7), State(1.2, 0.7), cells=50, t_end=0.2)
        r = run(cfg)
        assert np.allclose(r.final.rho, 1.2, rtol=1e-14, atol=0)
        assert np.allclose(r.final.u, 0.7, rtol=1e-14, atol=0)

    def test_boundary_fluxes_of_uniform_state(self):
        g = GasModel(1.5)
        U = np.stack([np.full(30, 1.7), np.full(30, -0.4)])
        L, lf, rf = spatial_operator(g, U, 0.1)
        F = np.array(flux_arrays(g, 1.7, -0.4))
        assert np.allclose(lf, F, rtol=1e-14) and np.allclose(rf, F, rtol=1e-14)
        assert np.max(np.abs(L)) < 1e-13


class TestRun:
    def test_minimum_grid(self, two_shock):
        r = run(SimConfig(1.3, *two_shock, cells=20, t_end=0.1))
        assert r.final.rho.shape == (20,) and np.all(np.isfinite(r.final.rho))

    def test_end_time_zero(self, two_shock):
        cfg = SimConfig(1.3, *two_shock, t_end=0.0)
        r = run(cfg)
        assert list(r.snapshots) == [0.0] and r.steps == 0
        assert np.array_equal(r.final.rho, initialize(cfg).rho)

    def test_snapshot_times_hit_exactly(self, two_shock):
        r = run(SimConfig(2.5, *two_shock, t_end=0.3), times=[0.1, 0.2])
        assert sorted(r.snapshots) == [0.1, 0.2, 0.3]
        assert all(f.t == t for t, f in r.snapshots.items())

    def test_snapshot_times_validated(self, two_shock):
        with pytest.raises(DomainError):
            run(SimConfig(2.5, *two_shock, t_end=0.3), times=[0.4])

    def test_uniform_mass(self):
        r = run(SimConfig(1.3, State(1.0, 0.0), State(1.0, 0.0), domain=(-0.5, 0.5), t_end=0.1))
        assert diagnostics(r.final).mass == pytest.approx(1.0, rel=1e-14)

    def test_single_shock_speed(self):
        g = GasModel(1.4)
        right = State(1.0, 0.0)
        left, sigma = two_shock_state(g, 2.0, right)
        fan = solve(RiemannProblem(g, left, right))
        assert fan.star.rho == pytest.approx(2.0, rel=1e-9)
        assert fan.speeds[-1] == pytest.approx(sigma, rel=1e-9)

        t = 0.3
        cfg = SimConfig(1.4, left, right, t_end=t)
        r = run(cfg)
        assert r.contained
        d = diagnostics(r.final)
        # with intact boundary cells the total mass moves only through the constant-state fluxes
        expected_mass = left.rho * 1.0 + right.rho * 1.0 + t * (left.rho * left.u - right.rho * right.u)
        assert d.mass == pytest.approx(expected_mass, rel=1e-13)
        assert (d.mass - 2.0 * (left.rho + right.rho) / 2) / (t * (left.rho - right.rho)) == pytest.approx(sigma, rel=1e-10)
        assert d.drop_position / t == pytest.approx(sigma, rel=0.01)

    def test_gradient_at_origin_initially(self, two_shock):
        f = initialize(SimConfig(1.3, *two_shock))
        rise, drop = gradient_extrema(f)
        assert rise == pytest.approx(0.0, abs=1e-15) and math.isnan(drop)

    def test_mirror_symmetry(self):
        a = run(SimConfig(1.3, State(1.5, 1.5), State(2.0, -0.5), t_end=0.2)).final
        b = run(SimConfig(1.3, State(2.0, 0.5), State(1.5, -1.5), t_end=0.2)).final
        assert np.array_equal(a.rho, b.rho[::-1])
        assert np.array_equal(a.u, -b.u[::-1])

    def test_step_limit(self, two_shock):
        with pytest.raises(BlowUpError):
            run(SimConfig(1.3, *two_shock), max_steps=3)

    def test_blow_up_reported(self, two_shock):
        cfg = SimConfig(1.3, *two_shock)
        f = initialize(cfg)
        with pytest.raises(BlowUpError) as info:
            advance(f, cfg, 200 * stable_dt(f, cfg))
        assert info.value.time is not None and 0 <= info.value.cell < cfg.cells

    def test_containment_flag(self, two_shock):
        assert not run(SimConfig(2.5, *two_shock, t_end=1.5)).contained


class TestConservation:
    @settings(max_examples=15)
    @given(st.sampled_from([2.5, 1.3, 1.05]), st.floats(0.2, 3.0), st.floats(0.2, 3.0), st.floats(-1.0, 1.0), st.floats(0.0, 2.0))
    def test_defect_stays_at_round_off(self, gamma, rl, rr, ur, du):
        cfg = SimConfig(gamma, State(rl, ur + du), State(rr, ur), cells=60, t_end=0.05)
        f = initialize(cfg)
        for _ in range(5):
            f, rep = advance(f, cfg, stable_dt(f, cfg))
            assert np.all(rep.conservation_defect < 1e-12)


class TestOutput:
    def test_table(self):
        text = format_table(("a", "b"), ([0.1, 2.0], [1 / 3, -0.0]))
        assert text == "a,b\n0.10000000000000001,0.33333333333333331\n2,-0\n"

    def test_snapshot_files(self, tmp_path, two_shock):
        cfg = SimConfig(1.3, *two_shock, cells=40, t_end=0.1)
        f = run(cfg).final
        write_snapshot(f, cfg, tmp_path, wall_clock=0.25)
        data = np.loadtxt(tmp_path / "sim_gamma1.3_t0.1.csv", delimiter=",", skiprows=1)
        assert data.shape == (40, 3)
        assert np.array_equal(data[:, 1], f.rho) and np.array_equal(data[:, 2], f.u)
        meta = dict(line.split("=", 1) for line in (tmp_path / "sim_gamma1.3_t0.1.meta").read_text().splitlines())
        assert meta["cells"] == "40" and meta["gamma"] == "1.3" and meta["time"] == "0.10000000000000001"
        assert meta["left"] == "1.5,1.5" and meta["wall_clock"] == "0.250"
        assert {"domain", "cfl", "right"} <= set(meta)

    def test_field_dx(self):
        f = Field(np.array([0.0, 0.25, 0.5]), np.ones(3), np.zeros(3))
        assert f.dx == 0.25 and GHOST == 3
