import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate as sint

from eulerlimit.errors import DomainError, NotADeltaWaveError
from eulerlimit.model import State
from eulerlimit.pressureless import (
    DeltaWaveSolution,
    WeightedDirac,
    distributional_residuals,
    general_weight_rate,
    grh_residual,
    jump,
    pair,
    solve_delta,
)
from eulerlimit.quadrature import Bump, TensorBump

densities = st.floats(0.1, 10.0)
velocities = st.floats(-5.0, 5.0)


def test_jump():
    assert jump(1.0, 3.0) == 2.0


class TestSolveDelta:
    def test_two_shock_data(self, two_shock):
        d = solve_delta(*two_shock)
        assert d.sigma == 0.5
        assert d.weight_rate == 3.5
        # the general form sigma[rho] - [rho u] evaluated by hand
        assert 0.5 * 0.5 - (-1.0 - 2.25) == 3.5
        assert general_weight_rate(d.sigma, *two_shock) == pytest.approx(3.5, abs=1e-15)
        assert float(d.weight(0.3)) == pytest.approx(1.05, rel=1e-15)

    def test_symmetric(self):
        d = solve_delta(State(1.0, 1.0), State(1.0, -1.0))
        assert d.sigma == 0.0 and d.weight_rate == 2.0

    def test_vanishing_jump(self):
        d = solve_delta(State(1.0, 1.0 + 1e-12), State(2.0, 1.0))
        assert d.weight_rate == pytest.approx(0.0, abs=1e-11)
        assert d.sigma == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("ur", [1.0, 2.0])
    def test_rejects(self, ur):
        with pytest.raises(NotADeltaWaveError):
            solve_delta(State(1.0, 1.0), State(1.0, ur))

    @given(densities, densities, velocities, st.floats(1e-3, 5.0))
    def test_invariants(self, rl, rr, ur, du):
        left, right = State(rl, ur + du), State(rr, ur)
        d = solve_delta(left, right)
        assert right.u < d.sigma < left.u
        assert d.weight_rate > 0
        assert d.weight_rate == pytest.approx(general_weight_rate(d.sigma, left, right), rel=1e-12, abs=1e-12)
        assert all(abs(r) <= 1e-12 * (1 + d.weight_rate + left.u**2 + right.u**2) for r in grh_residual(d, 1.0))

    @given(densities, densities, velocities, st.floats(1e-3, 5.0), st.floats(-3, 3))
    def test_galilean_shift(self, rl, rr, ur, du, c):
        a = solve_delta(State(rl, ur + du), State(rr, ur))
        b = solve_delta(State(rl, ur + du + c), State(rr, ur + c))
        assert b.sigma == pytest.approx(a.sigma + c, abs=1e-12)
        assert b.weight_rate == pytest.approx(a.weight_rate, rel=1e-9)


class TestResiduals:
    def test_exact_zero(self, two_shock):
        assert grh_residual(solve_delta(*two_shock), 1.0) == (0.0, 0.0, 0.0)

    def test_perturbations(self, two_shock):
        left, right = two_shock
        d = solve_delta(left, right)
        eps = 1e-3
        moved = DeltaWaveSolution(d.sigma + eps, d.weight_rate, left, right, support_speed=d.sigma)
        r_x, _, r_u = grh_residual(moved, 1.0)
        assert r_u == pytest.approx(eps * (right.u - left.u), rel=1e-9)
        heavier = DeltaWaveSolution(d.sigma, d.weight_rate + eps, left, right)
        assert grh_residual(heavier, 1.0)[1] == pytest.approx(eps, rel=1e-9)

    def test_negative_time(self, two_shock):
        with pytest.raises(DomainError):
            grh_residual(solve_delta(*two_shock), -1.0)

    def test_distributional(self, two_shock):
        d = solve_delta(*two_shock)
        for tb, xb in [((0.5, 0.3), (0.25, 0.3)), ((1.0, 0.8), (0.4, 1.0)), ((0.6, 0.5), (0.0, 0.6))]:
            mass, vel = distributional_residuals(d, TensorBump(Bump(*tb), Bump(*xb)))
            assert mass < 1e-6 and vel < 1e-6

    def test_distributional_detects_wrong_weight(self, two_shock):
        left, right = two_shock
        wrong = DeltaWaveSolution(0.5, 3.0, left, right)
        mass, _ = distributional_residuals(wrong, TensorBump(Bump(0.5, 0.3), Bump(0.25, 0.3)))
        assert mass > 1e-3


class TestPair:
    def test_against_scipy(self, two_shock):
        d = solve_delta(*two_shock)
        # a smooth cutoff in t, constant one along x on the support
        phi = TensorBump(Bump(0.5, 0.5), Bump(0.0, 100.0))
        ref, _ = sint.quad(
            lambda t: 3.5 * t * float(phi(np.array([t]), np.array([0.5 * t]))[0]), 0.0, 1.0, epsabs=0, epsrel=1e-12
        )
        assert pair(d.dirac(), phi) == pytest.approx(ref, rel=1e-9)

    def test_zero_weight(self):
        zero = WeightedDirac(0.5, lambda t: 0.0 * np.asarray(t))
        assert pair(zero, TensorBump(Bump(0.5, 0.3), Bump(0.2, 0.3))) == 0.0

    def test_disjoint_support(self, two_shock):
        d = solve_delta(*two_shock)
        # the line x = t/2 never meets [2, 3] for t in [0.2, 1]
        assert pair(d.dirac(), TensorBump(Bump(0.6, 0.4), Bump(2.5, 0.5))) == 0.0

    def test_needs_finite_support(self, two_shock):
        class Unbounded:
            t_support = (0.0, math.inf)

            def __call__(self, t, x):
                return np.ones_like(t)

        with pytest.raises(DomainError):
            pair(solve_delta(*two_shock).dirac(), Unbounded())
