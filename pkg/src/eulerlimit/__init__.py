"""Riemann problems for isentropic gas dynamics in ``(rho, u)`` variables and
their concentration limit as the adiabatic exponent tends to one."""

from .errors import (
    BlowUpError,
    ConvergenceError,
    DegenerateJumpError,
    DomainError,
    EulerLimitError,
    InconsistentStatesError,
    NotADeltaWaveError,
    PreconditionError,
)
from .exact_riemann import RiemannProblem, WaveFan, sample, solve
from .gamma_limit import StarLog, solve_star_log, sweep
from .model import GasModel, State
from .pressureless import DeltaWaveSolution, solve_delta
from .wave_curves import Region, classify
from .weno_sim import SimConfig, diagnostics, run

__version__ = "0.1.0"
