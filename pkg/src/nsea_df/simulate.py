"""Time-domain simulation of the actuator under sinusoidal motor torque.

Both paths integrate

    J_act theta'' + D_act theta' + tau_spring(theta) = A_tau sin(w t)

with fixed-step classical Runge-Kutta from a given initial state.  The
physical path uses the full geometric torque law; the describing-function
path replaces the spring with the constant gain ``N_tau(A)``, where ``A`` is
inverted once from the torque amplitude.
"""

import math
from dataclasses import dataclass

import numpy as np

from .describing import (amplitude_from_torque, build_sample_table,
                         df_closed_form)
from .errors import DeflectionRangeError, StepSizeError
from .nsee import _exact_kernel, torque_exact

__all__ = ['SineExcitation', 'SimConfig', 'TimeSeries', 'rk4_step',
           'simulate_physical', 'simulate_df_linear', 'simulate_linear',
           'default_dt']

MAX_STEP = 1e-4
MIN_STEPS_PER_PERIOD = 1000


@dataclass(frozen=True)
class SineExcitation:
    """Motor torque ``A_tau sin(2 pi f t)``."""
    A_tau: float
    f: float

    def __post_init__(self):
        if not self.A_tau >= 0:
            raise ValueError(f"A_tau must be >= 0, got {self.A_tau!r}")
        if not self.f > 0:
            raise ValueError(f"f must be > 0, got {self.f!r}")

    @property
    def omega(self):
        return 2.0 * math.pi * self.f

    @property
    def period(self):
        return 1.0 / self.f

    def torque(self, t):
        return self.A_tau * np.sin(self.omega * np.asarray(t, dtype=float))


@dataclass(frozen=True)
class SimConfig:
    """Integration settings.

    ``dt=None`` selects ``min(1e-4 s, T/1000)``.  The step actually used is
    shrunk so that a whole number of steps spans one period.
    """
    dt: float | None = None
    periods: int = 2
    theta0: float = 0.0
    theta_dot0: float = 0.0

    def __post_init__(self):
        if self.dt is not None and not self.dt > 0:
            raise ValueError(f"dt must be > 0, got {self.dt!r}")
        if int(self.periods) != self.periods or self.periods < 2:
            raise ValueError(
                f"periods must be an integer >= 2, got {self.periods!r}")

    def steps_per_period(self, period):
        dt = default_dt(period) if self.dt is None else self.dt
        if dt > period / MIN_STEPS_PER_PERIOD * (1 + 1e-9):
            raise StepSizeError(
                f"dt={dt:g} s exceeds T/{MIN_STEPS_PER_PERIOD}="
                f"{period / MIN_STEPS_PER_PERIOD:g} s")
        # 1e-9 slack keeps T/dt = 5000.0000001 from becoming 5001 steps
        return max(MIN_STEPS_PER_PERIOD, math.ceil(period / dt - 1e-9))


def default_dt(period):
    return min(MAX_STEP, period / MIN_STEPS_PER_PERIOD)


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled trajectory; all arrays share the time base `t`."""
    t: np.ndarray
    theta: np.ndarray
    theta_dot: np.ndarray
    tau_act: np.ndarray
    tau_hb: np.ndarray

    def __len__(self):
        return len(self.t)

    @property
    def dt(self):
        return float(self.t[1] - self.t[0])

    def columns(self):
        return {'t_s': self.t, 'theta_rad': self.theta,
                'theta_dot_rad_s': self.theta_dot, 'tau_act_Nm': self.tau_act,
                'tau_hb_Nm': self.tau_hb}


def rk4_step(state, deriv, t, dt):
    """One classical Runge-Kutta step.

    `state` is a sequence of floats and ``deriv(t, state)`` returns a
    sequence of the same length.  Returns the new state as a tuple.
    """
    h2 = 0.5 * dt
    k1 = deriv(t, state)
    k2 = deriv(t + h2, tuple(s + h2 * k for s, k in zip(state, k1)))
    k3 = deriv(t + h2, tuple(s + h2 * k for s, k in zip(state, k2)))
    k4 = deriv(t + dt, tuple(s + dt * k for s, k in zip(state, k3)))
    h6 = dt / 6.0
    return tuple(s + h6 * (a + 2.0 * (b + c) + d)
                 for s, a, b, c, d in zip(state, k1, k2, k3, k4))


def _integrate(act, spring, exc, cfg, check_range):
    """Run the fixed-step loop; returns (t, theta, theta_dot, dt)."""
    n_per = cfg.steps_per_period(exc.period)
    n_steps = n_per * cfg.periods
    dt = exc.period / n_per
    J, D = act.J_act, act.D_act
    A_tau, w = exc.A_tau, exc.omega
    sin = math.sin

    def deriv(t, state):
        th, om = state
        return om, (A_tau * sin(w * t) - D * om - spring(th)) / J

    theta = np.empty(n_steps + 1)
    theta_dot = np.empty(n_steps + 1)
    state = (float(cfg.theta0), float(cfg.theta_dot0))
    theta[0], theta_dot[0] = state
    for i in range(n_steps):
        # t from the step index, not accumulated, so period boundaries are exact
        state = rk4_step(state, deriv, i * dt, dt)
        if check_range and not abs(state[0]) < math.pi:
            raise DeflectionRangeError(
                f"deflection left (-pi, pi) at t={(i + 1) * dt:.6g} s "
                f"(theta={state[0]!r})")
        theta[i + 1], theta_dot[i + 1] = state
    t = np.arange(n_steps + 1) * dt
    return t, theta, theta_dot


def simulate_physical(act, geom, exc, cfg=None):
    """Integrate the actuator with the full geometric spring law."""
    cfg = cfg or SimConfig()
    if not abs(cfg.theta0) < math.pi:
        raise DeflectionRangeError(f"initial deflection {cfg.theta0!r} "
                                   "outside (-pi, pi)")
    t, th, om = _integrate(act, _exact_kernel(geom), exc, cfg, True)
    return TimeSeries(t, th, om, exc.torque(t), torque_exact(geom, th))


def simulate_linear(act, k, exc, cfg=None):
    """Integrate the actuator with a linear spring of stiffness `k`."""
    cfg = cfg or SimConfig()
    k = float(k)
    t, th, om = _integrate(act, lambda x: k * x, exc, cfg, False)
    return TimeSeries(t, th, om, exc.torque(t), k * th)


def simulate_df_linear(act, geom, exc, cfg=None, table=None):
    """Integrate the quasi-linear model with gain ``N_tau(A)``.

    ``A`` is obtained from ``exc.A_tau`` by Newton inversion on `table`
    (built with default settings when omitted) and frozen for the run.  A
    zero torque amplitude uses the ``A -> 0`` limit ``N_tau = 0``.
    """
    if exc.A_tau == 0:
        gain = 0.0
    else:
        table = table if table is not None else build_sample_table(geom)
        A = amplitude_from_torque(geom, table, exc.A_tau)
        gain = float(df_closed_form(geom, A))
    return simulate_linear(act, gain, exc, cfg)
