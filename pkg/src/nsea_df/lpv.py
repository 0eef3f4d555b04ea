"""Amplitude-scheduled LPV plant built on the describing function.

    G(s, A) = K N_tau(A) / (J s^2 + D s + K N_tau(A))

``K`` is a free positive scalar (default 1), e.g. for lumping a transmission
or torque constant.  Controller synthesis is left to downstream tools; this
module only evaluates the plant and exports its schedule.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np

from .describing import df_closed_form

__all__ = ['LpvPlant', 'GainSchedule', 'lpv_response', 'export_schedule',
           'bode_grid']


@dataclass(frozen=True)
class LpvPlant:
    J: float
    D: float
    geom: object
    K: float = 1.0

    def __post_init__(self):
        if not self.K > 0:
            raise ValueError(f"K must be > 0, got {self.K!r}")
        if not self.J > 0:
            raise ValueError(f"J must be > 0, got {self.J!r}")
        if not self.D >= 0:
            raise ValueError(f"D must be >= 0, got {self.D!r}")

    @classmethod
    def from_actuator(cls, act, geom, K=1.0):
        return cls(act.J_act, act.D_act, geom, K)

    def stiffness(self, A):
        """Scheduled stiffness ``K N_tau(A)``."""
        return self.K * df_closed_form(self.geom, A)


def lpv_response(plant, omega, A):
    """Complex gain of the plant at ``s = j omega`` for amplitude `A`.

    `omega` and `A` broadcast against each other.
    """
    w = np.asarray(omega, dtype=float)
    k = plant.stiffness(A)
    re = k - plant.J * w * w
    im = plant.D * w
    mag2 = re * re + im * im
    return (k * re / mag2) - 1j * (k * im / mag2)


@dataclass(frozen=True)
class GainSchedule:
    A: np.ndarray
    N_tau: np.ndarray
    natural_freq_Hz: np.ndarray
    damping_ratio: np.ndarray

    HEADER = ('A_rad', 'N_tau_Nm_per_rad', 'natural_freq_Hz',
              'damping_ratio')

    def rows(self):
        return zip(self.A, self.N_tau, self.natural_freq_Hz,
                   self.damping_ratio)

    def write_csv(self, fh):
        w = csv.writer(fh, lineterminator='\n')
        w.writerow(self.HEADER)
        w.writerows((f"{a:.10g}", f"{n:.10g}", f"{fn:.10g}", f"{z:.10g}")
                    for a, n, fn, z in self.rows())


def export_schedule(plant, A_grid):
    A = np.asarray(A_grid, dtype=float)
    k = plant.stiffness(A)
    wn = np.sqrt(k / plant.J)
    zeta = plant.D / (2.0 * np.sqrt(plant.J * k))
    return GainSchedule(A, df_closed_form(plant.geom, A),
                        wn / (2.0 * math.pi), zeta)


def bode_grid(plant, A_grid, omega_grid):
    """Magnitude of the plant over an (A x omega) grid, shape (nA, nw)."""
    A = np.asarray(A_grid, dtype=float)[:, None]
    w = np.asarray(omega_grid, dtype=float)[None, :]
    return np.abs(lpv_response(plant, w, A))
