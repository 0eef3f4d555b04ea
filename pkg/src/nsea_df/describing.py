"""Describing function of the element and torque-to-amplitude inversion.

The element is a memoryless odd nonlinearity, so its describing function is
a real gain.  The closed form is built on the rational small-deflection law
(`torque_maclaurin`); `df_numeric` recomputes it from first-harmonic Fourier
coefficients as an independent check.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, TableRangeError
from .nsee import torque_maclaurin

__all__ = ['FourierFundamental', 'TorqueSampleTable', 'NewtonResult',
           'df_closed_form', 'df_numeric', 'fourier_fundamental',
           'build_sample_table', 'amplitude_from_torque', 'equivalent_torque']

MIN_QUAD = 256


class FourierFundamental(NamedTuple):
    a1: float
    b1: float
    N_est: float


@dataclass(frozen=True)
class TorqueSampleTable:
    """Pre-sampled ``(theta_i, tau_i)`` pairs of the rational torque law."""
    theta: np.ndarray
    tau: np.ndarray

    def __len__(self):
        return len(self.theta)

    @property
    def tau_max(self):
        return float(self.tau[-1])


class NewtonResult(NamedTuple):
    root: float
    iterations: int
    start: float


def df_closed_form(geom, A):
    """Equivalent gain ``N_tau(A)`` for deflection ``A sin(wt)`` [N m/rad].

    With ``x = A^2 / alpha`` and ``s = sqrt(1 + x)`` the textbook expression
    ``1 + (2/x)(1/s - 1)`` is rewritten as ``x (s + 2) / (s (s + 1)^2)``,
    which is algebraically identical but free of cancellation as ``A -> 0``
    (where it tends to ``3x/4``).
    """
    A = np.asarray(A, dtype=float)
    if np.any(~(A > 0)):
        raise ValueError("describing-function amplitude must be > 0")
    x = A * A / geom.alpha
    s = np.sqrt(1.0 + x)
    return geom.gain * x * (s + 2.0) / (s * (s + 1.0) ** 2)


def fourier_fundamental(func, A, n_quad=4096):
    """First-harmonic coefficients of ``func(A sin phi)`` over one cycle.

    Uses the periodic trapezoid rule on ``n_quad`` uniform nodes, which
    converges spectrally for smooth periodic integrands.
    """
    if n_quad < MIN_QUAD:
        raise ValueError(f"n_quad must be >= {MIN_QUAD}, got {n_quad}")
    if not A > 0:
        raise ValueError("amplitude must be > 0")
    phi = 2.0 * np.pi * np.arange(n_quad) / n_quad
    y = func(A * np.sin(phi))
    # (1/pi) * (2 pi / n) * sum(...)
    a1 = 2.0 / n_quad * np.dot(y, np.cos(phi))
    b1 = 2.0 / n_quad * np.dot(y, np.sin(phi))
    return FourierFundamental(float(a1), float(b1), float(b1 / A))


def df_numeric(geom, A, n_quad=4096):
    """Describing function of the rational torque law by quadrature."""
    return fourier_fundamental(lambda th: torque_maclaurin(geom, th), A, n_quad)


def build_sample_table(geom, theta_table_max=1.5, n_samples=301):
    if not theta_table_max > 0:
        raise ValueError("theta_table_max must be > 0")
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    theta = np.linspace(0.0, theta_table_max, n_samples)
    tau = torque_maclaurin(geom, theta)
    theta.flags.writeable = False
    tau.flags.writeable = False
    return TorqueSampleTable(theta, tau)


def amplitude_from_torque(geom, table, A_tau, tol=1e-9, max_iter=50,
                          full_output=False):
    """Deflection amplitude whose rational-law torque equals `A_tau`.

    Newton-Raphson started from the table node whose torque is nearest to
    `A_tau`.  Each update is

        theta <- theta - (tau(theta) - A_tau) (alpha + theta^2)^2
                         / (n k_s beta (3 alpha + theta^2) theta^2)

    and iteration stops once ``|tau(theta) - A_tau| < tol * max(1, A_tau)``.

    Parameters
    ----------
    geom : NseeGeometry
    table : TorqueSampleTable
    A_tau : float
        Torque amplitude [N m], ``0 < A_tau <= table.tau_max``.
    tol : float, optional
        Relative residual tolerance.
    max_iter : int, optional
        Newton update cap; exceeding it raises `ConvergenceError`.
    full_output : bool, optional
        If True, return a `NewtonResult` with the iteration count and start.

    Returns
    -------
    float or NewtonResult
    """
    if not 0 < A_tau <= table.tau_max:
        raise TableRangeError(
            f"torque amplitude {A_tau!r} outside sampled range "
            f"(0, {table.tau_max:.6g}]")
    i = int(np.argmin(np.abs(table.tau - A_tau)))
    if table.theta[i] == 0.0:
        # zero slope at the origin node
        i = 1
    theta = float(table.theta[i])
    start = theta
    a, gain = geom.alpha, geom.gain
    target = tol * max(1.0, A_tau)
    for it in range(max_iter + 1):
        th2 = theta * theta
        resid = gain * theta * th2 / (a + th2) - A_tau
        if abs(resid) < target:
            if full_output:
                return NewtonResult(theta, it, start)
            return theta
        if it == max_iter:
            break
        theta -= resid * (a + th2) ** 2 / (gain * (3.0 * a + th2) * th2)
    raise ConvergenceError(
        f"Newton inversion for A_tau={A_tau!r} did not converge in "
        f"{max_iter} iterations (last theta={theta!r}, residual={resid!r})")


def equivalent_torque(geom, A, theta):
    """Quasi-linear torque ``N_tau(A) * theta``."""
    return df_closed_form(geom, A) * np.asarray(theta, dtype=float)
