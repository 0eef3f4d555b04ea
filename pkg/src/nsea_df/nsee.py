"""Torque and stiffness laws of the nonlinear-stiffness series elastic element.

Two bars pivot coaxially and are coupled by ``n`` tension springs attached at
radii ``R`` (outer) and ``r`` (inner).  Relative deflection ``theta`` between
the bars stretches the springs and produces a hardening torque.

All functions accept scalars or numpy arrays and are pure.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DeflectionRangeError

__all__ = ['NseeGeometry', 'DeflectionState', 'spring_length',
           'spring_tension', 'torque_exact', 'potential_energy',
           'stiffness_exact', 'torque_maclaurin', 'stiffness_maclaurin']


@dataclass(frozen=True)
class NseeGeometry:
    """Spring count, spring stiffness and attachment radii (SI units).

    ``alpha = 2 (R - r)^2 / (R r)`` [rad^2] and ``beta = R r`` [m^2] are
    derived on construction and cannot be passed in.
    """
    n: int
    k_s: float
    R: float
    r: float
    alpha: float = field(init=False)
    beta: float = field(init=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be an integer >= 1, got {self.n!r}")
        if not self.k_s > 0:
            raise ValueError(f"k_s must be > 0, got {self.k_s!r}")
        if not self.r > 0:
            raise ValueError(f"r must be > 0, got {self.r!r}")
        if not self.R > self.r:
            raise ValueError(
                f"R must be greater than r (R > r > 0), got R={self.R!r}, "
                f"r={self.r!r}")
        object.__setattr__(
            self, 'alpha', 2.0 * (self.R - self.r) ** 2 / (self.R * self.r))
        object.__setattr__(self, 'beta', self.R * self.r)

    @property
    def gain(self):
        """Asymptotic stiffness ``n k_s beta`` [N m/rad]."""
        return self.n * self.k_s * self.beta

    @property
    def rest_length(self):
        return self.R - self.r


@dataclass(frozen=True)
class DeflectionState:
    theta: float
    theta_dot: float = 0.0

    def __post_init__(self):
        _check_theta(self.theta)


def _check_theta(theta):
    theta = np.asarray(theta, dtype=float)
    if not np.all(np.isfinite(theta)) or np.any(np.abs(theta) >= np.pi):
        bad = theta[~(np.abs(theta) < np.pi)] if theta.ndim else theta
        raise DeflectionRangeError(
            f"deflection must satisfy |theta| < pi, got {np.ravel(bad)[0]!r}")
    return theta


def spring_length(geom, theta):
    """Length of each tension spring at deflection `theta` [m]."""
    theta = _check_theta(theta)
    R, r = geom.R, geom.r
    return np.sqrt(R * R + r * r - 2.0 * R * r * np.cos(theta))


def spring_tension(geom, theta):
    """Hooke tension of one spring, rest length ``R - r`` [N]."""
    return geom.k_s * (spring_length(geom, theta) - geom.rest_length)


def torque_exact(geom, theta):
    """Output torque of the element from the full geometric law [N m]."""
    theta = _check_theta(theta)
    ls = spring_length(geom, theta)
    return geom.gain * (1.0 - geom.rest_length / ls) * np.sin(theta)


def potential_energy(geom, theta):
    """Elastic energy stored in all springs [J]."""
    stretch = spring_length(geom, theta) - geom.rest_length
    return geom.n * 0.5 * geom.k_s * stretch ** 2


def stiffness_exact(geom, theta):
    """Analytic derivative of `torque_exact` with respect to `theta`."""
    theta = _check_theta(theta)
    ls = spring_length(geom, theta)
    d = geom.rest_length
    s, c = np.sin(theta), np.cos(theta)
    return geom.gain * (d * geom.beta * s * s / ls ** 3 + (1.0 - d / ls) * c)


def torque_maclaurin(geom, theta):
    """Rational small-deflection law ``n k_s beta theta^3 / (alpha + theta^2)``.

    Defined for every finite `theta`; tends to slope ``n k_s beta`` for large
    deflections.
    """
    theta = np.asarray(theta, dtype=float)
    th2 = theta * theta
    return geom.gain * theta * th2 / (geom.alpha + th2)


def stiffness_maclaurin(geom, theta):
    """Derivative of `torque_maclaurin`."""
    theta = np.asarray(theta, dtype=float)
    a = geom.alpha
    th2 = theta * theta
    return geom.gain * th2 * (3.0 * a + th2) / (a + th2) ** 2


# Scalar kernels for the integrator hot loop; numpy ufuncs on Python floats
# cost several times more than math.
def _exact_kernel(geom):
    gain, d = geom.gain, geom.rest_length
    R2r2 = geom.R ** 2 + geom.r ** 2
    twoRr = 2.0 * geom.R * geom.r
    sqrt, cos, sin = math.sqrt, math.cos, math.sin

    def tau(theta):
        return gain * (1.0 - d / sqrt(R2r2 - twoRr * cos(theta))) * sin(theta)
    return tau

