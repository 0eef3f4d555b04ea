"""Linear-stiffness SEA baseline: torque law, transfer function and design.

The motor-side inertia ``J_act`` and damping ``D_act`` act through the
elastic element on a fixed (human-side) reference:

    J_act theta'' + D_act theta' + k_sea theta = tau_act

The spring-side inertia appearing in the saturation-frequency formula is taken
to be ``J_act``; no separate spring inertia is modelled.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = ['ActuatorParams', 'LinearSeaSpec', 'linear_torque',
           'sea_frequency_response', 'saturation_frequency',
           'design_stiffness', 'zero_db_crossing']


@dataclass(frozen=True)
class ActuatorParams:
    """Reflected inertia [kg m^2] and viscous damping [N m s/rad]."""
    J_act: float
    D_act: float

    def __post_init__(self):
        if not self.J_act > 0:
            raise ValueError(f"J_act must be > 0, got {self.J_act!r}")
        if not self.D_act >= 0:
            raise ValueError(f"D_act must be >= 0, got {self.D_act!r}")


@dataclass(frozen=True)
class LinearSeaSpec:
    k_sea: float
    tau_max: float
    theta_max: float
    omega_sat: float

    def __post_init__(self):
        for name in ('k_sea', 'tau_max', 'theta_max', 'omega_sat'):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")


def linear_torque(spec, theta):
    """Torque of a linear elastic element, ``k_sea * theta``."""
    k = spec.k_sea if isinstance(spec, LinearSeaSpec) else spec
    return k * np.asarray(theta, dtype=float)


def sea_frequency_response(act, k_sea, omega):
    """Evaluate ``k / (J s^2 + D s + k)`` at ``s = j omega``.

    Parameters
    ----------
    act : ActuatorParams
    k_sea : float
        Series stiffness [N m/rad], must be positive.
    omega : float or array_like
        Angular frequency [rad/s].

    Returns
    -------
    complex or ndarray of complex
        Motor-torque to output-torque gain.
    """
    if not k_sea > 0:
        raise ValueError(f"k_sea must be > 0, got {k_sea!r}")
    return _second_order(k_sea, act.J_act, act.D_act, omega)


def _second_order(k, J, D, omega):
    # k * conj(den) / |den|^2 keeps the DC gain exactly 1
    w = np.asarray(omega, dtype=float)
    re = k - J * w * w
    im = D * w
    mag2 = re * re + im * im
    return (k * re / mag2) - 1j * (k * im / mag2)


def saturation_frequency(act, k_sea):
    """Frequency where the torque gain starts to fall, ``sqrt(k/J)`` [rad/s]."""
    if not k_sea > 0:
        raise ValueError(f"k_sea must be > 0, got {k_sea!r}")
    return math.sqrt(k_sea / act.J_act)


def design_stiffness(act, omega_sat, tau_max):
    """Pick ``k_sea = omega_sat^2 J`` and the matching peak deflection."""
    if not omega_sat > 0 or not tau_max > 0:
        raise ValueError("omega_sat and tau_max must be > 0")
    k = omega_sat ** 2 * act.J_act
    return LinearSeaSpec(k_sea=k, tau_max=tau_max, theta_max=tau_max / k,
                         omega_sat=omega_sat)


def zero_db_crossing(act, k_sea):
    """Frequency above which the gain stays below 1 [rad/s].

    ``|k / (k - J w^2 + j D w)| = 1`` has the nonzero root
    ``w^2 = 2k/J - D^2/J^2``.  Returns None when ``D^2 >= 2 k J``: the gain
    then never exceeds 1 above DC.
    """
    J, D = act.J_act, act.D_act
    w2 = 2.0 * k_sea / J - (D / J) ** 2
    if w2 <= 0:
        return None
    return math.sqrt(w2)
