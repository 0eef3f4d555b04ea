"""Describing-function frequency-response analysis of nonlinear-stiffness
series elastic actuators."""

__version__ = '0.1.0'

from .config import ExperimentConfig, default_config, load_config
from .describing import (FourierFundamental, TorqueSampleTable,
                         amplitude_from_torque, build_sample_table,
                         df_closed_form, df_numeric, equivalent_torque,
                         fourier_fundamental)
from .errors import (ConfigError, ConvergenceError, DeflectionRangeError,
                     NoCrossingError, StepSizeError, SweepError,
                     TableRangeError, WindowError)
from .frequency import (FreqResponseGrid, FreqResponsePoint, rms_gain, sweep,
                        table2, zero_crossing_frequency)
from .linear_sea import (ActuatorParams, LinearSeaSpec, design_stiffness,
                         linear_torque, saturation_frequency,
                         sea_frequency_response, zero_db_crossing)
from .lpv import LpvPlant, export_schedule, lpv_response
from .nsee import (DeflectionState, NseeGeometry, potential_energy,
                   spring_length, spring_tension, stiffness_exact,
                   stiffness_maclaurin, torque_exact, torque_maclaurin)
from .simulate import (SimConfig, SineExcitation, TimeSeries, rk4_step,
                       simulate_df_linear, simulate_linear, simulate_physical)
