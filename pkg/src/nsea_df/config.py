"""Experiment configuration: JSON loading, validation and unit conversion.

Spring stiffness is given in N/mm, matching how actuator data sheets list
it, and converted to N/m here.  Everything past this module is SI.
"""

import copy
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import ConfigError
from .linear_sea import ActuatorParams
from .nsee import NseeGeometry
from .simulate import SimConfig

__all__ = ['ExperimentConfig', 'load_config', 'default_config',
           'DEFAULT_CONFIG_PATH']

DEFAULT_CONFIG_PATH = resources.files('nsea_df') / 'data' / 'default_config.json'

N_PER_MM = 1000.0

# section -> key -> required
_SCHEMA = {
    'actuator': {'J_act': True, 'D_act': True},
    'nsee': {'n': True, 'k_s_N_per_mm': True, 'R_m': True, 'r_m': True},
    'simulation': {'dt': False, 'periods': False, 'theta0': False,
                   'theta_dot0': False},
    'sweep': {'amplitudes_Nm': False, 'frequencies_Hz': False},
    'describing_function': {'theta_table_max': False, 'n_samples': False,
                            'n_quad': False},
    'lpv': {'K': False},
    'output_dir': False,
}


@dataclass(frozen=True)
class ExperimentConfig:
    actuator: ActuatorParams
    geometry: NseeGeometry
    sim: SimConfig
    amplitudes: tuple
    frequencies: tuple
    theta_table_max: float
    n_samples: int
    n_quad: int
    K: float
    output_dir: Path

    def to_dict(self):
        """Inverse of `from_dict` (stiffness back in N/mm)."""
        return {
            'actuator': {'J_act': self.actuator.J_act,
                         'D_act': self.actuator.D_act},
            'nsee': {'n': self.geometry.n,
                     'k_s_N_per_mm': self.geometry.k_s / N_PER_MM,
                     'R_m': self.geometry.R, 'r_m': self.geometry.r},
            'simulation': {'dt': self.sim.dt, 'periods': self.sim.periods,
                           'theta0': self.sim.theta0,
                           'theta_dot0': self.sim.theta_dot0},
            'sweep': {'amplitudes_Nm': list(self.amplitudes),
                      'frequencies_Hz': list(self.frequencies)},
            'describing_function': {'theta_table_max': self.theta_table_max,
                                    'n_samples': self.n_samples,
                                    'n_quad': self.n_quad},
            'lpv': {'K': self.K},
            'output_dir': str(self.output_dir),
        }

    @classmethod
    def from_dict(cls, raw, defaults=None):
        """Validate `raw`, filling optional keys from `defaults`."""
        if not isinstance(raw, dict):
            raise ConfigError("config root must be a JSON object")
        _check_keys(raw, _SCHEMA, '')
        merged = copy.deepcopy(defaults) if defaults else {}
        for key, val in raw.items():
            if isinstance(val, dict):
                merged.setdefault(key, {}).update(val)
            else:
                merged[key] = val
        for section, keys in _SCHEMA.items():
            if isinstance(keys, dict):
                for key, required in keys.items():
                    if required and key not in merged.get(section, {}):
                        raise ConfigError(f"{section}.{key}: required key missing")

        act = merged['actuator']
        ns = merged['nsee']
        sim = merged.get('simulation', {})
        sw = merged.get('sweep', {})
        dfc = merged.get('describing_function', {})
        with _naming('actuator'):
            actuator = ActuatorParams(_num(act, 'J_act'), _num(act, 'D_act'))
        with _naming('nsee'):
            if ns['R_m'] is not None and ns['r_m'] is not None \
                    and not _num(ns, 'R_m') > _num(ns, 'r_m'):
                raise ConfigError(
                    f"nsee.R_m: must satisfy R > r > 0 (R_m={ns['R_m']}, "
                    f"r_m={ns['r_m']})")
            geometry = NseeGeometry(_int(ns, 'n'),
                                    _num(ns, 'k_s_N_per_mm') * N_PER_MM,
                                    _num(ns, 'R_m'), _num(ns, 'r_m'))
        with _naming('simulation'):
            dt = sim.get('dt')
            simcfg = SimConfig(dt=None if dt is None else _num(sim, 'dt'),
                               periods=_int(sim, 'periods', 2),
                               theta0=_num(sim, 'theta0', 0.0),
                               theta_dot0=_num(sim, 'theta_dot0', 0.0))
        amps = _positive_list(sw, 'amplitudes_Nm', 'sweep',
                              list(range(1, 16, 2)))
        freqs = _positive_list(sw, 'frequencies_Hz', 'sweep',
                               list(range(1, 31)))
        with _naming('describing_function'):
            table_max = _num(dfc, 'theta_table_max', 1.5)
            n_samples = _int(dfc, 'n_samples', 301)
            n_quad = _int(dfc, 'n_quad', 4096)
        if not table_max > 0:
            raise ConfigError("describing_function.theta_table_max: must be > 0")
        if n_samples < 2:
            raise ConfigError("describing_function.n_samples: must be >= 2")
        if n_quad < 256:
            raise ConfigError("describing_function.n_quad: must be >= 256")
        with _naming('lpv'):
            K = _num(merged.get('lpv', {}), 'K', 1.0)
        if not K > 0:
            raise ConfigError("lpv.K: must be > 0")
        return cls(actuator, geometry, simcfg, tuple(amps), tuple(freqs),
                   table_max, n_samples, n_quad, K,
                   Path(merged.get('output_dir', 'out')))


class _naming:
    """Re-raise ValueError from a section's constructors as ConfigError."""

    def __init__(self, section):
        self.section = section

    def __enter__(self):
        return self

    def __exit__(self, typ, exc, tb):
        if typ is None or not issubclass(typ, ValueError):
            return False
        msg = str(exc)
        if msg.startswith(self.section + '.'):
            return False
        sep = '.' if issubclass(typ, ConfigError) else ': '
        raise ConfigError(f"{self.section}{sep}{msg}") from exc


def _check_keys(raw, schema, prefix):
    for key, val in raw.items():
        path = prefix + key
        if key not in schema:
            raise ConfigError(f"{path}: unknown key")
        if isinstance(schema[key], dict):
            if not isinstance(val, dict):
                raise ConfigError(f"{path}: expected an object")
            _check_keys(val, schema[key], path + '.')


def _num(section, key, default=None):
    val = section.get(key, default)
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {val!r}")
    return float(val)


def _int(section, key, default=None):
    val = section.get(key, default)
    if isinstance(val, bool) or not isinstance(val, int):
        raise ConfigError(f"{key}: expected an integer, got {val!r}")
    return val


def _positive_list(section, key, prefix, default):
    val = section.get(key, default)
    if not isinstance(val, list) or not val:
        raise ConfigError(f"{prefix}.{key}: expected a nonempty list")
    for v in val:
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not v > 0:
            raise ConfigError(f"{prefix}.{key}: entries must be positive "
                              f"numbers, got {v!r}")
    return [float(v) for v in val]


def _read_json(path):
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        line = text.splitlines()[e.lineno - 1] if text.strip() else ''
        raise ConfigError(f"{path}:{e.lineno}:{e.colno}: {e.msg}: "
                          f"{line.strip()!r}") from e


def default_config():
    return ExperimentConfig.from_dict(_read_json(DEFAULT_CONFIG_PATH))


def load_config(path=None):
    """Load and validate a JSON config; unset optional keys take the
    shipped defaults."""
    defaults = _read_json(DEFAULT_CONFIG_PATH)
    if path is None:
        return ExperimentConfig.from_dict(defaults)
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"{path}: no such file")
    return ExperimentConfig.from_dict(_read_json(path), defaults)
