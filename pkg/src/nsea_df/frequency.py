"""RMS-gain frequency sweeps and 0 dB crossing extraction.

Gains are the ratio of output to input torque RMS over one input period.
With the default two-period runs from rest that window is ``[T, 2T]``; with
longer runs it is the final period.
"""

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .describing import build_sample_table
from .errors import NoCrossingError, SweepError, WindowError
from .simulate import (SimConfig, SineExcitation, simulate_df_linear,
                       simulate_physical)

__all__ = ['FreqResponsePoint', 'FreqResponseGrid', 'ZeroCrossingRow',
           'ZeroCrossingComparison', 'rms_gain', 'sweep',
           'zero_crossing_frequency', 'table2', 'DEFAULT_AMPLITUDES',
           'DEFAULT_FREQUENCIES', 'MODELS']

DEFAULT_AMPLITUDES = tuple(range(1, 16, 2))
DEFAULT_FREQUENCIES = tuple(range(1, 31))
MODELS = ('physical', 'df')


@dataclass(frozen=True)
class FreqResponsePoint:
    A_tau: float
    f: float
    G: float

    @property
    def G_dB(self):
        return 20.0 * math.log10(self.G)


@dataclass(frozen=True)
class FreqResponseGrid:
    """Gains over ascending amplitudes (rows) and frequencies (columns)."""
    model: str
    amplitudes: tuple
    frequencies: tuple
    gains: np.ndarray

    def row(self, i):
        return [FreqResponsePoint(self.amplitudes[i], f, float(g))
                for f, g in zip(self.frequencies, self.gains[i])]

    def points(self):
        return [p for i in range(len(self.amplitudes)) for p in self.row(i)]

    def zero_crossings(self):
        """Zero-crossing frequency per amplitude, in row order."""
        return [zero_crossing_frequency(self.row(i))
                for i in range(len(self.amplitudes))]


def rms_gain(ts, T, start=1):
    """Ratio of output to input torque RMS over ``[start T, (start+1) T]``.

    Both integrals use the trapezoid rule on the stored samples.  The window
    edges must fall on samples.
    """
    dt = ts.dt
    per = T / dt
    n_per = round(per)
    if abs(per - n_per) > 1e-6 * per:
        raise WindowError(f"sample step {dt:g} s does not divide T={T:g} s")
    i0, i1 = start * n_per, (start + 1) * n_per
    if start < 0 or i1 > len(ts.t) - 1:
        raise WindowError(
            f"series covers {ts.t[-1]:.6g} s, window needs "
            f"[{start * T:.6g}, {(start + 1) * T:.6g}] s")
    t = ts.t[i0:i1 + 1]
    num = np.trapezoid(ts.tau_hb[i0:i1 + 1] ** 2, t)
    den = np.trapezoid(ts.tau_act[i0:i1 + 1] ** 2, t)
    return math.sqrt(num / den)


def _simulate(model, act, geom, exc, cfg, table):
    if model == 'physical':
        return simulate_physical(act, geom, exc, cfg)
    if model == 'df':
        return simulate_df_linear(act, geom, exc, cfg, table)
    raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")


def _cell(args):
    model, act, geom, A_tau, f, cfg, table = args
    exc = SineExcitation(A_tau, f)
    try:
        ts = _simulate(model, act, geom, exc, cfg, table)
        return rms_gain(ts, exc.period, start=cfg.periods - 1), None
    except Exception as e:  # collected per cell, re-raised as SweepError
        return None, e


def sweep(act, geom, model, amplitudes=DEFAULT_AMPLITUDES,
          frequencies=DEFAULT_FREQUENCIES, cfg=None, workers=1, table=None):
    """Simulate every (amplitude, frequency) cell and collect RMS gains.

    Parameters
    ----------
    act : ActuatorParams
    geom : NseeGeometry
    model : {'physical', 'df'}
    amplitudes, frequencies : sequence of float
        Torque amplitudes [N m] and frequencies [Hz]; sorted ascending in the
        returned grid.
    cfg : SimConfig, optional
        The gain window is the last simulated period.
    workers : int, optional
        Worker processes; 1 runs in-process.
    table : TorqueSampleTable, optional
        Sample table for the 'df' model (default settings when omitted).

    Returns
    -------
    FreqResponseGrid

    Raises
    ------
    SweepError
        If any cell fails; lists every failed cell.
    """
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")
    amps = tuple(sorted(float(a) for a in amplitudes))
    freqs = tuple(sorted(float(f) for f in frequencies))
    if not amps or not freqs:
        raise ValueError("amplitude and frequency lists must be nonempty")
    cfg = cfg or SimConfig()
    if model == 'df' and table is None:
        table = build_sample_table(geom)
    jobs = [(model, act, geom, a, f, cfg, table) for a in amps for f in freqs]
    workers = max(1, min(workers or os.cpu_count() or 1, len(jobs)))
    if workers == 1:
        results = [_cell(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_cell, jobs, chunksize=4))
    failures = [(j[3], j[4], e) for j, (_, e) in zip(jobs, results)
                if e is not None]
    if failures:
        raise SweepError(failures)
    gains = np.array([g for g, _ in results]).reshape(len(amps), len(freqs))
    gains.flags.writeable = False
    return FreqResponseGrid(model, amps, freqs, gains)


def zero_crossing_frequency(row):
    """Largest grid frequency with ``G >= 1`` and ``G < 1`` at every higher one.

    `row` is a sequence of `FreqResponsePoint` for one amplitude; it is
    ordered by frequency here.
    """
    row = sorted(row, key=lambda p: p.f)
    if not row:
        raise NoCrossingError("empty gain row")
    if row[-1].G >= 1:
        raise NoCrossingError(
            f"gain still {row[-1].G:.3g} >= 1 at the top of the grid "
            f"({row[-1].f:g} Hz); extend the frequency grid")
    for p in reversed(row):
        if p.G >= 1:
            return p.f
    raise NoCrossingError("gain below 1 at every grid frequency")


@dataclass(frozen=True)
class ZeroCrossingRow:
    amplitude: float
    f_zc_physical: float
    f_zc_df: float

    @property
    def diff(self):
        return self.f_zc_physical - self.f_zc_df


@dataclass(frozen=True)
class ZeroCrossingComparison:
    rows: tuple
    physical: FreqResponseGrid
    df: FreqResponseGrid

    def format(self):
        lines = [f"{'amplitude [Nm]':>15} {'physical [Hz]':>14} "
                 f"{'describing fn [Hz]':>19} {'diff [Hz]':>10}"]
        for r in self.rows:
            lines.append(f"{r.amplitude:>15g} {r.f_zc_physical:>14g} "
                         f"{r.f_zc_df:>19g} {r.diff:>10g}")
        return "\n".join(lines)


def table2(act, geom, cfg=None, amplitudes=DEFAULT_AMPLITUDES,
           frequencies=DEFAULT_FREQUENCIES, workers=1, table=None):
    """Zero-crossing frequencies of both models on a common grid."""
    phys = sweep(act, geom, 'physical', amplitudes, frequencies, cfg, workers)
    df = sweep(act, geom, 'df', amplitudes, frequencies, cfg, workers, table)
    rows = tuple(ZeroCrossingRow(a, fp, fd) for a, fp, fd in
                 zip(phys.amplitudes, phys.zero_crossings(),
                     df.zero_crossings()))
    return ZeroCrossingComparison(rows, phys, df)
