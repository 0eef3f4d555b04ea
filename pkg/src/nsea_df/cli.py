"""Command-line front end.

CSV artifacts go to the output directory (``--out``, default from the
config); ``--out -`` streams them to stdout instead.  Errors are reported as
one ``error: <Type>: <message>`` line on stderr with exit status 1.
"""

import argparse
import contextlib
import csv
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import load_config
from .describing import (amplitude_from_torque, build_sample_table,
                         df_closed_form, df_numeric)
from .frequency import sweep, table2
from .linear_sea import ActuatorParams, design_stiffness, zero_db_crossing
from .lpv import LpvPlant, bode_grid, export_schedule
from .nsee import stiffness_exact, torque_exact, torque_maclaurin
from .simulate import (SimConfig, SineExcitation, simulate_df_linear,
                       simulate_physical)

SUBCOMMANDS = ('design', 'nsee', 'df', 'invert', 'simulate', 'sweep',
               'table2', 'lpv')


def _floats(text):
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, "
                                         f"got {text!r}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', type=Path,
                        help="JSON experiment config (default: shipped "
                             "actuator parameters)")
    common.add_argument('--out', help="output directory, or '-' for stdout")
    common.add_argument('--threads', type=int, default=None,
                        help="worker processes for sweeps "
                             "(default: available CPUs)")
    common.add_argument('--json', action='store_true',
                        help="print scalar results as JSON")

    p = argparse.ArgumentParser(
        prog='nsea-df',
        description="Describing-function analysis of a nonlinear-stiffness "
                    "series elastic actuator.")
    p.add_argument('--version', action='version', version=__version__)
    sub = p.add_subparsers(dest='command', metavar='command', required=True)

    d = sub.add_parser('design', parents=[common],
                       help="linear SEA stiffness from bandwidth and torque")
    d.add_argument('--saturation-hz', type=float, default=15.0)
    d.add_argument('--tau-max', type=float, default=15.0)
    d.add_argument('--J-act', type=float, dest='J_act')
    d.add_argument('--D-act', type=float, dest='D_act')

    n = sub.add_parser('nsee', parents=[common],
                       help="torque/stiffness characteristic CSV")
    n.add_argument('--theta-max', type=float, default=1.0)
    n.add_argument('--points', type=int, default=201)
    n.add_argument('--error-curve', action='store_true',
                   help="emit relative error of the rational law instead")

    f = sub.add_parser('df', parents=[common],
                       help="closed-form vs quadrature describing function")
    f.add_argument('--a-min', type=float, default=None,
                   help="default 0.01*sqrt(alpha)")
    f.add_argument('--a-max', type=float, default=None,
                   help="default 10*sqrt(alpha)")
    f.add_argument('--points', type=int, default=20)

    i = sub.add_parser('invert', parents=[common],
                       help="deflection amplitude for torque amplitudes")
    i.add_argument('--amplitudes', type=_floats,
                   help="torque amplitudes [Nm] (default: config sweep)")

    s = sub.add_parser('simulate', parents=[common],
                       help="time series under sinusoidal torque")
    s.add_argument('--model', choices=('physical', 'df'), default='physical')
    s.add_argument('--amplitude', type=float, required=True, help="[Nm]")
    s.add_argument('--frequency', type=float, required=True, help="[Hz]")
    s.add_argument('--periods', type=int)
    s.add_argument('--dt', type=float)

    w = sub.add_parser('sweep', parents=[common],
                       help="RMS-gain frequency response grid")
    w.add_argument('--model', choices=('physical', 'df', 'both'),
                   default='both')
    w.add_argument('--amplitudes', type=_floats)
    w.add_argument('--frequencies', type=_floats)
    w.add_argument('--periods', type=int,
                   help="simulated periods; the gain uses the last one")

    t = sub.add_parser('table2', parents=[common],
                       help="zero-crossing frequencies of both models")
    t.add_argument('--periods', type=int)

    lp = sub.add_parser('lpv', parents=[common],
                        help="LPV gain schedule (and Bode grid) CSV")
    lp.add_argument('--a-min', type=float, default=0.01)
    lp.add_argument('--a-max', type=float, default=1.0)
    lp.add_argument('--points', type=int, default=50)
    lp.add_argument('--K', type=float, default=None)
    lp.add_argument('--bode', action='store_true',
                    help="also emit |G(jw, A)| over the A grid")
    lp.add_argument('--omega-max', type=float, default=2 * math.pi * 100)
    lp.add_argument('--omega-points', type=int, default=200)
    return p


class _Output:
    """Resolves artifact destinations: a directory or stdout."""

    def __init__(self, out, default_dir):
        self.stdout = out == '-'
        self.dir = None if self.stdout else Path(out or default_dir)

    @contextlib.contextmanager
    def open(self, name):
        if self.stdout:
            yield sys.stdout
            return
        self.dir.mkdir(parents=True, exist_ok=True)
        path = self.dir / name
        with open(path, 'w', newline='') as fh:
            yield fh
        print(f"wrote {path}", file=sys.stderr)

    def write_csv(self, name, header, rows):
        with self.open(name) as fh:
            w = csv.writer(fh, lineterminator='\n')
            w.writerow(header)
            w.writerows(rows)


def _g(x):
    return f"{float(x):.10g}"


def _sim_config(cfg, args):
    base = cfg.sim
    periods = getattr(args, 'periods', None) or base.periods
    dt = getattr(args, 'dt', None) or base.dt
    return SimConfig(dt=dt, periods=periods, theta0=base.theta0,
                     theta_dot0=base.theta_dot0)


def _table(cfg):
    return build_sample_table(cfg.geometry, cfg.theta_table_max,
                              cfg.n_samples)


def _workers(args):
    return args.threads or os.cpu_count() or 1


def cmd_design(cfg, args, out):
    J = args.J_act if args.J_act is not None else cfg.actuator.J_act
    D = args.D_act if args.D_act is not None else cfg.actuator.D_act
    act = ActuatorParams(J, D)
    spec = design_stiffness(act, 2 * math.pi * args.saturation_hz,
                            args.tau_max)
    w0 = zero_db_crossing(act, spec.k_sea)
    print(json.dumps({
        'k_sea_Nm_per_rad': spec.k_sea,
        'theta_max_rad': spec.theta_max,
        'omega_sat_rad_s': spec.omega_sat,
        'zero_db_crossing_rad_s': w0,
        'zero_db_crossing_Hz': None if w0 is None else w0 / (2 * math.pi),
    }))


def cmd_nsee(cfg, args, out):
    g = cfg.geometry
    theta = np.linspace(-args.theta_max, args.theta_max, args.points)
    te = torque_exact(g, theta)
    tm = torque_maclaurin(g, theta)
    if args.error_curve:
        with np.errstate(divide='ignore', invalid='ignore'):
            rel = np.where(te != 0, np.abs(tm - te) / np.abs(te), 0.0)
        out.write_csv('nsee_error.csv',
                      ('theta_rad', 'torque_exact_Nm', 'torque_maclaurin_Nm',
                       'rel_err'),
                      (map(_g, r) for r in zip(theta, te, tm, rel)))
        return
    k = stiffness_exact(g, theta)
    out.write_csv('nsee.csv',
                  ('theta_rad', 'torque_exact_Nm', 'torque_maclaurin_Nm',
                   'stiffness_exact_Nm_per_rad'),
                  (map(_g, r) for r in zip(theta, te, tm, k)))


def cmd_df(cfg, args, out):
    g = cfg.geometry
    a_min = args.a_min or 0.01 * math.sqrt(g.alpha)
    a_max = args.a_max or 10 * math.sqrt(g.alpha)
    A = np.geomspace(a_min, a_max, args.points)
    rows = []
    for a in A:
        closed = float(df_closed_form(g, a))
        num = df_numeric(g, a, cfg.n_quad).N_est
        rows.append(map(_g, (a, closed, num, abs(closed - num) / abs(num))))
    out.write_csv('df.csv', ('A_rad', 'N_tau_closed', 'N_tau_numeric',
                             'rel_err'), rows)


def cmd_invert(cfg, args, out):
    g = cfg.geometry
    table = _table(cfg)
    amps = args.amplitudes or list(cfg.amplitudes)
    res = [(a, amplitude_from_torque(g, table, a)) for a in amps]
    if args.json:
        print(json.dumps([{'A_tau_Nm': a, 'A_rad': th,
                           'N_tau': float(df_closed_form(g, th))}
                          for a, th in res]))
    else:
        w = csv.writer(sys.stdout, lineterminator='\n')
        w.writerow(('A_tau_Nm', 'A_rad', 'N_tau_Nm_per_rad'))
        w.writerows((_g(a), _g(th), _g(df_closed_form(g, th)))
                    for a, th in res)


def cmd_simulate(cfg, args, out):
    exc = SineExcitation(args.amplitude, args.frequency)
    sim = _sim_config(cfg, args)
    if args.model == 'physical':
        ts = simulate_physical(cfg.actuator, cfg.geometry, exc, sim)
    else:
        ts = simulate_df_linear(cfg.actuator, cfg.geometry, exc, sim,
                                _table(cfg))
    cols = ts.columns()
    out.write_csv(f'simulate_{args.model}_{args.amplitude:g}Nm_'
                  f'{args.frequency:g}Hz.csv', tuple(cols),
                  (map(_g, r) for r in zip(*cols.values())))


def cmd_sweep(cfg, args, out):
    models = ('physical', 'df') if args.model == 'both' else (args.model,)
    amps = args.amplitudes or cfg.amplitudes
    freqs = args.frequencies or cfg.frequencies
    sim = _sim_config(cfg, args)
    rows = []
    for m in models:
        grid = sweep(cfg.actuator, cfg.geometry, m, amps, freqs, sim,
                     _workers(args), _table(cfg) if m == 'df' else None)
        rows += [(_g(p.A_tau), _g(p.f), _g(p.G), _g(p.G_dB), m)
                 for p in grid.points()]
    out.write_csv(f'sweep_{args.model}.csv',
                  ('amplitude_Nm', 'frequency_Hz', 'gain', 'gain_dB',
                   'model'), rows)


def cmd_table2(cfg, args, out):
    res = table2(cfg.actuator, cfg.geometry, _sim_config(cfg, args),
                 cfg.amplitudes, cfg.frequencies, _workers(args),
                 _table(cfg))
    if args.json:
        print(json.dumps([{'amplitude_Nm': r.amplitude,
                           'f_zc_physical_Hz': r.f_zc_physical,
                           'f_zc_df_Hz': r.f_zc_df, 'diff_Hz': r.diff}
                          for r in res.rows]))
    elif not out.stdout:
        print(res.format())
    out.write_csv('table2.csv',
                  ('amplitude_Nm', 'f_zc_physical_Hz', 'f_zc_df_Hz',
                   'diff_Hz'),
                  ((_g(r.amplitude), _g(r.f_zc_physical), _g(r.f_zc_df),
                    _g(r.diff)) for r in res.rows))


def cmd_lpv(cfg, args, out):
    plant = LpvPlant.from_actuator(cfg.actuator, cfg.geometry,
                                   args.K if args.K is not None else cfg.K)
    A = np.geomspace(args.a_min, args.a_max, args.points)
    with out.open('lpv_schedule.csv') as fh:
        export_schedule(plant, A).write_csv(fh)
    if args.bode:
        omega = np.linspace(0.0, args.omega_max, args.omega_points)
        mag = bode_grid(plant, A, omega)
        with np.errstate(divide='ignore'):
            db = 20 * np.log10(mag)
        out.write_csv('lpv_bode.csv',
                      ('A_rad', 'omega_rad_s', 'magnitude', 'magnitude_dB'),
                      ((_g(a), _g(w), _g(mag[i, j]), _g(db[i, j]))
                       for i, a in enumerate(A)
                       for j, w in enumerate(omega)))


COMMANDS = {name: globals()[f'cmd_{name}'] for name in SUBCOMMANDS}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        out = _Output(args.out, cfg.output_dir)
        COMMANDS[args.command](cfg, args, out)
    except Exception as e:
        msg = ' '.join(str(e).split())
        print(f"error: {type(e).__name__}: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
