#!/usr/bin/env python
"""
Command line front end.

    c3msv steering    --nbar 3 --phi-frac 1/8 --all-cases
    c3msv rgs         --nbar 3 --phi-grid 0:1.5707963267949:33
    c3msv decoherence --nbar 3 --phi-frac 1/8 --nr 0,0.5,1 --case 23to1 --sudden-death
    c3msv negativity  --nbar 3 --scheme 1a_2 --phi-grid 0:1.5707963267949:5 --oracle
    c3msv wigner      --nbar 3 --scheme 1a_2 --grid=-4:4:64
    c3msv moments     --nbar 2 --spec 0,1,0,0,1,0
    c3msv selftest

Exit codes: 0 success, 1 a closed form disagreed with the generic route, 2 invalid input,
3 numerical failure, 4 quadrature did not converge (partial output is kept).
"""

from __future__ import division

import argparse
import concurrent.futures
import functools
import itertools
import json
import logging
import math
import sys

import numpy as np

from c3msv.errors import C3MSVError, ConfigError, NonConvergenceError, VacuumSubtractionError
from c3msv.gaussian.squeezing import SqueezingConfig
from c3msv.analysis.steering import CASE_LABELS, CLOSED_FORM_VARIANTS, gaussian_steering, get_case, \
    residual_gaussian_steering, steering_table
from c3msv.analysis.decoherence import DECAY_VARIANTS, ChannelParams, evolve_cm, sudden_death_time
from c3msv.analysis.schemes import SCHEME_TAGS, get_scheme
from c3msv.analysis.quadrature import QuadratureSpec
from c3msv.analysis.wigner import c3msv_wigner, negativity_details, wigner_closed_form
from c3msv.analysis.fock import build_c3msv_fock, negativity_oracle, subtract_and_reduce, wigner_from_density
from c3msv.analysis.moments import MomentSpec, moment_fock, moment_generating
from c3msv.scripts.output import OUTPUT_FORMATS, TableWriter
from c3msv.scripts.selftest import SELFTEST_COLUMNS, run_selftest
from c3msv.utils import DEFAULTS, parse_grid, parse_phi_fraction

_log = logging.getLogger(__name__)

EXIT_MISMATCH = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_NONCONVERGENCE = 4

STEERING_TOLERANCE = 1e-9


################################################################################
#                                   PARSER                                     #
################################################################################

def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    size = common.add_mutually_exclusive_group()
    size.add_argument('--nbar', help='total mean photon number n_T: value, list "a,b" or grid "start:stop:n" (default 3)')
    size.add_argument('--r', dest='r', help='squeezing r instead of n_T, same syntax')
    angle = common.add_mutually_exclusive_group()
    angle.add_argument('--phi', '--phi-grid', dest='phi', help='split angle phi in radians, same syntax as --nbar')
    angle.add_argument('--phi-frac', help='phi as a fraction of pi, e.g. 1/8 (comma separated for several)')
    common.add_argument('--theta1', type=float, default=0.0, help='phase of the 1-2 coupling')
    common.add_argument('--theta2', type=float, default=0.0, help='phase of the 2-3 coupling')
    common.add_argument('--out', help='output file (default stdout)')
    common.add_argument('--format', choices=OUTPUT_FORMATS, default='csv')
    common.add_argument('--config', help='JSON file with option values; command line flags take precedence')
    common.add_argument('--jobs', type=int, default=1, help='worker processes for grid points')
    common.add_argument('-v', '--verbose', action='count', default=0)
    return common


def _quadrature_arguments(parser):
    parser.add_argument('--tol', type=float, default=DEFAULTS['quad_tol'], help='quadrature refinement tolerance')
    parser.add_argument('--points', type=int, default=DEFAULTS['points_per_dim'], help='starting points per dimension')
    parser.add_argument('--half-width', type=float, default=DEFAULTS['half_width'],
                        help='grid half width in whitened standard deviations')
    parser.add_argument('--max-refinements', type=int, default=DEFAULTS['max_refinements'])


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(prog='c3msv', description='Steering and Wigner negativity of the coupled '
                                     'three-mode squeezed vacuum')
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    p = sub.add_parser('steering', parents=[common], help='Gaussian steering of the twelve bipartitions')
    p.add_argument('--case', action='append', help='case label such as 23->1 or 23to1 (repeatable)')
    p.add_argument('--all-cases', action='store_true', help='all twelve cases (the default)')
    p.add_argument('--variant', choices=CLOSED_FORM_VARIANTS, default='published', help='closed form variant')
    p.add_argument('--rgs', action='store_true', help='report residual Gaussian steering instead')

    sub.add_parser('rgs', parents=[common], help='residual Gaussian steering')

    p = sub.add_parser('decoherence', parents=[common], help='steering in thermal reservoirs')
    p.add_argument('--gamma', default='1', help='loss rate, or three comma separated rates')
    p.add_argument('--nr', default='0', help='reservoir occupations (value, list or grid)')
    p.add_argument('--case', action='append', help='case label (repeatable, default 23->1)')
    p.add_argument('--times', default='0:1:21', help='grid of gamma*t values')
    p.add_argument('--sudden-death', action='store_true', help='report the sudden-death time instead')
    p.add_argument('--variant', choices=DECAY_VARIANTS, default='moment', help='decay variant')
    p.add_argument('--bisection-tol', type=float, default=DEFAULTS['bisection_tol'])

    p = sub.add_parser('negativity', parents=[common], help='Wigner negativity of remotely subtracted states')
    p.add_argument('--scheme', action='append', help='scheme tag such as 1a_2 or 1a|2 (repeatable, default all)')
    p.add_argument('--oracle', action='store_true', help='add the Fock-basis negativity')
    p.add_argument('--cutoff', type=int, help='Fock cutoff for --oracle (default automatic)')
    p.add_argument('--oracle-points', type=int, default=48, help='starting points per dimension of the oracle grid')
    p.add_argument('--oracle-tol', type=float, default=1e-3)
    _quadrature_arguments(p)

    p = sub.add_parser('wigner', parents=[common], help='Wigner function on a grid, beta = (x + ip)/sqrt(2)')
    target = p.add_mutually_exclusive_group()
    target.add_argument('--scheme', help='scheme tag')
    target.add_argument('--c3msv', action='store_true', help='unsubtracted three-mode state on a one-mode slice')
    p.add_argument('--slice-mode', type=int, default=1, help='mode varied with --c3msv, the others sit at 0')
    p.add_argument('--grid', default='-4:4:33', help='grid for every x and p axis')
    p.add_argument('--oracle', action='store_true', help='add the displaced-parity value')
    p.add_argument('--cutoff', type=int, help='Fock cutoff for --oracle (default automatic)')

    p = sub.add_parser('moments', parents=[common], help='normally ordered moments, two ways')
    p.add_argument('--spec', action='append', help='k1,k2,k3,l1,l2,l3 (repeatable, default 0,0,0,0,0,0)')
    p.add_argument('--cutoff', type=int, help='Fock cutoff (default automatic)')
    p.add_argument('--budget', type=float, default=1e-14, help='truncation defect budget for the automatic cutoff')

    p = sub.add_parser('selftest', parents=[common], help='run the acceptance checks')
    p.add_argument('--quick', action='store_true', help='skip the four-dimensional oracle integral')
    return parser


def load_config(path):
    """Read a JSON config file into a dict keyed by argparse destinations."""
    try:
        with open(path) as f:
            data = json.load(f)
    except (IOError, OSError, ValueError) as e:
        raise ConfigError('Cannot read config file {}: {}'.format(path, e))
    if not isinstance(data, dict):
        raise ConfigError('Config file {} must hold a JSON object'.format(path))
    return {key.lstrip('-').replace('-', '_'): value for key, value in data.items()}


def parse_arguments(argv):
    """Parse ``argv`` with values from ``--config`` as defaults beneath the explicit flags."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.config:
        return args
    config = load_config(args.config)
    known = set(vars(args))
    unknown = sorted(set(config) - known)
    if unknown:
        raise ConfigError('Unknown keys in config file {}: {}'.format(args.config, ', '.join(unknown)))
    subparsers = [action for action in parser._actions if isinstance(action, argparse._SubParsersAction)][0]
    subparsers.choices[args.command].set_defaults(**config)
    return parser.parse_args(argv)


################################################################################
#                                   HELPERS                                    #
################################################################################

def _grid(value, name):
    grid = parse_grid(value)
    if grid.size == 0:
        raise ConfigError('{} grid is empty'.format(name))
    return grid


def config_grid(args):
    """SqueezingConfigs for every (size, phi) pair of the grids, size outermost."""
    if args.phi_frac:
        phis = [parse_phi_fraction(part) for part in args.phi_frac.split(',')]
    elif args.phi is not None:
        phis = _grid(args.phi, 'phi').tolist()
    else:
        phis = [math.pi/8]
    configs = []
    if args.r is not None:
        for r, phi in itertools.product(_grid(args.r, 'r'), phis):
            configs.append(SqueezingConfig(r, phi, args.theta1, args.theta2))
    else:
        nbars = _grid(args.nbar if args.nbar is not None else '3', 'nbar')
        for nbar, phi in itertools.product(nbars, phis):
            configs.append(SqueezingConfig.from_nbar(nbar, phi, args.theta1, args.theta2))
    return configs


def pool_map(func, items, jobs):
    """Ordered map over a process pool (plain map for a single job)."""
    if jobs is None or jobs <= 1:
        for item in items:
            yield func(item)
        return
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as executor:
        for result in executor.map(func, items):
            yield result


def _point(cfg):
    return {'nbar': cfg.nbar_total, 'phi': cfg.phi}


def _quadrature(args):
    return QuadratureSpec(args.half_width, args.points, args.tol, args.max_refinements)


################################################################################
#                                  COMMANDS                                    #
################################################################################

def _steering_rows(cfg, labels, variant):
    rows = []
    for result in steering_table(cfg, variant):
        if result.case.label not in labels:
            continue
        row = _point(cfg)
        row.update(theta1=cfg.theta1, theta2=cfg.theta2, case=result.case.label, g_generic=result.value,
                   g_closed_form=result.closed_form, delta=result.deviation, flag=result.flag)
        rows.append(row)
    return rows


def _rgs_row(cfg):
    result = residual_gaussian_steering(cfg)
    steered_min, steering_min = result.family_minima
    row = _point(cfg)
    row.update(rgs=result.value, argmin=result.argmin_permutation, collective=result.collective,
               steered_min=steered_min, steering_min=steering_min)
    return row


def cmd_steering(args, outcome):
    if args.rgs:
        return cmd_rgs(args, outcome)
    labels = [get_case(label).label for label in args.case] if args.case else list(CASE_LABELS)
    columns = ['nbar', 'phi', 'theta1', 'theta2', 'case', 'g_generic', 'g_closed_form', 'delta', 'flag']
    worker = functools.partial(_steering_rows, labels=labels, variant=args.variant)

    def records():
        for rows in pool_map(worker, config_grid(args), args.jobs):
            for row in rows:
                if row['flag'] is None and row['delta'] > STEERING_TOLERANCE:
                    outcome['exit'] = EXIT_MISMATCH
                    _log.warning('closed form of %s deviates by %.3e at n_T=%g phi=%g', row['case'], row['delta'],
                                 row['nbar'], row['phi'])
                yield row
    return columns, records()


def cmd_rgs(args, outcome):
    columns = ['nbar', 'phi', 'rgs', 'argmin', 'collective', 'steered_min', 'steering_min']
    return columns, pool_map(_rgs_row, config_grid(args), args.jobs)


def _channel(args, n_r):
    gammas = [float(g) for g in str(args.gamma).split(',')]
    if len(gammas) == 1:
        gammas = gammas*3
    return ChannelParams(gammas, [n_r]*3)


def _trajectory_rows(cfg, channel, labels, scaled_times, variant):
    gamma_max = max(channel.gamma)
    rows = []
    for label in labels:
        case = get_case(label)
        for gamma_t in scaled_times:
            t = gamma_t/gamma_max if gamma_max > 0 else gamma_t
            row = _point(cfg)
            row.update(n_r=channel.n_r[0], case=case.label, gamma_t=gamma_t,
                       g=gaussian_steering(evolve_cm(cfg, channel, t, variant), case.partition).value)
            rows.append(row)
    return rows


def _death_rows(cfg, channel, labels, variant, tol):
    gamma_max = max(channel.gamma)
    rows = []
    for label in labels:
        case = get_case(label)
        t_star = sudden_death_time(cfg, channel, case, tol=tol, variant=variant)
        if t_star is None:
            status, value = 'no-death', None
        elif t_star == 0:
            status, value = 'no-steering', '0'
        else:
            status, value = 'death', '%.6g' % (t_star*gamma_max)
        row = _point(cfg)
        row.update(n_r=channel.n_r[0], case=case.label, variant=variant, gamma_t_death=value, status=status)
        rows.append(row)
    return rows


def cmd_decoherence(args, outcome):
    labels = [get_case(label).label for label in args.case] if args.case else ['23->1']
    tasks = [(cfg, _channel(args, n_r)) for cfg in config_grid(args) for n_r in _grid(args.nr, 'nr')]
    if args.sudden_death:
        columns = ['nbar', 'phi', 'n_r', 'case', 'variant', 'gamma_t_death', 'status']
        worker = functools.partial(_apply_death, labels=labels, variant=args.variant, tol=args.bisection_tol)
    else:
        columns = ['nbar', 'phi', 'n_r', 'case', 'gamma_t', 'g']
        times = _grid(args.times, 'times')
        if times[0] < 0 or np.any(np.diff(times) <= 0):
            raise ConfigError('Times must be nonnegative and increasing, got {}'.format(args.times))
        worker = functools.partial(_apply_trajectory, labels=labels, scaled_times=times.tolist(), variant=args.variant)
    return columns, itertools.chain.from_iterable(pool_map(worker, tasks, args.jobs))


def _apply_death(task, labels, variant, tol):
    return _death_rows(task[0], task[1], labels, variant, tol)


def _apply_trajectory(task, labels, scaled_times, variant):
    return _trajectory_rows(task[0], task[1], labels, scaled_times, variant)


def _negativity_rows(cfg, tags, quad, oracle):
    rows = []
    state = None
    for tag in tags:
        details = negativity_details(wigner_closed_form(cfg, tag), quad)
        row = _point(cfg)
        row.update(scheme=tag, negativity=details.value, refinements=details.refinements,
                   last_delta=details.last_delta, points=details.points_per_dim)
        if oracle is not None:
            if state is None:
                state = build_c3msv_fock(cfg, cutoff=oracle['cutoff'])
            try:
                rho = subtract_and_reduce(state, tag).density
            except VacuumSubtractionError as e:
                _log.warning('%s', e)
            else:
                oracle_result = negativity_oracle(rho, oracle['quad'])
                row.update(negativity_oracle=oracle_result.value,
                           oracle_delta=abs(oracle_result.value - details.value))
        rows.append(row)
    return rows


def cmd_negativity(args, outcome):
    tags = [get_scheme(tag).tag for tag in args.scheme] if args.scheme else list(SCHEME_TAGS)
    columns = ['nbar', 'phi', 'scheme', 'negativity', 'refinements', 'last_delta', 'points']
    oracle = None
    if args.oracle:
        columns += ['negativity_oracle', 'oracle_delta']
        oracle = {'cutoff': args.cutoff,
                  'quad': QuadratureSpec(6.0, args.oracle_points, args.oracle_tol, 2)}
    worker = functools.partial(_negativity_rows, tags=tags, quad=_quadrature(args), oracle=oracle)
    return columns, itertools.chain.from_iterable(pool_map(worker, config_grid(args), args.jobs))


def cmd_wigner(args, outcome):
    configs = config_grid(args)
    if len(configs) != 1:
        raise ConfigError('wigner takes a single (n_T, phi) point, got {}'.format(len(configs)))
    cfg = configs[0]
    axis = _grid(args.grid, 'grid')
    if args.c3msv:
        if args.slice_mode not in (1, 2, 3):
            raise ConfigError('Slice mode must be 1, 2 or 3, got {}'.format(args.slice_mode))
        wigner = c3msv_wigner(cfg)
        modes = (args.slice_mode,)
        density = None
    else:
        scheme = get_scheme(args.scheme or '1a|2')
        wigner = wigner_closed_form(cfg, scheme)
        modes = wigner.modes
        density = None
        if args.oracle:
            density = subtract_and_reduce(build_c3msv_fock(cfg, cutoff=args.cutoff), scheme).density
    columns = [name for m in modes for name in ('x{}'.format(m), 'p{}'.format(m))] + ['w']
    if density is not None:
        columns += ['w_oracle']
    points = np.array(list(itertools.product(axis, repeat=2*len(modes))))
    betas = [(points[:, 2*i] + 1j*points[:, 2*i + 1])/math.sqrt(2) for i in range(len(modes))]
    if args.c3msv:
        arguments = [np.zeros_like(betas[0])]*3
        arguments[args.slice_mode - 1] = betas[0]
        values = wigner(*arguments)
    else:
        values = wigner(*betas)
    oracle_values = wigner_from_density(density, *betas) if density is not None else None

    def records():
        for i, point in enumerate(points):
            row = dict(zip(columns, point.tolist()))
            row['w'] = float(values[i])
            if oracle_values is not None:
                row['w_oracle'] = float(oracle_values[i])
            yield row
    return columns, records()


def cmd_moments(args, outcome):
    specs = [MomentSpec.from_string(text) for text in (args.spec or ['0,0,0,0,0,0'])]
    for spec in specs:
        if spec.degree > 8:
            raise ConfigError('Moment {} has degree {}; at most 8 is supported'.format(spec.label, spec.degree))
    columns = ['nbar', 'phi', 'spec', 'generating_re', 'generating_im', 'fock_re', 'fock_im', 'delta', 'cutoff']

    def records():
        for cfg in config_grid(args):
            state = build_c3msv_fock(cfg, cutoff=args.cutoff, budget=args.budget)
            for spec in specs:
                generating = moment_generating(cfg, spec)
                fock = moment_fock(state, spec)
                row = _point(cfg)
                row.update(spec=spec.label, generating_re=generating.real, generating_im=generating.imag,
                           fock_re=fock.real, fock_im=fock.imag, delta=abs(generating - fock), cutoff=state.cutoff)
                yield row
    return columns, records()


def cmd_selftest(args, outcome):
    def records():
        for row in run_selftest(quick=args.quick):
            if row.status != 'PASS':
                outcome['exit'] = EXIT_MISMATCH
            yield row._asdict()
    return list(SELFTEST_COLUMNS), records()


COMMANDS = {
    'steering': cmd_steering,
    'rgs': cmd_rgs,
    'decoherence': cmd_decoherence,
    'negativity': cmd_negativity,
    'wigner': cmd_wigner,
    'moments': cmd_moments,
    'selftest': cmd_selftest,
}


################################################################################
#                                     RUN                                      #
################################################################################

def _configure_logging(verbosity):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')


def run(args, stream):
    """Execute a parsed command, writing its table to ``stream``; returns the exit code."""
    outcome = {'exit': 0}
    columns, records = COMMANDS[args.command](args, outcome)
    meta = {'command': args.command, 'config': {k: v for k, v in sorted(vars(args).items())
                                                if k not in ('out', 'config', 'verbose')}}
    writer = TableWriter(stream, columns, args.format, meta=meta)
    try:
        for record in records:
            writer.write(record)
    except NonConvergenceError as e:
        writer.close(status='non-convergence', message=str(e), estimates=list(e.estimates))
        _log.error('%s', e)
        return EXIT_NONCONVERGENCE
    except C3MSVError as e:
        writer.close(status='error', message=str(e))
        _log.error('%s', e)
        return EXIT_CONFIG if isinstance(e, ConfigError) else EXIT_NUMERIC
    except np.linalg.LinAlgError as e:
        writer.close(status='error', message=str(e))
        _log.error('%s', e)
        return EXIT_NUMERIC
    writer.close(status='ok' if outcome['exit'] == 0 else 'mismatch')
    return outcome['exit']


def main(argv=None):
    try:
        args = parse_arguments(sys.argv[1:] if argv is None else argv)
    except ConfigError as e:
        sys.stderr.write('c3msv: {}\n'.format(e))
        return EXIT_CONFIG
    _configure_logging(args.verbose)
    try:
        if args.out:
            with open(args.out, 'w', newline='') as stream:
                return run(args, stream)
        return run(args, sys.stdout)
    except ConfigError as e:
        _log.error('%s', e)
        return EXIT_CONFIG
    except NonConvergenceError as e:
        _log.error('%s', e)
        return EXIT_NONCONVERGENCE
    except C3MSVError as e:
        _log.error('%s', e)
        return EXIT_NUMERIC


if __name__ == '__main__':
    raise SystemExit(main())
