#
# Copyright (C) 2022 Vaticle
#
# Licensed to the Apache Software Foundation (ASF) under one
# or more contributor license agreements.  See the NOTICE file
# distributed with this work for additional information
# regarding copyright ownership.  The ASF licenses this file
# to you under the Apache License, Version 2.0 (the
# "License"); you may not use this file except in compliance
# with the License.  You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing,
# software distributed under the License is distributed on an
# "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
# KIND, either express or implied.  See the License for the
# specific language governing permissions and limitations
# under the License.
#


import argparse
import logging
import os
import sys
from dataclasses import replace
from enum import IntEnum
from pathlib import Path

from harq_ec.cli.config import load_scenario
from harq_ec.cli.validation import SUITES, run_validation
from harq_ec.effective_capacity.curve import CurveTable
from harq_ec.effective_capacity.sweep import SweepAxis, ec_sweep, sweep_point
from harq_ec.errors import ConfigError, HarqEcError
from harq_ec.mode_graph.builders import build_mode_graph, build_strategy1, build_strategy2
from harq_ec.mode_graph.companion import alpha_matrix
from harq_ec.mode_graph.config import Strategy
from harq_ec.mode_graph.sentinel import sentinel_outage_table, sentinel_strategy1_outages
from harq_ec.monte_carlo.outage_estimate import estimate_outage
from harq_ec.monte_carlo.plan import derived_seed
from harq_ec.outage.scheme import OutageQuery, closed_form_outage

logger = logging.getLogger(__name__)

THREADS_VARIABLE = 'HARQ_EC_THREADS'


class ExitCode(IntEnum):
    OK = 0
    VALIDATION_FAILED = 1
    CONFIG_ERROR = 2
    NUMERIC_FAILURE = 3


def parse_args(argv=None):
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', type=Path, help='Scenario INI file')
    common.add_argument('--seed', type=int, help='Overrides the [sim] seed')
    common.add_argument('--out', type=Path, help='Output path, standard output when omitted')
    common.add_argument('--threads', type=int, help=f'Worker count, overrides {THREADS_VARIABLE}')
    common.add_argument('-v', '--verbose', action='store_true', help='Log at DEBUG level')

    parser = argparse.ArgumentParser(prog='harq-ec',
                                     description='Outage and effective capacity of HARQ relaying schemes')
    commands = parser.add_subparsers(dest='command', required=True)

    outage = commands.add_parser('outage', parents=[common], help='Outage probability along the sweep grid')
    outage.add_argument('--mc', action='store_true', help='Add Monte Carlo estimates and their standard errors')

    commands.add_parser('ec', parents=[common], help='Effective capacity along the sweep grid')

    matrix = commands.add_parser('matrix', parents=[common], help='Companion matrix of the configured scheme')
    matrix.add_argument('--theta', type=float, help='QoS exponent, overrides [qos] theta')
    matrix.add_argument('--sentinel', action='store_true',
                        help='Use reciprocal-prime outage values so every entry can be traced')

    validate = commands.add_parser('validate', parents=[common], help='Run the acceptance checks')
    validate.add_argument('--suite', choices=sorted(SUITES), default='reduced')
    validate.add_argument('--tolerance-scale', type=float, default=1.0,
                          help='Multiplies every acceptance tolerance')
    return parser.parse_args(argv)


def worker_count(args):
    if args.threads is not None:
        threads = args.threads
    else:
        value = os.environ.get(THREADS_VARIABLE, '1')
        try:
            threads = int(value)
        except ValueError:
            raise ConfigError(f'{THREADS_VARIABLE} must be an integer, got {value!r}')
    if threads < 1:
        raise ConfigError(f'Worker count must be at least 1, got {threads}')
    return threads


def scenario(args):
    if args.config is None:
        raise ConfigError(f'The {args.command} command needs --config')
    config = load_scenario(args.config)
    if args.seed is not None:
        try:
            config = replace(config, plan=config.plan.with_seed(args.seed))
        except HarqEcError as e:
            raise ConfigError(f'Invalid --seed: {e}')
    return config


def output_path(args, config):
    return args.out if args.out is not None else config.output


def cmd_outage(args):
    config = scenario(args)
    axis = config.sweep_axis
    if axis is None:
        raise ConfigError('The outage command needs a sweep', 'sweep', 'axis')
    if axis in (SweepAxis.THETA, SweepAxis.SNR_SR_DB):
        raise ConfigError(f'Outage curves sweep snr_db, snr_sd_db, snr_rd_db or rate, got {axis.value}',
                          'sweep', 'axis')
    n_jobs = worker_count(args)
    out = output_path(args, config)

    for count, relay_count in config.counts:
        closed, estimates, errors = [], [], []
        for index, x in enumerate(config.grid):
            cfg, _ = sweep_point(config.strategy, config.qos, axis, x)
            query = OutageQuery(config.outage_scheme, cfg.links.sd, cfg.rt, count, cfg.links.rd, relay_count)
            closed.append(closed_form_outage(query, cfg.contour))
            if args.mc:
                plan = config.plan.with_seed(derived_seed(config.plan.seed, count, relay_count, index))
                estimate = estimate_outage(query, plan, n_jobs)
                estimates.append(estimate.estimate)
                errors.append(estimate.std_error)
        extra = {'mc_estimate': estimates, 'mc_stderr': errors} if args.mc else {}
        curve = CurveTable(axis.value, config.grid, closed, _outage_metadata(config, query), 'closed_form', extra)
        logger.info('Outage %s %s over %d points', config.outage_scheme.value, query.label, len(curve))
        _emit(curve.to_csv(), _labelled(out, query.label) if out is not None else None)
    return ExitCode.OK


def cmd_ec(args):
    config = scenario(args)
    if config.sweep_axis is None:
        raise ConfigError('The ec command needs a sweep', 'sweep', 'axis')
    curve = ec_sweep(config.strategy, config.qos, config.sweep_axis, config.grid, n_jobs=worker_count(args),
                     progress=sys.stderr.isatty())
    if len(curve) == 0:
        logger.error('Effective capacity failed at every grid point')
        return ExitCode.NUMERIC_FAILURE
    _emit(curve.to_csv(), output_path(args, config))
    return ExitCode.OK


def cmd_matrix(args):
    config = scenario(args)
    cfg = config.strategy
    qos = config.qos if args.theta is None else _with_theta(config.qos, args.theta)
    if not args.sentinel:
        graph = build_mode_graph(cfg)
    elif cfg.strategy is Strategy.I:
        graph = build_strategy1(cfg, sentinel_strategy1_outages())
    else:
        graph = build_strategy2(cfg, sentinel_outage_table(cfg.source_budget, cfg.relay_budget))
    matrix = alpha_matrix(graph, qos)

    out = output_path(args, config)
    if out is None:
        matrix.to_csv(sys.stdout)
    else:
        matrix.to_csv(out)
    if qos.theta == 0:
        sums = ' '.join(f'{s:.15g}' for s in matrix.column_sums())
        print(f'column sums: {sums}', file=sys.stderr)
    return ExitCode.OK


def cmd_validate(args):
    seed = args.seed
    if seed is None:
        seed = load_scenario(args.config).plan.seed if args.config is not None else 0
    report = run_validation(SUITES[args.suite], seed, args.tolerance_scale, worker_count(args))
    for check in report.checks:
        print(check.line())
    summary = report.to_json()
    print(summary)
    if args.out is not None:
        _emit(summary + '\n', args.out)
    return ExitCode.OK if report.passed else ExitCode.VALIDATION_FAILED


COMMANDS = {
    'outage': cmd_outage,
    'ec': cmd_ec,
    'matrix': cmd_matrix,
    'validate': cmd_validate,
}


def main(argv=None):
    args = parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    logging.captureWarnings(True)
    try:
        return int(COMMANDS[args.command](args))
    except ConfigError as e:
        logger.error('Configuration error: %s', e)
        return int(ExitCode.CONFIG_ERROR)
    except HarqEcError as e:
        logger.error('Numeric failure: %s', e)
        return int(ExitCode.NUMERIC_FAILURE)


def _with_theta(qos, theta):
    try:
        return qos.with_theta(theta)
    except HarqEcError as e:
        raise ConfigError(f'Invalid --theta: {e}')


def _outage_metadata(config, query):
    overridden = {
        SweepAxis.SNR_DB: {'snr_sd_db', 'snr_rd_db'},
        SweepAxis.SNR_SD_DB: {'snr_sd_db'},
        SweepAxis.SNR_RD_DB: {'snr_rd_db'},
        SweepAxis.RATE: {'rate'},
    }[config.sweep_axis]
    links = config.strategy.links
    metadata = {
        'scheme': config.outage_scheme.value,
        'count': query.label,
        'rate': f'{config.strategy.rt.rate:g}',
        'snr_sd_db': f'{links.sd.snr_db:g}',
        'fading_sd': f'{links.sd.fading_variance:g}',
    }
    if query.scheme.combined:
        metadata['snr_rd_db'] = f'{links.rd.snr_db:g}'
        metadata['fading_rd'] = f'{links.rd.fading_variance:g}'
    metadata = {key: value for key, value in metadata.items() if key not in overridden}
    metadata['axis'] = config.sweep_axis.value
    return metadata


def _labelled(path, label):
    return path.with_name(f'{path.stem}_{label}{path.suffix or ".csv"}')


def _emit(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, 'w', newline='') as f:
        f.write(text)
    logger.info('Wrote %s', path)


if __name__ == "__main__":
    sys.exit(main())
