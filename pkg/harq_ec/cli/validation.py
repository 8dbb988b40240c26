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


import json
import logging
import math
from dataclasses import asdict, dataclass
from typing import Tuple

import numpy as np
from scipy.integrate import quad

from harq_ec.distributions.erlang import ErlangSpec, erlang_cdf, erlang_pdf, two_erlang_sum_cdf
from harq_ec.distributions.shifted_exp import ShiftedExpProductSpec, sample_shifted_exp_product, \
    shifted_exp_product_cdf
from harq_ec.effective_capacity.capacity import effective_capacity, strategy_effective_capacity
from harq_ec.effective_capacity.curve import snr_gap_db
from harq_ec.effective_capacity.qos import QosParams
from harq_ec.effective_capacity.sweep import SweepAxis, ec_sweep
from harq_ec.mode_graph.builders import build_mode_graph, build_strategy1, build_strategy2
from harq_ec.mode_graph.companion import alpha_matrix
from harq_ec.mode_graph.config import Strategy, StrategyConfig
from harq_ec.mode_graph.reference import strategy1_reference, strategy2_reference
from harq_ec.mode_graph.sentinel import sentinel_outage_table, sentinel_strategy1_outages
from harq_ec.monte_carlo.outage_estimate import compare_ir_rr, estimate_outage
from harq_ec.monte_carlo.plan import SimPlan, derived_seed
from harq_ec.monte_carlo.service import simulate_service_process
from harq_ec.outage.link import LinkParams, Links, RateThreshold
from harq_ec.outage.probability import arq_outage, ir_source_outage, rr_combined_outage, rr_source_outage
from harq_ec.outage.scheme import Combining, OutageQuery, OutageScheme, closed_form_outage
from harq_ec.specfun.mellin_barnes import DEFAULT_CONTOUR

logger = logging.getLogger(__name__)

THETAS = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0)
MIN_COMPARED_OUTAGE = 1e-3
ASYMMETRIC_OFFSET_DB = 5.0


@dataclass(frozen=True)
class Suite:
    """Grid sizes and sample counts of one validation run"""
    name: str
    snr_db: Tuple[float, ...]
    rates: Tuple[float, ...]
    max_count: int
    outage_samples: int
    product_samples: int
    ec_configs: int
    ec_blocks: int
    ec_block_length: int


REDUCED = Suite('reduced', (0.0, 10.0), (1.0, 2.0), 2, 200_000, 1_000_000, 4, 1000, 1000)
FULL = Suite('full', (0.0, 5.0, 10.0, 20.0), (0.5, 1.0, 2.0, 4.0), 4, 1_000_000, 10_000_000, 20, 10_000, 2000)
SUITES = {suite.name: suite for suite in (REDUCED, FULL)}


@dataclass(frozen=True)
class CheckResult:
    criterion: int
    name: str
    passed: bool
    worst_deviation: float
    tolerance: float
    points: int
    detail: str = ''

    def line(self):
        verdict = 'PASS' if self.passed else 'FAIL'
        text = (f'{verdict} [{self.criterion}] {self.name}: worst deviation {self.worst_deviation:.3g} '
                f'(tolerance {self.tolerance:.3g}, {self.points} points)')
        return f'{text} {self.detail}' if self.detail else text


@dataclass(frozen=True)
class ValidationReport:
    suite: str
    seed: int
    tolerance_scale: float
    checks: Tuple[CheckResult, ...]

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def to_json(self):
        summary = {
            'suite': self.suite,
            'seed': self.seed,
            'tolerance_scale': self.tolerance_scale,
            'passed': self.passed,
            'checks': [asdict(check) for check in self.checks],
        }
        return json.dumps(summary, indent=2, default=_json_number)


def run_validation(suite, seed, tolerance_scale=1.0, n_jobs=1):
    """Run every acceptance check of `suite` and collect the verdicts"""
    checks = []
    for check in _CHECKS:
        result = check(suite, seed, tolerance_scale, n_jobs)
        logger.info(result.line())
        checks.append(result)
    return ValidationReport(suite.name, seed, tolerance_scale, tuple(checks))


def check_matrix_fidelity(suite, seed, scale, n_jobs):
    qos = QosParams(0.7, 1.5)
    weight = qos.delivery_weight
    links = Links.symmetric(LinkParams.from_db(10.0))
    rt = RateThreshold(qos.rate)
    outages = sentinel_strategy1_outages()
    actual = alpha_matrix(build_strategy1(StrategyConfig(Strategy.I, links, rt), outages), qos).values
    deviations = [_relative_deviation(actual, strategy1_reference(outages, weight))]
    for source_budget, relay_budget in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        table = sentinel_outage_table(source_budget, relay_budget)
        cfg = StrategyConfig(Strategy.II, links, rt, Combining.RR, source_budget, relay_budget)
        actual = alpha_matrix(build_strategy2(cfg, table), qos).values
        deviations.append(_relative_deviation(actual, strategy2_reference(table, weight)))
    return _result(1, 'matrix fidelity', deviations, 1e-14 * scale)


def check_outage_against_simulation(suite, seed, scale, n_jobs):
    """Closed forms against simulated outage, deviation in binomial standard errors of the closed-form value"""
    deviations = []
    for index, query in enumerate(_outage_queries(suite)):
        closed = closed_form_outage(query)
        if closed < MIN_COMPARED_OUTAGE:
            continue
        plan = SimPlan(seed=derived_seed(seed, 2, index), samples=suite.outage_samples)
        estimate = estimate_outage(query, plan, n_jobs)
        deviations.append(_binomial_deviation(closed, estimate.failures, plan.samples))
    return _result(2, 'outage closed form vs simulation', deviations, 3.0 * scale)


def check_reductions(suite, seed, scale, n_jobs):
    ratios = []
    for snr_db in suite.snr_db:
        link = LinkParams.from_db(snr_db)
        for rate in suite.rates:
            rt = RateThreshold(rate)
            arq = arq_outage(link, rt)
            ratios.append(abs(rr_source_outage(link, 1, rt) - arq) / 1e-12)
            ratios.append(abs(ir_source_outage(link, 1, rt) - arq) / 1e-8)
            for l, k2 in _combined_counts(suite):
                single = erlang_cdf(ErlangSpec(l + k2, link.rate_parameter), rt.threshold)
                ratios.append(abs(rr_combined_outage(link, link, l, k2, rt) - single) / 1e-10)
    return _result(3, 'reduction identities', ratios, scale, 'deviations relative to their tolerances')


def check_ir_dominance(suite, seed, scale, n_jobs):
    excesses = []
    for query in _outage_queries(suite):
        if query.scheme.combining is not Combining.IR:
            continue
        rr_scheme = OutageScheme.RR_COMBINED if query.scheme.combined else OutageScheme.RR_SOURCE
        rr = closed_form_outage(OutageQuery(rr_scheme, query.link, query.rt, query.count, query.relay_link,
                                            query.relay_count))
        excesses.append(max(0.0, closed_form_outage(query) - rr))
    violations = 0
    for index, (l, k2) in enumerate(_combined_counts(suite)):
        plan = SimPlan(seed=derived_seed(seed, 4, index), samples=suite.outage_samples)
        comparison = compare_ir_rr(LinkParams.from_db(suite.snr_db[0]), LinkParams.from_db(suite.snr_db[-1]), l, k2,
                                   RateThreshold(suite.rates[-1]), plan, n_jobs)
        violations += comparison.violations
    passed = _within(max(excesses), 1e-8 * scale) and violations == 0
    return CheckResult(4, 'incremental redundancy dominance', passed, max(excesses), 1e-8 * scale, len(excesses),
                       f'shared-sample violations: {violations}')


def check_distribution_oracles(suite, seed, scale, n_jobs):
    ratios = []
    for a, b, t in _TWO_ERLANG_CASES:
        convolution, _ = quad(lambda s: erlang_pdf(a, s) * erlang_cdf(b, t - s), 0.0, t, epsabs=1e-13, epsrel=1e-12,
                              limit=200)
        ratios.append(abs(two_erlang_sum_cdf(a, b, t) - convolution) / 1e-6)
    for index, (groups, z) in enumerate(_PRODUCT_CASES):
        spec = ShiftedExpProductSpec.of(*groups)
        closed = shifted_exp_product_cdf(spec, z)
        rng = np.random.default_rng(derived_seed(seed, 5, index))
        failures = int(np.count_nonzero(sample_shifted_exp_product(spec, rng, suite.product_samples) <= z))
        ratios.append(_binomial_deviation(closed, failures, suite.product_samples) / 3.0)
        shifted = [shifted_exp_product_cdf(spec, z, DEFAULT_CONTOUR.with_abscissa(c)) for c in (-0.8, -0.5, -0.2)]
        ratios.append((max(shifted) - min(shifted)) / 1e-7)
    return _result(5, 'distribution oracles', ratios, scale, 'deviations relative to their tolerances')


def check_capacity_against_simulation(suite, seed, scale, n_jobs):
    rng = np.random.default_rng(derived_seed(seed, 6))
    errors = []
    for index in range(suite.ec_configs):
        combining = (Combining.RR, Combining.IR)[index % 2]
        links = Links(*(LinkParams.from_db(snr_db) for snr_db in rng.uniform(5.0, 25.0, size=3)))
        rate = float(rng.choice([0.5, 1.0, 2.0]))
        qos = QosParams(float(rng.choice([0.5, 1.0, 2.0])), rate)
        cfg = StrategyConfig(Strategy.II, links, RateThreshold(rate), combining, int(rng.integers(1, 5)),
                             int(rng.integers(1, 5)))
        graph = build_mode_graph(cfg)
        expected = effective_capacity(alpha_matrix(graph, qos), qos)
        plan = SimPlan(seed=derived_seed(seed, 6, index), blocks=suite.ec_blocks, block_length=suite.ec_block_length)
        simulated = simulate_service_process(graph, qos, plan, n_jobs=n_jobs)
        errors.append(abs(simulated.estimate - expected) / expected)
    return _result(6, 'effective capacity vs service simulation', errors, 0.02 * scale, 'relative error')


def check_capacity_structure(suite, seed, scale, n_jobs):
    violations = []
    for snr_db in range(0, 50, 10):
        links = Links.symmetric(LinkParams.from_db(snr_db))
        for rate in (1.0, 2.0, 4.0):
            for source_budget, relay_budget in [(1, 1), (2, 2)]:
                cfg = StrategyConfig(Strategy.II, links, RateThreshold(rate), Combining.RR, source_budget, relay_budget)
                capacities = [strategy_effective_capacity(cfg, theta) for theta in THETAS]
                violations += [max(0.0, -c, c - rate) for c in capacities]
                violations += [max(0.0, lower - higher) for higher, lower in zip(capacities, capacities[1:])]
                stochastic = alpha_matrix(build_mode_graph(cfg), QosParams(0.0, rate))
                violations.append(float(np.max(np.abs(stochastic.column_sums() - 1.0))) - 1e-10)
    high_snr = StrategyConfig(Strategy.II, Links.symmetric(LinkParams.from_db(40.0)), RateThreshold(1.0))
    violations.append(max(0.0, 0.99 - strategy_effective_capacity(high_snr, 1.0)))
    return _result(7, 'effective capacity structure', [max(0.0, v) for v in violations], 1e-12 * scale)


def check_figure_ordering(suite, seed, scale, n_jobs):
    """Truncated cooperation over lossless ARQ cooperation at R = 4, and the growth of its SNR gain with θ"""
    rate = 4.0
    grid = np.arange(0.0, 61.0, 1.0)
    links = Links.symmetric(LinkParams.from_db(0.0))
    gaps = {}
    shortfalls = []
    for theta in (1.0, 4.0):
        qos = QosParams(theta, rate)
        curves = {strategy: ec_sweep(StrategyConfig(strategy, links, RateThreshold(rate)), qos, SweepAxis.SNR_DB, grid)
                  for strategy in Strategy}
        s1, s2 = np.array(curves[Strategy.I].y_values), np.array(curves[Strategy.II].y_values)
        compared = grid <= 40.0
        shortfalls.append(float(np.max(s1[compared] - s2[compared])))
        gaps[theta] = snr_gap_db(curves[Strategy.I], curves[Strategy.II], rate / 2.0)
    worst = max(0.0, *shortfalls)
    passed = _within(worst, 1e-9 * scale) and bool(gaps[4.0] > gaps[1.0])
    return CheckResult(8, 'strategy ordering and gain growth', passed, worst, 1e-9 * scale, 2 * int(np.sum(grid <= 40)),
                       f'gain at C={rate / 2:g}: {gaps[1.0]:.2f} dB at θ=1, {gaps[4.0]:.2f} dB at θ=4')


_CHECKS = (check_matrix_fidelity, check_outage_against_simulation, check_reductions, check_ir_dominance,
           check_distribution_oracles, check_capacity_against_simulation, check_capacity_structure,
           check_figure_ordering)

_TWO_ERLANG_CASES = (
    (ErlangSpec(2, 1.0), ErlangSpec(3, 2.0), 2.5),
    (ErlangSpec(1, 0.5), ErlangSpec(1, 2.0), 1.0),
    (ErlangSpec(4, 1.0), ErlangSpec(2, 1.0000001), 3.0),
    (ErlangSpec(3, 0.2), ErlangSpec(5, 0.25), 40.0),
    (ErlangSpec(6, 3.0), ErlangSpec(1, 0.7), 4.0),
)

_PRODUCT_CASES = (
    (((1, 1.0, 1.0),), 3.0),
    (((2, 0.5, 1.0),), 8.0),
    (((3, 0.316, 1.0),), 4.0),
    (((2, 1.0, 1.0), (1, 0.5, 1.0)), 8.0),
    (((1, 0.1, 1.0), (2, 0.2, 1.0)), 16.0),
)


def _outage_queries(suite):
    """Every scheme and attempt count on the suite grid, over symmetric links and over a stronger relay link"""
    for snr_db in suite.snr_db:
        for rate in suite.rates:
            rt = RateThreshold(rate)
            for offset in (0.0, ASYMMETRIC_OFFSET_DB):
                sd = LinkParams.from_db(snr_db)
                rd = LinkParams.from_db(snr_db + offset, 0.5 if offset else 1.0)
                yield OutageQuery(OutageScheme.ARQ, sd, rt)
                for count in range(1, suite.max_count + 1):
                    yield OutageQuery(OutageScheme.RR_SOURCE, sd, rt, count)
                    yield OutageQuery(OutageScheme.IR_SOURCE, sd, rt, count)
                for l, k2 in _combined_counts(suite):
                    yield OutageQuery(OutageScheme.RR_COMBINED, sd, rt, l, rd, k2)
                    yield OutageQuery(OutageScheme.IR_COMBINED, sd, rt, l, rd, k2)


def _combined_counts(suite):
    return [(l, k2) for l in range(1, suite.max_count) for k2 in range(1, suite.max_count) if l + k2 <= suite.max_count]


def _binomial_deviation(probability, failures, samples):
    """|closed - simulated| in standard errors of a binomial with the closed-form probability, continuity corrected"""
    std_error = math.sqrt(max(probability * (1.0 - probability), 1.0 / samples) / samples)
    return max(0.0, abs(failures / samples - probability) - 0.5 / samples) / std_error


def _relative_deviation(actual, expected):
    if actual.shape != expected.shape:
        return math.inf
    zero = expected == 0
    if np.any(actual[zero] != 0):
        return math.inf
    if np.all(zero):
        return 0.0
    return float(np.max(np.abs(actual[~zero] - expected[~zero]) / np.abs(expected[~zero])))


def _result(criterion, name, deviations, tolerance, detail=''):
    worst = max(deviations) if deviations else 0.0
    return CheckResult(criterion, name, _within(worst, tolerance), float(worst), tolerance, len(deviations), detail)


def _within(worst, tolerance):
    """A zero tolerance fails every check, so a scale of 0 exercises the failure path"""
    return bool(tolerance > 0 and worst <= tolerance)


def _json_number(value):
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    raise TypeError(f'{type(value).__name__} is not JSON serialisable')
