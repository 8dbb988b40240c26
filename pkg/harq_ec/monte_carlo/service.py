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


import logging
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from joblib import Parallel, delayed
from scipy.optimize import brentq
from scipy.special import logsumexp

from harq_ec.errors import DomainError
from harq_ec.mode_graph.iterate import transition_iterator
from harq_ec.monte_carlo.plan import BOOTSTRAP_STREAM, SERVICE_STREAM, chunk_rng, chunks

logger = logging.getLogger(__name__)

BLOCK = 'block'
REGENERATIVE = 'regenerative'
ESTIMATORS = (BLOCK, REGENERATIVE)


@dataclass(frozen=True)
class ServiceEstimate:
    estimate: float
    ci_halfwidth: float
    estimator: str
    blocks: int
    block_length: int
    cycles: Optional[int] = None


class TransitionSampler:
    """
    Draws the next mode and the packets delivered for many chains at once. Outcomes of each mode are laid out in
    padded rows of cumulative probabilities.
    """

    def __init__(self, graph):
        outcomes = {mode: [] for mode in graph.nodes}
        for from_mode, to_mode, probability, packets in transition_iterator(graph):
            if probability > 0:
                outcomes[from_mode].append((to_mode - 1, packets, probability))
        width = max(len(row) for row in outcomes.values())
        mode_count = graph.mode_count
        self.cumulative = np.full((mode_count, width), np.inf)
        self.targets = np.zeros((mode_count, width), dtype=np.int64)
        self.packets = np.zeros((mode_count, width), dtype=np.int64)
        self.counts = np.zeros(mode_count, dtype=np.int64)
        for mode, row in outcomes.items():
            index = mode - 1
            self.counts[index] = len(row)
            self.cumulative[index, :len(row)] = np.cumsum([p for _, _, p in row])
            self.targets[index, :len(row)] = [t for t, _, _ in row]
            self.packets[index, :len(row)] = [v for _, v, _ in row]

    def step(self, states, uniform):
        choice = (uniform[:, None] >= self.cumulative[states]).sum(axis=1)
        choice = np.minimum(choice, self.counts[states] - 1)
        return self.targets[states, choice], self.packets[states, choice]


def simulate_service_process(graph, qos, plan, estimator=REGENERATIVE, n_jobs=1):
    """
    Estimate the effective capacity of a mode chain from simulated service, every block starting in mode 1
    Args:
        graph: A normalised ModeGraph
        qos: QosParams with θ > 0
        plan: SimPlan giving the seed, the number of blocks B and the block length n
        estimator: 'block' for -ln(mean_b e^(-θ S_b)) / (θn) over the block totals S_b, or 'regenerative' to solve
            mean(λ^(-τ) e^(-θ S_τ)) = 1 over the cycles between returns to mode 1 and report -ln(λ) / θ
        n_jobs: joblib worker count

    Returns:
        ServiceEstimate with a bootstrap confidence half-width
    """
    if estimator not in ESTIMATORS:
        raise DomainError(f'Unknown service estimator {estimator}, expected one of {ESTIMATORS}')
    if qos.theta <= 0:
        raise DomainError(f'Simulated effective capacity needs a positive QoS exponent, got θ={qos.theta}')
    graph.validate_normalization()
    sampler = TransitionSampler(graph)

    results = Parallel(n_jobs=n_jobs)(
        delayed(_simulate_blocks)(sampler, plan.seed, chunk, size, plan.block_length)
        for chunk, size in chunks(plan.blocks, plan.block_chunk))
    deliveries = np.concatenate([chunk_deliveries for chunk_deliveries, _ in results])
    lengths, delivered, counts = _merge_cycles([chunk_codes for _, chunk_codes in results], plan.block_length)
    rng = chunk_rng(plan.seed, BOOTSTRAP_STREAM, 0)
    tail = (1.0 - plan.confidence) / 2.0

    if estimator == BLOCK:
        if np.all(deliveries == deliveries[0]):
            _warn_degenerate('block totals')
        estimate = _block_estimate(deliveries, qos, plan.block_length)
        resampled = [_block_estimate(rng.choice(deliveries, size=deliveries.size), qos, plan.block_length)
                     for _ in range(plan.bootstrap_resamples)]
        cycles = None
    else:
        if lengths.size == 0:
            raise DomainError('No cycle returned to mode 1 within a block; lengthen the blocks')
        if lengths.size == 1:
            _warn_degenerate('cycles')
        estimate = _regenerative_estimate(lengths, delivered, counts, qos)
        cycles = int(counts.sum())
        resampled = [_regenerative_estimate(lengths, delivered, rng.multinomial(cycles, counts / cycles), qos)
                     for _ in range(plan.bootstrap_resamples)]

    low, high = np.quantile(resampled, [tail, 1.0 - tail])
    logger.info('Simulated %s estimate %.6g from %d blocks of %d slots', estimator, estimate, plan.blocks,
                plan.block_length)
    return ServiceEstimate(estimate, float(high - low) / 2.0, estimator, plan.blocks, plan.block_length, cycles)


def _simulate_blocks(sampler, seed, chunk, size, block_length):
    """
    Run `size` chains for `block_length` slots from mode 1
    Returns:
        Packets delivered per block, and a code τ(n + 1) + d for every completed cycle of τ slots delivering d packets
    """
    rng = chunk_rng(seed, SERVICE_STREAM, chunk)
    states = np.zeros(size, dtype=np.int64)
    deliveries = np.zeros(size, dtype=np.int64)
    cycle_length = np.zeros(size, dtype=np.int64)
    cycle_delivered = np.zeros(size, dtype=np.int64)
    codes = []
    for _ in range(block_length):
        states, packets = sampler.step(states, rng.random(size))
        deliveries += packets
        cycle_length += 1
        cycle_delivered += packets
        returned = states == 0
        if np.any(returned):
            codes.append(cycle_length[returned] * (block_length + 1) + cycle_delivered[returned])
            cycle_length[returned] = 0
            cycle_delivered[returned] = 0
    return deliveries, np.concatenate(codes) if codes else np.zeros(0, dtype=np.int64)


def _merge_cycles(codes_per_chunk, block_length):
    """Distinct (length, delivered) cycles over all chunks with their multiplicities"""
    codes, counts = np.unique(np.concatenate(codes_per_chunk), return_counts=True)
    return codes // (block_length + 1), codes % (block_length + 1), counts


def _block_estimate(deliveries, qos, block_length):
    exponents = -qos.theta * qos.rate * deliveries
    log_mean = logsumexp(exponents) - math.log(deliveries.size)
    return -log_mean / (qos.theta * block_length)


def _regenerative_estimate(lengths, delivered, counts, qos):
    """
    Root x = ln λ in [-θR, 0] of ln Σ_c n_c e^(-τ_c x - θR d_c) = ln Σ_c n_c, reported as -x / θ
    """
    theta_rate = qos.theta * qos.rate
    weights = counts / counts.sum()
    keep = weights > 0
    lengths, delivered, weights = lengths[keep], delivered[keep], weights[keep]

    def excess(x):
        return logsumexp(-lengths * x - theta_rate * delivered, b=weights)

    if excess(0.0) >= 0.0:
        return 0.0
    if excess(-theta_rate) <= 0.0:
        return qos.rate
    return -brentq(excess, -theta_rate, 0.0, xtol=1e-14, rtol=1e-12) / qos.theta


def _warn_degenerate(what):
    warnings.warn(f'All simulated {what} are identical; the estimate carries no sampling spread', RuntimeWarning)
