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
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed

from harq_ec.distributions.samplers import sample_exponential
from harq_ec.errors import DomainError
from harq_ec.monte_carlo.plan import OUTAGE_STREAM, chunk_rng, chunks
from harq_ec.outage.scheme import Combining, OutageScheme

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OutageEstimate:
    estimate: float
    std_error: float
    samples: int
    failures: int

    def agrees_with(self, value, sigmas=3.0):
        """Whether `value` lies within `sigmas` binomial standard errors of the estimate"""
        return abs(self.estimate - value) <= sigmas * self.std_error


@dataclass(frozen=True)
class SharedSampleComparison:
    """Outage counts of repetition and incremental redundancy combining evaluated on the same channel draws"""
    samples: int
    rr_failures: int
    ir_failures: int
    violations: int

    @property
    def rr_estimate(self):
        return self.rr_failures / self.samples

    @property
    def ir_estimate(self):
        return self.ir_failures / self.samples


def estimate_outage(query, plan, n_jobs=1):
    """
    Empirical outage probability of `query` from `plan.samples` independent channel realisations
    Returns:
        OutageEstimate with the sample proportion and its binomial standard error
    """
    counts = Parallel(n_jobs=n_jobs)(
        delayed(_count_outages)(query, plan.seed, chunk, size) for chunk, size in chunks(plan.samples, plan.chunk_size))
    failures = sum(counts)
    estimate = failures / plan.samples
    std_error = math.sqrt(estimate * (1.0 - estimate) / plan.samples)
    logger.debug('Simulated %s outage %s: %d of %d samples failed', query.scheme.value, query.label, failures,
                 plan.samples)
    return OutageEstimate(estimate, std_error, plan.samples, failures)


def compare_ir_rr(sd, rd, l, k2, rt, plan, n_jobs=1):
    """
    Decide repetition and incremental redundancy outage at the destination on shared draws of `l` source-destination
    and `k2` relay-destination SNRs. A violation is a draw in outage under incremental redundancy only.
    """
    if int(l) != l or l < 1 or int(k2) != k2 or k2 < 0:
        raise DomainError(f'Need l >= 1 source and k2 >= 0 relay attempts, got l={l}, k2={k2}')
    counts = Parallel(n_jobs=n_jobs)(
        delayed(_count_shared)(sd, rd, l, k2, rt, plan.seed, chunk, size)
        for chunk, size in chunks(plan.samples, plan.chunk_size))
    rr_failures, ir_failures, violations = (sum(column) for column in zip(*counts))
    return SharedSampleComparison(plan.samples, rr_failures, ir_failures, violations)


def _received_snrs(rng, sd, l, rd, k2, size):
    snrs = sample_exponential(sd.rate_parameter, rng, size=(l, size))
    if k2 > 0:
        snrs = np.concatenate([snrs, sample_exponential(rd.rate_parameter, rng, size=(k2, size))])
    return snrs


def _in_outage(snrs, combining, rt):
    if combining is Combining.RR:
        return snrs.sum(axis=0) <= rt.threshold
    return np.log1p(snrs).sum(axis=0) <= rt.rate * math.log(2.0)


def _count_outages(query, seed, chunk, size):
    rng = chunk_rng(seed, OUTAGE_STREAM, chunk)
    relay_count = query.relay_count if query.scheme.combined else 0
    snrs = _received_snrs(rng, query.link, query.count, query.relay_link, relay_count, size)
    combining = Combining.RR if query.scheme is OutageScheme.ARQ else query.scheme.combining
    return int(np.count_nonzero(_in_outage(snrs, combining, query.rt)))


def _count_shared(sd, rd, l, k2, rt, seed, chunk, size):
    snrs = _received_snrs(chunk_rng(seed, OUTAGE_STREAM, chunk), sd, l, rd, k2, size)
    rr = _in_outage(snrs, Combining.RR, rt)
    ir = _in_outage(snrs, Combining.IR, rt)
    return int(np.count_nonzero(rr)), int(np.count_nonzero(ir)), int(np.count_nonzero(ir & ~rr))
