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


import functools
import logging
from dataclasses import dataclass
from typing import Tuple

from harq_ec.errors import DomainError
from harq_ec.outage.probability import arq_outage, ir_combined_outage, ir_source_outage, rr_combined_outage, \
    rr_source_outage
from harq_ec.outage.scheme import Combining
from harq_ec.specfun.mellin_barnes import DEFAULT_CONTOUR

logger = logging.getLogger(__name__)

CACHE_SIZE = 8192


@dataclass(frozen=True)
class Strategy1Outages:
    """Per-attempt ARQ outage probabilities Q_sd, Q_sr and Q_rd"""
    sd: float
    sr: float
    rd: float

    def __post_init__(self):
        for name in ('sd', 'sr', 'rd'):
            _check_probability(name, getattr(self, name))


@dataclass(frozen=True)
class OutageTable:
    """
    The outage probabilities a truncated HARQ mode graph needs: Q_sd,l and Q_sr,l for l <= M source attempts and
    Q_srd,l;i for i <= N relay attempts following l source attempts.
    """
    source_destination: Tuple[float, ...]
    source_relay: Tuple[float, ...]
    relay_destination: Tuple[Tuple[float, ...], ...]

    def __post_init__(self):
        source_budget = len(self.source_destination)
        if source_budget < 1 or len(self.source_relay) != source_budget or len(self.relay_destination) != source_budget:
            raise DomainError('An outage table needs M >= 1 entries for each of Q_sd, Q_sr and Q_srd')
        relay_budgets = {len(row) for row in self.relay_destination}
        if len(relay_budgets) != 1 or relay_budgets.pop() < 1:
            raise DomainError('Every Q_srd row of an outage table needs the same N >= 1 entries')
        for value in self.source_destination + self.source_relay + sum(self.relay_destination, ()):
            _check_probability('outage', value)

    @property
    def source_budget(self):
        return len(self.source_destination)

    @property
    def relay_budget(self):
        return len(self.relay_destination[0])

    def q_sd(self, l):
        return self.source_destination[l - 1]

    def q_sr(self, l):
        return self.source_relay[l - 1]

    def q_srd(self, l, i):
        return self.relay_destination[l - 1][i - 1]


def strategy1_outages(links, rt):
    return Strategy1Outages(arq_outage(links.sd, rt), arq_outage(links.sr, rt), arq_outage(links.rd, rt))


def build_outage_table(combining, links, rt, source_budget, relay_budget, contour=DEFAULT_CONTOUR):
    """Evaluate every outage probability of a Strategy II mode graph with M = source_budget, N = relay_budget"""
    if source_budget < 1 or relay_budget < 1:
        raise DomainError(f'Attempt budgets must be positive, got M={source_budget}, N={relay_budget}')
    source_destination = tuple(
        source_outage(combining, links.sd, l, rt, contour) for l in range(1, source_budget + 1))
    source_relay = tuple(
        source_outage(combining, links.sr, l, rt, contour) for l in range(1, source_budget + 1))
    relay_destination = tuple(
        tuple(combined_outage(combining, links.sd, links.rd, l, i, rt, contour) for i in range(1, relay_budget + 1))
        for l in range(1, source_budget + 1)
    )
    logger.debug('Built %s outage table for M=%d, N=%d', combining.value, source_budget, relay_budget)
    return OutageTable(source_destination, source_relay, relay_destination)


@functools.lru_cache(maxsize=CACHE_SIZE)
def source_outage(combining, link, count, rt, contour=DEFAULT_CONTOUR):
    """Q_uv,count under `combining`, memoised per (link, count, rate)"""
    if combining is Combining.RR:
        return rr_source_outage(link, count, rt)
    return ir_source_outage(link, count, rt, contour)


@functools.lru_cache(maxsize=CACHE_SIZE)
def combined_outage(combining, sd, rd, l, k2, rt, contour=DEFAULT_CONTOUR):
    """Q_srd,l;k2 under `combining`, memoised per (links, counts, rate)"""
    if combining is Combining.RR:
        return rr_combined_outage(sd, rd, l, k2, rt)
    return ir_combined_outage(sd, rd, l, k2, rt, contour)


def _check_probability(name, value):
    if not 0.0 <= value <= 1.0:
        raise DomainError(f'Probability {name} must lie in [0, 1], got {value}')
