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


from dataclasses import dataclass, replace
from enum import Enum

from harq_ec.errors import DomainError
from harq_ec.outage.link import Links, RateThreshold
from harq_ec.outage.scheme import Combining
from harq_ec.specfun.mellin_barnes import DEFAULT_CONTOUR, ContourSpec


class Strategy(Enum):
    """
    I: lossless ARQ at source and relay, a relay that decoded keeps sending until the destination decodes.
    II: truncated HARQ with at most M source and N relay attempts per packet.
    """
    I = 'I'
    II = 'II'


@dataclass(frozen=True)
class StrategyConfig:
    """
    A cooperative retransmission scheme over three links. `source_budget` and `relay_budget` are M and N; Strategy I
    ignores them and `combining`.
    """
    strategy: Strategy
    links: Links
    rt: RateThreshold
    combining: Combining = Combining.RR
    source_budget: int = 1
    relay_budget: int = 1
    contour: ContourSpec = DEFAULT_CONTOUR

    def __post_init__(self):
        for name in ('source_budget', 'relay_budget'):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise DomainError(f'{name} must be a positive integer, got {value}')

    @property
    def mode_count(self):
        if self.strategy is Strategy.I:
            return 2
        return self.source_budget * (self.relay_budget + 1)

    def source_mode(self, l):
        """s'_l = 1 + (l - 1)(N + 1), the mode in which the source makes its l-th attempt"""
        return 1 + (l - 1) * (self.relay_budget + 1)

    def with_links(self, links):
        return replace(self, links=links)

    def with_rate(self, rate):
        return replace(self, rt=RateThreshold(rate))

    def describe(self):
        """Parameter snapshot for output headers"""
        links = self.links
        snapshot = {
            'strategy': self.strategy.value,
            'rate': f'{self.rt.rate:g}',
            'snr_sd_db': f'{links.sd.snr_db:.6g}',
            'snr_sr_db': f'{links.sr.snr_db:.6g}',
            'snr_rd_db': f'{links.rd.snr_db:.6g}',
            'fading_sd': f'{links.sd.fading_variance:g}',
            'fading_sr': f'{links.sr.fading_variance:g}',
            'fading_rd': f'{links.rd.fading_variance:g}',
        }
        if self.strategy is Strategy.II:
            snapshot.update(combining=self.combining.value, M=str(self.source_budget), N=str(self.relay_budget))
        return snapshot
