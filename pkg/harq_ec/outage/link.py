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


import math
from dataclasses import dataclass, replace

from harq_ec.errors import DomainError


def db_to_linear(value_db):
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value):
    return 10.0 * math.log10(value)


@dataclass(frozen=True)
class LinkParams:
    """
    A Rayleigh-faded link u -> v. `snr` is the linear received SNR Γ_uv = P_u / N_uv and `fading_variance` is δ²_uv,
    the mean of the channel gain g = |h|².
    """
    snr: float
    fading_variance: float = 1.0

    def __post_init__(self):
        if not (self.snr > 0 and math.isfinite(self.snr)):
            raise DomainError(f'Link SNR must be positive and finite, got {self.snr}')
        if not (self.fading_variance > 0 and math.isfinite(self.fading_variance)):
            raise DomainError(f'Link fading variance must be positive and finite, got {self.fading_variance}')

    @classmethod
    def from_db(cls, snr_db, fading_variance=1.0):
        return cls(db_to_linear(snr_db), fading_variance)

    @property
    def snr_db(self):
        return linear_to_db(self.snr)

    @property
    def rate_parameter(self):
        """μ = 1 / (Γ δ²), the rate of the exponential received SNR Γ g"""
        return 1.0 / (self.snr * self.fading_variance)

    def with_snr_db(self, snr_db):
        return replace(self, snr=db_to_linear(snr_db))


@dataclass(frozen=True)
class Links:
    """The source-destination, source-relay and relay-destination links of a cooperative system"""
    sd: LinkParams
    sr: LinkParams
    rd: LinkParams

    @classmethod
    def symmetric(cls, link):
        return cls(link, link, link)


@dataclass(frozen=True)
class RateThreshold:
    """Per-packet rate R in bits/s/Hz and the SNR threshold Θ = 2^R - 1 below which a single attempt is in outage"""
    rate: float

    def __post_init__(self):
        if not (self.rate > 0 and math.isfinite(self.rate)):
            raise DomainError(f'Rate must be positive and finite, got {self.rate}')

    @property
    def threshold(self):
        return math.expm1(self.rate * math.log(2.0))

    @property
    def target(self):
        """2^R, the bound on the product of shifted SNRs under incremental redundancy"""
        return 2.0 ** self.rate
