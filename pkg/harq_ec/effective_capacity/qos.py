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


@dataclass(frozen=True)
class QosParams:
    """
    QoS exponent θ, the decay rate of the queue-length tail P{Q > x} ~ e^(-θx), and the rate R in bits/s/Hz carried
    by each delivered packet. θ = 0 is accepted so that stochasticity diagnostics can be built; effective capacity
    itself needs θ > 0.
    """
    theta: float
    rate: float

    def __post_init__(self):
        if not (self.theta >= 0 and math.isfinite(self.theta)):
            raise DomainError(f'QoS exponent must be nonnegative and finite, got {self.theta}')
        if not (self.rate > 0 and math.isfinite(self.rate)):
            raise DomainError(f'Rate must be positive and finite, got {self.rate}')

    def with_theta(self, theta):
        return replace(self, theta=theta)

    def with_rate(self, rate):
        return replace(self, rate=rate)

    @property
    def delivery_weight(self):
        """e^(-θR), the weight of a slot that delivers one packet"""
        return math.exp(-self.theta * self.rate)
