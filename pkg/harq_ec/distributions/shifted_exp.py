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
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from harq_ec.distributions.samplers import sample_exponential
from harq_ec.errors import DomainError
from harq_ec.specfun.mellin_barnes import DEFAULT_CONTOUR, MellinFactor, mellin_barnes_cdf, mellin_barnes_pdf


@dataclass(frozen=True)
class ShiftedExpGroup:
    """`count` independent copies of shift + X with X exponential of rate `rate`"""
    count: int
    rate: float
    shift: float

    def __post_init__(self):
        if int(self.count) != self.count or self.count < 1:
            raise DomainError(f'A shifted exponential group needs a positive integer count, got {self.count}')
        if not (self.rate > 0 and math.isfinite(self.rate)):
            raise DomainError(f'A shifted exponential rate must be positive and finite, got {self.rate}')
        if not self.shift >= 0:
            raise DomainError(f'A shifted exponential shift must be nonnegative, got {self.shift}')


@dataclass(frozen=True)
class ShiftedExpProductSpec:
    """The product of every variable of one or two shifted exponential groups"""
    groups: Tuple[ShiftedExpGroup, ...]

    def __post_init__(self):
        if not 1 <= len(self.groups) <= 2:
            raise DomainError(f'A shifted exponential product has one or two groups, got {len(self.groups)}')

    @classmethod
    def of(cls, *groups):
        """Build from (count, rate, shift) triples"""
        return cls(tuple(ShiftedExpGroup(*group) for group in groups))

    @property
    def total_count(self):
        return sum(group.count for group in self.groups)

    @property
    def support_minimum(self):
        return math.prod(group.shift ** group.count for group in self.groups)

    @property
    def scale(self):
        return math.prod(group.rate ** group.count for group in self.groups)

    def mellin_factors(self):
        """One incomplete gamma factor per distinct shift α μ, with the group counts as multiplicity"""
        multiplicities = {}
        for group in self.groups:
            shift = group.shift * group.rate
            multiplicities[shift] = multiplicities.get(shift, 0) + group.count
        return [MellinFactor.incomplete_gamma(shift, count) for shift, count in sorted(multiplicities.items())]


def shifted_exp_product_cdf(spec, z, contour=DEFAULT_CONTOUR):
    """
    P{Z <= z} for Z the product of the variables in `spec`, through the inverse Mellin transform of
    E[Z^(h)] = ∏ (μ^(-h) e^(αμ) Γ(1 + h, αμ))^k
    """
    if z <= spec.support_minimum or z <= 0:
        return 0.0
    if spec.total_count == 1:
        group = spec.groups[0]
        return -math.expm1(-group.rate * (z - group.shift))
    value = mellin_barnes_cdf(spec.mellin_factors(), spec.scale, z, contour, scaled=True)
    return min(1.0, max(0.0, value))


def shifted_exp_product_pdf(spec, z, contour=DEFAULT_CONTOUR):
    if z <= spec.support_minimum or z <= 0:
        return 0.0
    if spec.total_count == 1:
        group = spec.groups[0]
        return group.rate * math.exp(-group.rate * (z - group.shift))
    return max(0.0, mellin_barnes_pdf(spec.mellin_factors(), spec.scale, z, contour, scaled=True))


def sample_shifted_exp_product(spec, rng, size=None):
    rng = np.random.default_rng(rng)
    shape = () if size is None else np.atleast_1d(size).tolist()
    product = np.ones(shape)
    for group in spec.groups:
        draws = sample_exponential(group.rate, rng, size=[group.count] + list(shape))
        product = product * np.prod(group.shift + draws, axis=0)
    if size is None:
        return float(product)
    return product
