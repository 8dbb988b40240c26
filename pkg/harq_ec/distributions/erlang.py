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
from scipy import linalg, special

from harq_ec.errors import DomainError

logger = logging.getLogger(__name__)

EQUAL_RATE_THRESHOLD = 1e-6
CANCELLATION_LIMIT = 1e-12


@dataclass(frozen=True)
class ErlangSpec:
    """Erlang distribution Erl(shape, rate): the sum of `shape` independent exponentials of rate `rate`"""
    shape: int
    rate: float

    def __post_init__(self):
        if int(self.shape) != self.shape or self.shape < 1:
            raise DomainError(f'Erlang shape must be a positive integer, got {self.shape}')
        if not (self.rate > 0 and math.isfinite(self.rate)):
            raise DomainError(f'Erlang rate must be positive and finite, got {self.rate}')

    @property
    def mean(self):
        return self.shape / self.rate

    @property
    def variance(self):
        return self.shape / self.rate ** 2


def erlang_cdf(spec, t):
    """γ(k, tμ) / (k - 1)!"""
    _check_time(t)
    return float(special.gammainc(spec.shape, spec.rate * t))


def erlang_pdf(spec, t):
    _check_time(t)
    if t == 0:
        return spec.rate if spec.shape == 1 else 0.0
    log_density = (spec.shape * math.log(spec.rate) + (spec.shape - 1) * math.log(t) - spec.rate * t
                   - special.gammaln(spec.shape))
    return math.exp(log_density)


def merged_erlang(a, b):
    """The Erlang with shape k_a + k_b and the rate that preserves the mean of the sum"""
    shape = a.shape + b.shape
    return ErlangSpec(shape, shape / (a.shape / a.rate + b.shape / b.rate))


def rates_coincide(a, b):
    return abs(a.rate - b.rate) / max(a.rate, b.rate) < EQUAL_RATE_THRESHOLD


def two_erlang_sum_cdf(a, b, t):
    """
    Distribution function of Y_a + Y_b for independent Erlang variables, by partial fractions of the Laplace transform.

    Equal rates (relative gap below EQUAL_RATE_THRESHOLD) give the single Erlang of shape k_a + k_b. When the partial
    fraction terms are large enough that their cancellation costs more than CANCELLATION_LIMIT in absolute accuracy,
    the absorption probability of the equivalent phase-type chain is used instead.
    """
    _check_time(t)
    if t == 0:
        return 0.0
    if rates_coincide(a, b):
        logger.debug('Rates %g and %g coincide, using the merged Erlang', a.rate, b.rate)
        return erlang_cdf(merged_erlang(a, b), t)

    terms = list(_partial_fraction_terms(a, b, t, _log_cdf_piece))
    if _cancellation(terms) > CANCELLATION_LIMIT:
        logger.debug('Partial fractions for rates %g and %g cancel, using the phase-type form', a.rate, b.rate)
        return _phase_type_cdf(a, b, t)
    return min(1.0, max(0.0, math.fsum(sign * math.exp(log_term) for sign, log_term in terms)))


def two_erlang_sum_pdf(a, b, t):
    _check_time(t)
    if rates_coincide(a, b):
        return erlang_pdf(merged_erlang(a, b), t)
    if t == 0:
        return 0.0
    terms = list(_partial_fraction_terms(a, b, t, _log_pdf_piece))
    if _cancellation(terms) > CANCELLATION_LIMIT:
        return _phase_type_pdf(a, b, t)
    return max(0.0, math.fsum(sign * math.exp(log_term) for sign, log_term in terms))


def _partial_fraction_terms(a, b, t, log_piece):
    """
    Yields (sign, log |term|) for
    Σ_i Σ_j (-1)^(k_i - j) piece(i, j) C(k_l + n - 1, n) μ_l^(k_l) / (μ_l - μ_i)^(k_l + n), n = k_i - j,
    where l is the other group and `log_piece` supplies the j-th Erlang contribution of group i.
    """
    for own, other in ((a, b), (b, a)):
        difference = other.rate - own.rate
        for j in range(1, own.shape + 1):
            n = own.shape - j
            power = other.shape + n
            sign = (-1) ** n * (1 if difference > 0 or power % 2 == 0 else -1)
            log_piece_value = log_piece(own, j, t)
            if log_piece_value == -math.inf:
                continue
            log_term = (log_piece_value + _log_binomial(other.shape + n - 1, n)
                        + other.shape * math.log(other.rate) - power * math.log(abs(difference)))
            yield sign, log_term


def _log_cdf_piece(spec, j, t):
    """log of μ^(k - j) P(j, tμ), where P is the regularized lower incomplete gamma"""
    regularized = special.gammainc(j, spec.rate * t)
    if regularized <= 0:
        return -math.inf
    return (spec.shape - j) * math.log(spec.rate) + math.log(regularized)


def _log_pdf_piece(spec, j, t):
    """log of μ^k e^(-μt) t^(j - 1) / (j - 1)!"""
    return spec.shape * math.log(spec.rate) - spec.rate * t + (j - 1) * math.log(t) - special.gammaln(j)


def _log_binomial(n, k):
    return special.gammaln(n + 1) - special.gammaln(k + 1) - special.gammaln(n - k + 1)


def _cancellation(terms):
    if not terms:
        return 0.0
    largest = max(log_term for _, log_term in terms)
    return math.exp(largest) * np.finfo(float).eps * len(terms)


def _phase_type_generator(a, b):
    rates = [a.rate] * a.shape + [b.rate] * b.shape
    size = len(rates) + 1
    generator = np.zeros((size, size))
    for state, rate in enumerate(rates):
        generator[state, state] = -rate
        generator[state, state + 1] = rate
    return generator, rates


def _phase_type_cdf(a, b, t):
    generator, _ = _phase_type_generator(a, b)
    return min(1.0, max(0.0, float(linalg.expm(generator * t)[0, -1])))


def _phase_type_pdf(a, b, t):
    generator, rates = _phase_type_generator(a, b)
    return max(0.0, float(linalg.expm(generator * t)[0, -2] * rates[-1]))


def _check_time(t):
    if not t >= 0:
        raise DomainError(f'Distribution functions are evaluated at nonnegative times, got {t}')
