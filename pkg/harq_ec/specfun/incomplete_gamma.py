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

import numpy as np
from scipy import special

from harq_ec.errors import ConvergenceError, DomainError

logger = logging.getLogger(__name__)

MAX_ITERATIONS = 5000
CONVERGENCE_EPS = 1e-15
FPMIN = 1e-300


def lower_incomplete_gamma(a, x):
    """
    The lower incomplete gamma function γ(a, x) = ∫_0^x t^(a-1) e^(-t) dt for real arguments
    Args:
        a: Order, strictly positive
        x: Upper limit of integration, nonnegative

    Returns:
        γ(a, x) as a float
    """
    if not a > 0:
        raise DomainError(f'The order of the lower incomplete gamma function must be positive, got {a}')
    if not x >= 0:
        raise DomainError(f'The argument of the lower incomplete gamma function must be nonnegative, got {x}')
    if x == 0:
        return 0.0
    return float(special.gammainc(a, x) * special.gamma(a))


def upper_incomplete_gamma_complex(s, x):
    """
    The upper incomplete gamma function Γ(s, x) = ∫_x^∞ t^(s-1) e^(-t) dt, analytically continued to complex order
    Args:
        s: Complex order, scalar or array
        x: Lower limit of integration, strictly positive

    Returns:
        Γ(s, x), a complex scalar if `s` is a scalar, otherwise an array shaped like `s`
    """
    if not x > 0:
        raise DomainError(f'The argument of the upper incomplete gamma function must be positive, got {x}')
    value = np.exp(log_upper_incomplete_gamma_complex(s, x))
    if np.ndim(value) == 0:
        return complex(value)
    return value


def log_upper_incomplete_gamma_complex(s, x):
    """
    Complex logarithm of Γ(s, x). The imaginary part is only defined modulo 2π.

    The series for γ(s, x) is used where x < |s| + 1 and the Lentz continued fraction for Γ(s, x) elsewhere. `x` may be
    zero, in which case this is log Γ(s).
    """
    if not x >= 0:
        raise DomainError(f'The argument of the upper incomplete gamma function must be nonnegative, got {x}')
    orders = np.asarray(s, dtype=complex)
    scalar = orders.ndim == 0
    orders = np.atleast_1d(orders)

    if x == 0:
        result = special.loggamma(orders)
    else:
        result = np.empty_like(orders)
        use_series = x < np.abs(orders) + 1
        if np.any(use_series):
            result[use_series] = _log_upper_by_series(orders[use_series], x)
        if np.any(~use_series):
            result[~use_series] = _log_upper_by_continued_fraction(orders[~use_series], x)

    if scalar:
        return complex(result[0])
    return result


def _log_upper_by_series(s, x):
    term = 1.0 / s
    total = term.copy()
    for n in range(1, MAX_ITERATIONS):
        term = term * x / (s + n)
        total = total + term
        if np.all(np.abs(term) <= CONVERGENCE_EPS * np.abs(total)):
            break
    else:
        raise ConvergenceError(
            f'The series for the lower incomplete gamma function did not converge in {MAX_ITERATIONS} terms '
            f'for x={x}',
            best_estimate=np.exp(special.loggamma(s)) - np.exp(s * np.log(x) - x) * total
        )
    log_lower = s * np.log(x) - x + np.log(total)
    return _log_difference(special.loggamma(s), log_lower)


def _log_upper_by_continued_fraction(s, x):
    b = x + 1.0 - s
    c = np.full_like(s, 1.0 / FPMIN)
    d = 1.0 / b
    h = d.copy()
    for i in range(1, MAX_ITERATIONS):
        an = -i * (i - s)
        b = b + 2.0
        d = an * d + b
        d = np.where(np.abs(d) < FPMIN, FPMIN, d)
        c = b + an / c
        c = np.where(np.abs(c) < FPMIN, FPMIN, c)
        d = 1.0 / d
        delta = d * c
        h = h * delta
        if np.all(np.abs(delta - 1.0) <= CONVERGENCE_EPS):
            break
    else:
        raise ConvergenceError(
            f'The continued fraction for the upper incomplete gamma function did not converge in {MAX_ITERATIONS} '
            f'iterations for x={x}',
            best_estimate=np.exp(s * np.log(x) - x) * h
        )
    return s * np.log(x) - x + np.log(h)


def _log_difference(log_a, log_b):
    """log(e^a - e^b), factoring out the larger magnitude"""
    result = np.empty_like(log_a)
    a_larger = log_a.real >= log_b.real
    result[a_larger] = log_a[a_larger] + np.log(1.0 - np.exp(log_b[a_larger] - log_a[a_larger]))
    b_larger = ~a_larger
    result[b_larger] = log_b[b_larger] + np.log(np.exp(log_a[b_larger] - log_b[b_larger]) - 1.0)
    return result
