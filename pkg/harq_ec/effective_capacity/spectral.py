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
import warnings

import numpy as np

from harq_ec.errors import ConvergenceError, DomainError

logger = logging.getLogger(__name__)

TOLERANCE = 1e-12
MAX_ITERATIONS = 100_000
SHIFT = 1e-8
STAGNATION_WINDOW = 50
REMAINDER_FACTOR = 100.0
NOISE_FLOOR = 16 * np.finfo(float).eps


def spectral_radius(matrix, tolerance=TOLERANCE, max_iterations=MAX_ITERATIONS, dense_fallback=True):
    """
    Dominant eigenvalue λ₊ = max |λ_i| of a nonnegative square matrix by power iteration
    Args:
        matrix: A CompanionMatrix or a nonnegative 2-d array
        tolerance: Relative tolerance on successive estimates
        max_iterations: Iteration cap for each of the plain and shifted iterations
        dense_fallback: Whether to fall back to a dense eigen-solver when neither iteration converges

    Returns:
        λ₊ as a float
    """
    values = _as_nonnegative_square(matrix)
    if not np.any(values):
        return 0.0

    estimate, converged = _power_iteration(values, tolerance, max_iterations)
    if converged:
        return estimate

    logger.debug('Power iteration did not settle at %.15g, retrying with shift %g', estimate, SHIFT)
    shifted, converged = _power_iteration(values + SHIFT * np.eye(values.shape[0]), tolerance, max_iterations)
    if converged:
        return max(shifted - SHIFT, 0.0)

    if not dense_fallback:
        raise ConvergenceError(f'Power iteration failed to converge within {max_iterations} iterations',
                               best_estimate=estimate)
    warnings.warn(f'Power iteration failed to converge (last estimate {estimate:.15g}); '
                  f'using a dense eigen-solver for a {values.shape[0]}x{values.shape[0]} matrix', RuntimeWarning)
    return float(np.max(np.abs(np.linalg.eigvals(values))))


def _power_iteration(values, tolerance, max_iterations):
    """
    Iterate x <- Ax / |Ax|_1 from the uniform vector. For nonnegative A the l1 growth factor tends to λ₊. Returns the
    last estimate and whether it converged; periodic or oscillating chains stop early once the step no longer shrinks.
    """
    x = np.full(values.shape[0], 1.0 / values.shape[0])
    estimate = np.nan
    previous_step = np.nan
    stagnant = 0
    for _ in range(max_iterations):
        y = values @ x
        growth = float(y.sum())
        if growth == 0.0:
            # A^k x = 0 for a positive x, so A is nilpotent
            return 0.0, True
        x = y / growth
        step = abs(growth - estimate)
        if step <= tolerance * growth:
            contraction = step / previous_step if previous_step > 0 else 0.0
            remainder = step * contraction / (1.0 - contraction) if contraction < 1.0 else np.inf
            if remainder <= REMAINDER_FACTOR * tolerance * growth or step <= NOISE_FLOOR * growth:
                return growth, True
        elif previous_step > 0 and step >= previous_step:
            stagnant += 1
            if stagnant >= STAGNATION_WINDOW:
                return growth, False
        else:
            stagnant = 0
        previous_step = step
        estimate = growth
    return estimate, False


def _as_nonnegative_square(matrix):
    values = np.asarray(getattr(matrix, 'values', matrix), dtype=float)
    if values.ndim != 2 or values.shape[0] != values.shape[1] or values.shape[0] < 1:
        raise DomainError(f'Spectral radius needs a nonempty square matrix, got shape {values.shape}')
    if not np.all(np.isfinite(values)) or np.any(values < 0):
        raise DomainError('Spectral radius is computed for finite nonnegative matrices only')
    return values
