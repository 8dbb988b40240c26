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
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from harq_ec.errors import AccuracyNotReachedError, DomainError
from harq_ec.specfun.incomplete_gamma import log_upper_incomplete_gamma_complex

logger = logging.getLogger(__name__)

INITIAL_STEP = 0.25
TAIL_MARGIN = 100.0
MIN_NODES = 16
RESIDUE_FACTOR = 10.0


class FactorKind(Enum):
    INCOMPLETE_GAMMA_POWER = 'incomplete_gamma_power'
    RECIPROCAL_POLE = 'reciprocal_pole'


@dataclass(frozen=True)
class MellinFactor:
    """
    One factor of a Mellin-Barnes integrand in the variable h. An incomplete gamma factor contributes
    Γ(1 + h, shift)^multiplicity, a reciprocal pole contributes (-1/h)^multiplicity.
    """
    kind: FactorKind
    shift: float = 0.0
    multiplicity: int = 1

    def __post_init__(self):
        if not self.shift >= 0:
            raise DomainError(f'A Mellin factor shift must be nonnegative, got {self.shift}')
        if int(self.multiplicity) != self.multiplicity or self.multiplicity < 1:
            raise DomainError(f'A Mellin factor multiplicity must be a positive integer, got {self.multiplicity}')

    @classmethod
    def incomplete_gamma(cls, shift, multiplicity=1):
        return cls(FactorKind.INCOMPLETE_GAMMA_POWER, float(shift), int(multiplicity))

    @classmethod
    def reciprocal_pole(cls, multiplicity=1):
        return cls(FactorKind.RECIPROCAL_POLE, 0.0, int(multiplicity))


@dataclass(frozen=True)
class ContourSpec:
    """
    The vertical line Re(h) = abscissa over which an inversion integral is evaluated, and the accuracy targets of the
    quadrature along it. `truncation` is the initial half-height; it grows geometrically until the tail is negligible.
    """
    abscissa: float = -0.5
    truncation: float = 50.0
    abs_tol: float = 1e-8
    max_nodes: int = 2 ** 18

    def __post_init__(self):
        if not math.isfinite(self.abscissa):
            raise DomainError(f'Contour abscissa must be finite, got {self.abscissa}')
        if not self.truncation > 0:
            raise DomainError(f'Contour truncation must be positive, got {self.truncation}')
        if not self.abs_tol > 0:
            raise DomainError(f'Contour absolute tolerance must be positive, got {self.abs_tol}')
        if self.max_nodes < MIN_NODES:
            raise DomainError(f'Contour node budget must be at least {MIN_NODES}, got {self.max_nodes}')

    def with_abscissa(self, abscissa):
        return replace(self, abscissa=abscissa)


DEFAULT_CONTOUR = ContourSpec()


@dataclass(frozen=True)
class MellinBarnesResult:
    value: float
    error_estimate: float
    imaginary_residue: float
    nodes: int
    truncation: float


class _Integrand:
    """
    The integrand e^(offset) ∏ Γ(1 + h, a_i)^(k_i) (-1/h)^p (scale z)^(-h) evaluated on h = c + iτ, in log space.
    """

    def __init__(self, factors, scale, z, abscissa, scaled):
        gamma_powers = {}
        self.poles = 0
        for factor in factors:
            if factor.kind is FactorKind.RECIPROCAL_POLE:
                self.poles += factor.multiplicity
            else:
                gamma_powers[factor.shift] = gamma_powers.get(factor.shift, 0) + factor.multiplicity
        self.gamma_powers = sorted(gamma_powers.items())
        self.abscissa = abscissa
        self.log_argument = math.log(scale) + math.log(z)
        self.offset = sum(k * shift for shift, k in self.gamma_powers) if scaled else 0.0

    @property
    def algebraic(self):
        """Whether |integrand| decays only algebraically along the line, i.e. no factor is a complete gamma"""
        return all(shift > 0 for shift, _ in self.gamma_powers)

    @property
    def decay_order(self):
        return sum(k for _, k in self.gamma_powers) + self.poles

    @property
    def frequency(self):
        """Asymptotic angular frequency of the integrand in τ when every factor is shifted"""
        return self.log_argument - sum(k * math.log(shift) for shift, k in self.gamma_powers)

    @property
    def initial_step(self):
        omega = abs(self.log_argument) + sum(k * abs(math.log(shift)) for shift, k in self.gamma_powers if shift > 0)
        if omega > 0:
            return min(INITIAL_STEP, math.pi / (4.0 * omega))
        return INITIAL_STEP

    def __call__(self, tau):
        h = self.abscissa + 1j * np.asarray(tau, dtype=float)
        log_value = self.offset - h * self.log_argument
        for shift, k in self.gamma_powers:
            log_value = log_value + k * log_upper_incomplete_gamma_complex(1.0 + h, shift)
        if self.poles:
            log_value = log_value + self.poles * np.log(-1.0 / h)
        return np.exp(log_value)


def mellin_barnes_integral(factors, scale, z, contour=DEFAULT_CONTOUR, scaled=False):
    """
    Evaluate (1/2πi) ∫ G(h) dh along Re(h) = contour.abscissa, where G is the product of `factors` times
    (scale z)^(-h), and times e^(Σ k_i a_i) when `scaled`.

    The integrand is conjugate-symmetric, so the integral is (1/π) ∫_0^∞ Re G(c + iτ) dτ. This is evaluated with the
    trapezoid rule, halving the step until successive estimates agree. When every incomplete gamma factor is shifted
    the integrand decays algebraically and oscillates with frequency L, and the truncated tail is replaced by its
    leading asymptotic term Im G(T) / L.

    Returns:
        MellinBarnesResult with the value, its estimated absolute error and the imaginary residue of the full-line
        integral on the coarsest grid
    """
    if not z > 0:
        raise DomainError(f'The Mellin-Barnes argument must be positive, got {z}')
    if not scale > 0:
        raise DomainError(f'The Mellin-Barnes scale must be positive, got {scale}')
    integrand = _Integrand(factors, scale, z, contour.abscissa, scaled)
    step = integrand.initial_step

    if integrand.algebraic:
        frequency = integrand.frequency
        if frequency <= 0:
            # At or below the lower edge of the support: the contour closes to the right with no poles inside
            return MellinBarnesResult(0.0, 0.0, 0.0, 0, 0.0)

    truncation, tail, remainder = _truncate(integrand, contour, step)

    node_count = max(MIN_NODES, int(math.ceil(truncation / step)))
    step = truncation / node_count
    nodes = np.linspace(0.0, truncation, node_count + 1)
    values = integrand(nodes)
    estimate = step * (np.sum(values.real) - 0.5 * (values[0].real + values[-1].real))

    mirrored = integrand(-nodes)
    full_line = np.sum(values.imag + mirrored.imag) - values[0].imag - 0.5 * (values[-1].imag + mirrored[-1].imag)
    imaginary_residue = abs(step * full_line) / (2.0 * math.pi)
    _check_residue(imaginary_residue, contour.abs_tol)

    quadrature_error = math.inf
    while True:
        if 2 * node_count > contour.max_nodes:
            achieved = abs(quadrature_error) / math.pi + remainder
            raise AccuracyNotReachedError(
                f'Mellin-Barnes quadrature did not reach {contour.abs_tol} within {contour.max_nodes} nodes '
                f'(truncation {truncation}, achieved {achieved})',
                achieved_error=achieved
            )
        midpoints = nodes[:-1] + 0.5 * step
        refined = 0.5 * estimate + 0.5 * step * np.sum(integrand(midpoints).real)
        quadrature_error = refined - estimate
        estimate = refined
        step *= 0.5
        node_count *= 2
        nodes = np.linspace(0.0, truncation, node_count + 1)
        error = abs(quadrature_error) / math.pi + remainder
        if error <= contour.abs_tol:
            break

    value = (estimate + tail) / math.pi
    logger.debug('Mellin-Barnes integral %.12g from %d nodes on [0, %g], error estimate %.3g',
                 value, node_count, truncation, error)
    return MellinBarnesResult(value, error, imaginary_residue, node_count, truncation)


def _check_residue(imaginary_residue, abs_tol):
    """The full-line integral of a conjugate-symmetric integrand is real, a large imaginary part flags a bad contour"""
    if imaginary_residue > RESIDUE_FACTOR * abs_tol:
        logger.warning('Mellin-Barnes imaginary residue %.3g exceeds %g times the tolerance %g',
                       imaginary_residue, RESIDUE_FACTOR, abs_tol)
        return False
    return True


def _truncate(integrand, contour, step):
    """Grow the truncation height until the neglected tail is below abs_tol / TAIL_MARGIN"""
    truncation = contour.truncation
    target = contour.abs_tol / TAIL_MARGIN
    while True:
        edge = complex(integrand(np.array([truncation]))[0])
        if integrand.algebraic:
            frequency = integrand.frequency
            tail = edge.imag / frequency
            remainder = abs(edge) * (integrand.decay_order + 1) / (truncation * frequency ** 2) / math.pi
        else:
            tail = 0.0
            remainder = abs(edge) / math.pi
        if remainder < target:
            return truncation, tail, remainder
        if 2.0 * truncation / step > contour.max_nodes:
            raise AccuracyNotReachedError(
                f'Mellin-Barnes tail at height {truncation} is still {remainder}, above {target}',
                achieved_error=remainder
            )
        truncation *= 2.0


def mellin_barnes_cdf(factors, scale, z, contour=DEFAULT_CONTOUR, scaled=False):
    """
    The distribution function form of the inversion integral, whose integrand is
    ∏ Γ(1 + h, shift_i)^(k_i) (-1/h) (scale z)^(-h). The reciprocal pole is supplied here if `factors` omits it.
    """
    if not -1.0 < contour.abscissa < 0.0:
        raise DomainError(f'The distribution function contour must lie in -1 < c < 0, got {contour.abscissa}')
    factors = list(factors)
    poles = sum(f.multiplicity for f in factors if f.kind is FactorKind.RECIPROCAL_POLE)
    if poles == 0:
        factors.append(MellinFactor.reciprocal_pole())
    elif poles > 1:
        raise DomainError(f'A distribution function integrand has a single reciprocal pole, got {poles}')
    return mellin_barnes_integral(factors, scale, z, contour, scaled).value


def mellin_barnes_pdf(factors, scale, z, contour=DEFAULT_CONTOUR, scaled=False):
    """
    The density form, (1/z) (1/2πi) ∫ ∏ Γ(1 + h, shift_i)^(k_i) (scale z)^(-h) dh. Needs a total multiplicity of at
    least two when every factor is shifted, otherwise the integrand is not absolutely integrable.
    """
    if not contour.abscissa > -1.0:
        raise DomainError(f'The density contour must lie right of -1, got {contour.abscissa}')
    if any(f.kind is FactorKind.RECIPROCAL_POLE for f in factors):
        raise DomainError('A density integrand has no reciprocal pole')
    return mellin_barnes_integral(factors, scale, z, contour, scaled).value / z
