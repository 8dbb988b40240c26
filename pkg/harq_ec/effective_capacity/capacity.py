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

from harq_ec.effective_capacity.qos import QosParams
from harq_ec.effective_capacity.spectral import spectral_radius
from harq_ec.errors import DomainError
from harq_ec.mode_graph.builders import build_mode_graph
from harq_ec.mode_graph.companion import CompanionMatrix, alpha_matrix

logger = logging.getLogger(__name__)

RADIUS_SLACK = 1e-9


def effective_capacity(matrix, qos):
    """
    C_eff = -ln(λ₊) / θ, with λ₊ the spectral radius of the companion matrix restricted to the modes reachable from
    mode 1
    Args:
        matrix: CompanionMatrix built at `qos`, or a plain array taken to be built at `qos`
        qos: QosParams with θ > 0

    Returns:
        The effective capacity in bits/s/Hz, within [0, R]
    """
    if qos.theta <= 0:
        raise DomainError(f'Effective capacity needs a positive QoS exponent, got θ={qos.theta}')
    if not isinstance(matrix, CompanionMatrix):
        matrix = CompanionMatrix(matrix, qos.theta, qos.rate)
    elif (matrix.theta, matrix.rate) != (qos.theta, qos.rate):
        raise DomainError(f'Companion matrix was built at θ={matrix.theta}, R={matrix.rate} but effective capacity '
                          f'was requested at θ={qos.theta}, R={qos.rate}')

    modes, block = matrix.reachable_block()
    if len(modes) < matrix.mode_count:
        logger.debug('Modes %s are unreachable from mode 1', sorted(set(range(1, matrix.mode_count + 1)) - set(modes)))
    radius = spectral_radius(block)
    if radius > 1.0 + RADIUS_SLACK:
        raise DomainError(f'Spectral radius {radius:.15g} exceeds 1; the companion matrix is malformed')
    if radius <= 0.0:
        raise DomainError('Spectral radius is zero; the mode chain has no recurrent modes')
    capacity = -math.log(radius) / qos.theta
    return min(max(capacity, 0.0), qos.rate)


def strategy_effective_capacity(cfg, theta):
    """Build the mode graph of `cfg` and evaluate its effective capacity at QoS exponent `theta` and the config's R"""
    qos = QosParams(theta, cfg.rt.rate)
    return effective_capacity(alpha_matrix(build_mode_graph(cfg), qos), qos)
