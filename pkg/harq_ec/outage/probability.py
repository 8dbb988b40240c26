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

from harq_ec.distributions.erlang import ErlangSpec, erlang_cdf, two_erlang_sum_cdf
from harq_ec.distributions.shifted_exp import ShiftedExpProductSpec, shifted_exp_product_cdf
from harq_ec.errors import DomainError
from harq_ec.specfun.mellin_barnes import DEFAULT_CONTOUR

# Under incremental redundancy each attempt contributes log2(1 + Γg) = log2 of a shifted exponential with shift 1
IR_SHIFT = 1.0


def arq_outage(link, rt):
    """1 - exp(-Θ / (Γ δ²)), the probability that one attempt fails on its own"""
    return -math.expm1(-rt.threshold * link.rate_parameter)


def rr_source_outage(link, k1, rt):
    """
    Outage after `k1` repetition-combined attempts over one link: P{Σ Γ g_i <= Θ}, an Erlang distribution function
    """
    _check_count('k1', k1)
    return erlang_cdf(ErlangSpec(k1, link.rate_parameter), rt.threshold)


def rr_combined_outage(sd, rd, l, k2, rt):
    """
    Outage at the destination after combining `l` source attempts and `k2` relay attempts by repetition:
    P{Σ_l Γ_sd g + Σ_k2 Γ_rd g <= Θ}
    """
    _check_count('l', l)
    _check_count('k2', k2)
    return two_erlang_sum_cdf(ErlangSpec(l, sd.rate_parameter), ErlangSpec(k2, rd.rate_parameter), rt.threshold)


def ir_source_outage(link, k1, rt, contour=DEFAULT_CONTOUR):
    """
    Outage after `k1` incremental redundancy attempts over one link: P{∏ (1 + Γ g_i) <= 2^R}
    """
    _check_count('k1', k1)
    spec = ShiftedExpProductSpec.of((k1, link.rate_parameter, IR_SHIFT))
    return shifted_exp_product_cdf(spec, rt.target, contour)


def ir_combined_outage(sd, rd, l, k2, rt, contour=DEFAULT_CONTOUR):
    """
    Outage at the destination after `l` source and `k2` relay incremental redundancy attempts:
    P{∏_l (1 + Γ_sd g) ∏_k2 (1 + Γ_rd g) <= 2^R}
    """
    _check_count('l', l)
    _check_count('k2', k2)
    spec = ShiftedExpProductSpec.of((l, sd.rate_parameter, IR_SHIFT), (k2, rd.rate_parameter, IR_SHIFT))
    return shifted_exp_product_cdf(spec, rt.target, contour)


def _check_count(name, count):
    if int(count) != count or count < 1:
        raise DomainError(f'Attempt count {name} must be a positive integer, got {count}')
