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


import numpy as np

from harq_ec.errors import DomainError


def sample_exponential(rate, rng, size=None):
    """
    Inverse distribution function sampling of Exp(rate)
    Args:
        rate: Rate parameter, strictly positive
        rng: A numpy Generator, or a seed accepted by numpy.random.default_rng
        size: Output shape, or None for a single float

    Returns:
        The draws
    """
    if not rate > 0:
        raise DomainError(f'Exponential rate must be positive, got {rate}')
    rng = np.random.default_rng(rng)
    uniform = rng.random(size)
    draws = -np.log1p(-uniform) / rate
    if size is None:
        return float(draws)
    return draws


def sample_erlang(spec, rng, size=None):
    """Erl(k, μ) as the sum of k exponential draws"""
    rng = np.random.default_rng(rng)
    shape = [] if size is None else list(np.atleast_1d(size))
    draws = sample_exponential(spec.rate, rng, size=[spec.shape] + shape).sum(axis=0)
    if size is None:
        return float(draws)
    return draws
