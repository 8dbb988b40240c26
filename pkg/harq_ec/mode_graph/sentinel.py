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

import numpy as np

from harq_ec.outage.table import OutageTable, Strategy1Outages


def first_primes(count):
    """The first `count` primes, by a sieve of Eratosthenes sized with Rosser's bound"""
    if count < 1:
        return np.array([], dtype=int)
    limit = 16 if count < 6 else int(count * (math.log(count) + math.log(math.log(count)))) + 1
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for n in range(2, math.isqrt(limit) + 1):
        if is_prime[n]:
            is_prime[n * n::n] = False
    return np.flatnonzero(is_prime)[:count]


def sentinel_strategy1_outages():
    q_sd, q_sr, q_rd = (1.0 / p for p in first_primes(3).tolist())
    return Strategy1Outages(q_sd, q_sr, q_rd)


def sentinel_outage_table(source_budget, relay_budget):
    """
    An OutageTable whose entries are reciprocals of distinct primes, so that every entry of a companion matrix built
    from it can be traced back to the outage probabilities it combines
    """
    values = iter([1.0 / p for p in first_primes(source_budget * (relay_budget + 2)).tolist()])
    source_destination = tuple(next(values) for _ in range(source_budget))
    source_relay = tuple(next(values) for _ in range(source_budget))
    relay_destination = tuple(tuple(next(values) for _ in range(relay_budget)) for _ in range(source_budget))
    return OutageTable(source_destination, source_relay, relay_destination)
