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
import unittest

import numpy as np

from harq_ec.effective_capacity.capacity import effective_capacity, strategy_effective_capacity
from harq_ec.effective_capacity.qos import QosParams
from harq_ec.errors import DomainError
from harq_ec.mode_graph.builders import build_strategy1
from harq_ec.mode_graph.companion import CompanionMatrix, alpha_matrix
from harq_ec.mode_graph.config import Strategy, StrategyConfig
from harq_ec.outage.link import LinkParams, Links, RateThreshold
from harq_ec.outage.scheme import Combining
from harq_ec.outage.table import Strategy1Outages

THETAS = [0.25, 0.5, 1.0, 2.0, 4.0, 8.0]


def strategy1_capacity(outages, theta, rate):
    links = Links.symmetric(LinkParams.from_db(10.0))
    qos = QosParams(theta, rate)
    graph = build_strategy1(StrategyConfig(Strategy.I, links, RateThreshold(rate)), outages)
    return effective_capacity(alpha_matrix(graph, qos), qos)


class TestEffectiveCapacity(unittest.TestCase):

    def test_perfect_direct_link_delivers_the_rate(self):
        self.assertAlmostEqual(1.5, strategy1_capacity(Strategy1Outages(0.0, 0.4, 0.2), 0.8, 1.5), delta=1e-12)

    def test_relay_disabled_reduces_to_scalar_block(self):
        theta, rate, q_sd = 1.3, 2.0, 0.35
        expected = -math.log(q_sd + (1 - q_sd) * math.exp(-theta * rate)) / theta
        capacity = strategy1_capacity(Strategy1Outages(q_sd, 1.0, 0.2), theta, rate)
        self.assertAlmostEqual(expected, capacity, delta=1e-12)

    def test_zero_qos_exponent_raises(self):
        with self.assertRaises(DomainError):
            effective_capacity([[1.0]], QosParams(0.0, 1.0))

    def test_radius_above_one_raises(self):
        with self.assertRaises(DomainError):
            effective_capacity([[1.1]], QosParams(1.0, 1.0))

    def test_matrix_built_at_other_qos_raises(self):
        with self.assertRaises(DomainError):
            effective_capacity(CompanionMatrix([[0.5]], 2.0, 1.0), QosParams(1.0, 1.0))

    def test_slightly_supercritical_radius_clamps_to_zero(self):
        self.assertEqual(0.0, effective_capacity([[1.0 + 1e-12]], QosParams(1.0, 1.0)))

    def test_capacity_lies_between_zero_and_rate(self):
        rng = np.random.default_rng(2022)
        for _ in range(200):
            snr_db = rng.uniform(-5.0, 40.0, size=3)
            links = Links(*(LinkParams.from_db(s, rng.uniform(0.5, 2.0)) for s in snr_db))
            rate = rng.choice([0.5, 1.0, 2.0, 4.0])
            theta = rng.choice(THETAS)
            strategy = Strategy.I if rng.uniform() < 0.25 else Strategy.II
            cfg = StrategyConfig(strategy, links, RateThreshold(rate), Combining.RR,
                                 int(rng.integers(1, 5)), int(rng.integers(1, 5)))
            capacity = strategy_effective_capacity(cfg, theta)
            self.assertGreaterEqual(capacity, 0.0)
            self.assertLessEqual(capacity, rate)

    def test_capacity_nonincreasing_in_theta(self):
        links = Links(LinkParams.from_db(8.0), LinkParams.from_db(15.0), LinkParams.from_db(12.0))
        for strategy, combining in [(Strategy.I, Combining.RR), (Strategy.II, Combining.RR),
                                    (Strategy.II, Combining.IR)]:
            with self.subTest(strategy=strategy, combining=combining):
                cfg = StrategyConfig(strategy, links, RateThreshold(2.0), combining, 2, 2)
                capacities = [strategy_effective_capacity(cfg, theta) for theta in THETAS]
                for higher, lower in zip(capacities, capacities[1:]):
                    self.assertLessEqual(lower, higher + 1e-12)

    def test_high_snr_capacity_approaches_rate(self):
        cfg = StrategyConfig(Strategy.II, Links.symmetric(LinkParams.from_db(40.0)), RateThreshold(1.0))
        self.assertGreaterEqual(strategy_effective_capacity(cfg, 1.0), 0.99)

    def test_truncated_cooperation_dominates_lossless_arq_cooperation(self):
        for rate in [2.0, 4.0]:
            for theta in [1.0, 4.0]:
                for snr_db in range(0, 45, 5):
                    with self.subTest(rate=rate, theta=theta, snr_db=snr_db):
                        links = Links.symmetric(LinkParams.from_db(snr_db))
                        s1 = StrategyConfig(Strategy.I, links, RateThreshold(rate))
                        s2 = StrategyConfig(Strategy.II, links, RateThreshold(rate))
                        self.assertGreaterEqual(strategy_effective_capacity(s2, theta),
                                                strategy_effective_capacity(s1, theta) - 1e-9)


if __name__ == "__main__":
    unittest.main()
