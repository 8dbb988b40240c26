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


import unittest

from harq_ec.effective_capacity.capacity import effective_capacity
from harq_ec.effective_capacity.qos import QosParams
from harq_ec.mode_graph.builders import build_mode_graph
from harq_ec.mode_graph.companion import alpha_matrix
from harq_ec.mode_graph.config import Strategy, StrategyConfig
from harq_ec.monte_carlo.plan import SimPlan
from harq_ec.monte_carlo.service import simulate_service_process
from harq_ec.outage.link import LinkParams, Links, RateThreshold
from harq_ec.outage.scheme import Combining

RELATIVE_TOLERANCE = 0.02

# (strategy, combining, M, N, snr_sd_db, snr_sr_db, snr_rd_db, rate, theta)
CONFIGS = (
    (Strategy.I, Combining.RR, 1, 1, 10.0, 10.0, 10.0, 1.0, 1.0),
    (Strategy.I, Combining.RR, 1, 1, 5.0, 20.0, 15.0, 2.0, 0.5),
    (Strategy.II, Combining.RR, 1, 1, 8.0, 12.0, 20.0, 1.0, 2.0),
    (Strategy.II, Combining.IR, 2, 2, 6.0, 18.0, 9.0, 2.0, 1.0),
    (Strategy.II, Combining.RR, 3, 1, 15.0, 5.0, 25.0, 0.5, 2.0),
    (Strategy.II, Combining.IR, 1, 4, 12.0, 22.0, 7.0, 1.0, 0.5),
    (Strategy.II, Combining.RR, 4, 3, 20.0, 10.0, 10.0, 2.0, 1.0),
    (Strategy.II, Combining.IR, 3, 3, 25.0, 25.0, 25.0, 1.0, 2.0),
)


class ITEffectiveCapacityAgainstServiceSimulation(unittest.TestCase):

    def test_spectral_capacity_matches_simulated_service(self):
        for index, (strategy, combining, source_budget, relay_budget, sd, sr, rd, rate, theta) in enumerate(CONFIGS):
            links = Links(LinkParams.from_db(sd), LinkParams.from_db(sr), LinkParams.from_db(rd))
            cfg = StrategyConfig(strategy, links, RateThreshold(rate), combining, source_budget, relay_budget)
            qos = QosParams(theta, rate)
            graph = build_mode_graph(cfg)
            expected = effective_capacity(alpha_matrix(graph, qos), qos)
            result = simulate_service_process(graph, qos, SimPlan(seed=100 + index), n_jobs=2)
            with self.subTest(config=cfg.describe(), theta=theta):
                self.assertAlmostEqual(1.0, result.estimate / expected, delta=RELATIVE_TOLERANCE)


if __name__ == "__main__":
    unittest.main()
