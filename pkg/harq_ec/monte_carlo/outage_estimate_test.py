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

from harq_ec.distributions.erlang import ErlangSpec, erlang_cdf
from harq_ec.errors import DomainError
from harq_ec.monte_carlo.outage_estimate import compare_ir_rr, estimate_outage
from harq_ec.monte_carlo.plan import SimPlan, chunks
from harq_ec.outage.link import LinkParams, RateThreshold
from harq_ec.outage.scheme import OutageQuery, OutageScheme, closed_form_outage


class TestSimPlan(unittest.TestCase):

    def test_chunks_cover_the_total(self):
        self.assertListEqual([(0, 10), (1, 10), (2, 5)], chunks(25, 10))
        self.assertListEqual([(0, 7)], chunks(7, 10))

    def test_bounds(self):
        for kwargs in [{'seed': -1}, {'seed': 2 ** 64}, {'samples': 9999}, {'blocks': 999}, {'block_length': 99},
                       {'confidence': 1.0}]:
            with self.subTest(**kwargs):
                with self.assertRaises(DomainError):
                    SimPlan(**kwargs)

    def test_largest_seed_is_accepted(self):
        self.assertEqual(2 ** 64 - 1, SimPlan(seed=2 ** 64 - 1).seed)


class TestEstimateOutage(unittest.TestCase):

    def test_arq_matches_closed_form(self):
        query = OutageQuery(OutageScheme.ARQ, LinkParams(1.0), RateThreshold(1.0))
        estimate = estimate_outage(query, SimPlan(seed=1, samples=1_000_000))
        self.assertTrue(estimate.agrees_with(1.0 - math.exp(-1.0)))
        self.assertAlmostEqual(0.6321, estimate.estimate, delta=0.003)

    def test_symmetric_rr_combined_is_single_erlang(self):
        link = LinkParams.from_db(5.0)
        rt = RateThreshold(2.0)
        query = OutageQuery(OutageScheme.RR_COMBINED, link, rt, count=2, relay_link=link, relay_count=3)
        estimate = estimate_outage(query, SimPlan(seed=2, samples=400_000))
        self.assertTrue(estimate.agrees_with(erlang_cdf(ErlangSpec(5, link.rate_parameter), rt.threshold)))

    def test_ir_source_matches_closed_form(self):
        query = OutageQuery(OutageScheme.IR_SOURCE, LinkParams.from_db(3.0), RateThreshold(2.0), count=2)
        estimate = estimate_outage(query, SimPlan(seed=3, samples=400_000))
        self.assertTrue(estimate.agrees_with(closed_form_outage(query)))

    def test_same_plan_gives_identical_estimates(self):
        query = OutageQuery(OutageScheme.RR_SOURCE, LinkParams(2.0), RateThreshold(1.0), count=2)
        plan = SimPlan(seed=42, samples=50_000, chunk_size=10_000)
        first = estimate_outage(query, plan)
        self.assertEqual(first, estimate_outage(query, plan))
        self.assertEqual(first, estimate_outage(query, plan, n_jobs=2))


class TestCompareIrRr(unittest.TestCase):

    def test_incremental_redundancy_never_fails_where_repetition_succeeds(self):
        sd, rd = LinkParams.from_db(0.0), LinkParams.from_db(6.0)
        comparison = compare_ir_rr(sd, rd, 2, 2, RateThreshold(2.0), SimPlan(seed=5, samples=200_000))
        self.assertEqual(0, comparison.violations)
        self.assertLess(comparison.ir_failures, comparison.rr_failures)
        self.assertEqual(200_000, comparison.samples)

    def test_single_attempt_schemes_coincide(self):
        comparison = compare_ir_rr(LinkParams(1.0), LinkParams(1.0), 1, 0, RateThreshold(1.0),
                                   SimPlan(seed=6, samples=20_000))
        self.assertEqual(comparison.rr_failures, comparison.ir_failures)


if __name__ == "__main__":
    unittest.main()
