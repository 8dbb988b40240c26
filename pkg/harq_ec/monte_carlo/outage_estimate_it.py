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

from harq_ec.monte_carlo.outage_estimate import compare_ir_rr, estimate_outage
from harq_ec.monte_carlo.plan import SimPlan, derived_seed
from harq_ec.outage.link import LinkParams, RateThreshold
from harq_ec.outage.scheme import OutageQuery, OutageScheme, closed_form_outage

SNR_DB = (0.0, 5.0, 10.0, 20.0)
RATES = (0.5, 1.0, 2.0, 4.0)
MAX_COUNT = 4
SAMPLES = 1_000_000
SIGMAS = 4.0


def standard_errors_apart(probability, estimate):
    """Distance in binomial standard errors of the closed-form probability, continuity corrected"""
    std_error = math.sqrt(max(probability * (1.0 - probability), 1.0 / SAMPLES) / SAMPLES)
    return max(0.0, abs(estimate.estimate - probability) - 0.5 / SAMPLES) / std_error


def queries():
    for snr_db in SNR_DB:
        for rate in RATES:
            sd = LinkParams.from_db(snr_db)
            rd = LinkParams.from_db(snr_db + 3.0, 0.5)
            rt = RateThreshold(rate)
            yield OutageQuery(OutageScheme.ARQ, sd, rt)
            for count in range(1, MAX_COUNT + 1):
                yield OutageQuery(OutageScheme.RR_SOURCE, sd, rt, count)
                yield OutageQuery(OutageScheme.IR_SOURCE, sd, rt, count)
            for l in range(1, MAX_COUNT):
                for k2 in range(1, MAX_COUNT - l + 1):
                    yield OutageQuery(OutageScheme.RR_COMBINED, sd, rt, l, rd, k2)
                    yield OutageQuery(OutageScheme.IR_COMBINED, sd, rt, l, rd, k2)


class ITOutageAgainstSimulation(unittest.TestCase):

    def test_closed_forms_agree_with_simulation_over_the_grid(self):
        compared = 0
        for index, query in enumerate(queries()):
            closed = closed_form_outage(query)
            if closed < 1e-3:
                continue
            estimate = estimate_outage(query, SimPlan(seed=derived_seed(2024, index), samples=SAMPLES))
            with self.subTest(scheme=query.scheme.value, count=query.label, snr_db=query.link.snr_db,
                              rate=query.rt.rate):
                self.assertLessEqual(standard_errors_apart(closed, estimate), SIGMAS)
            compared += 1
        self.assertGreater(compared, 100)

    def test_incremental_redundancy_never_loses_on_shared_draws(self):
        for index, (l, k2) in enumerate([(1, 1), (2, 1), (1, 3), (3, 0)]):
            with self.subTest(l=l, k2=k2):
                comparison = compare_ir_rr(LinkParams.from_db(0.0), LinkParams.from_db(10.0), l, k2,
                                           RateThreshold(4.0), SimPlan(seed=index, samples=SAMPLES))
                self.assertEqual(0, comparison.violations)
                self.assertLess(comparison.ir_estimate, comparison.rr_estimate)


if __name__ == "__main__":
    unittest.main()
