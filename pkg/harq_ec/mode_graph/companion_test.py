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


import io
import unittest

import numpy as np
from numpy.testing import assert_allclose

from harq_ec.effective_capacity.qos import QosParams
from harq_ec.mode_graph.builders import build_strategy1, build_strategy2
from harq_ec.mode_graph.companion import CompanionMatrix, alpha_matrix
from harq_ec.mode_graph.config import Strategy, StrategyConfig
from harq_ec.mode_graph.sentinel import first_primes, sentinel_outage_table, sentinel_strategy1_outages
from harq_ec.outage.link import LinkParams, Links, RateThreshold
from harq_ec.outage.scheme import Combining
from harq_ec.outage.table import Strategy1Outages

LINKS = Links.symmetric(LinkParams.from_db(10.0))
RT = RateThreshold(1.0)


class TestAlphaMatrix(unittest.TestCase):

    def test_columns_sum_to_one_without_qos_constraint(self):
        for combining in Combining:
            with self.subTest(combining=combining):
                cfg = StrategyConfig(Strategy.II, LINKS, RT, combining, 2, 3)
                matrix = alpha_matrix(build_strategy2(cfg), QosParams(0.0, 1.0))
                assert_allclose(np.ones(8), matrix.column_sums(), rtol=0, atol=1e-12)
                self.assertTrue(matrix.is_column_stochastic())

    def test_strict_qos_keeps_only_undelivering_transitions(self):
        outages = sentinel_strategy1_outages()
        graph = build_strategy1(StrategyConfig(Strategy.I, LINKS, RT), outages)
        matrix = alpha_matrix(graph, QosParams(1e4, 1.0))
        expected = np.array([
            [outages.sd * outages.sr, 0.0],
            [outages.sd * (1 - outages.sr), outages.rd],
        ])
        assert_allclose(expected, matrix.values, rtol=1e-14, atol=0)

    def test_entries_are_nonnegative(self):
        graph = build_strategy2(StrategyConfig(Strategy.II, LINKS, RT, Combining.RR, 3, 3), sentinel_outage_table(3, 3))
        self.assertTrue(np.all(alpha_matrix(graph, QosParams(2.0, 1.0)).values >= 0))

    def test_matrix_is_read_only(self):
        matrix = CompanionMatrix([[0.5]], 1.0, 1.0)
        with self.assertRaises(ValueError):
            matrix.values[0, 0] = 1.0


class TestCompanionMatrix(unittest.TestCase):

    def test_reachable_block_drops_unreachable_relay(self):
        graph = build_strategy1(StrategyConfig(Strategy.I, LINKS, RT), Strategy1Outages(0.4, 1.0, 0.3))
        modes, block = alpha_matrix(graph, QosParams(1.0, 1.0)).reachable_block()
        self.assertListEqual([1], modes)
        assert_allclose([[0.4 + 0.6 * np.exp(-1.0)]], block, rtol=1e-15)

    def test_reachable_block_of_irreducible_matrix_is_whole_matrix(self):
        matrix = CompanionMatrix([[0.2, 1.0], [0.8, 0.0]], 1.0, 1.0)
        modes, block = matrix.reachable_block()
        self.assertListEqual([1, 2], modes)
        assert_allclose(matrix.values, block)

    def test_csv_has_mode_count_header_and_row_major_rows(self):
        buffer = io.StringIO()
        CompanionMatrix([[0.25, 1.0], [0.75, 0.0]], 0.0, 1.0).to_csv(buffer)
        self.assertEqual('L=2\n0.25,1\n0.75,0\n', buffer.getvalue())


class TestSentinel(unittest.TestCase):

    def test_first_primes(self):
        self.assertListEqual([2, 3, 5, 7, 11, 13, 17, 19, 23, 29], first_primes(10).tolist())

    def test_enough_primes_for_large_tables(self):
        primes = first_primes(100)
        self.assertEqual(100, len(primes))
        self.assertEqual(541, primes[-1])


if __name__ == "__main__":
    unittest.main()
