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

import numpy as np

from harq_ec.distributions.erlang import ErlangSpec
from harq_ec.distributions.samplers import sample_erlang, sample_exponential
from harq_ec.errors import DomainError


class TestSamplers(unittest.TestCase):

    def test_same_seed_gives_same_sequence(self):
        first = sample_exponential(1.0, np.random.default_rng(2022), size=10)
        second = sample_exponential(1.0, np.random.default_rng(2022), size=10)
        np.testing.assert_array_equal(first, second)

    def test_single_draw_is_a_float(self):
        self.assertIsInstance(sample_exponential(1.0, 5), float)
        self.assertIsInstance(sample_erlang(ErlangSpec(2, 1.0), 5), float)

    def test_exponential_mean(self):
        draws = sample_exponential(2.0, np.random.default_rng(1), size=1_000_000)
        self.assertAlmostEqual(0.5, draws.mean(), delta=0.005)
        self.assertTrue(np.all(draws >= 0))

    def test_erlang_mean(self):
        draws = sample_erlang(ErlangSpec(3, 1.0), np.random.default_rng(2), size=1_000_000)
        self.assertAlmostEqual(3.0, draws.mean(), delta=0.03)

    def test_nonpositive_rate_raises(self):
        with self.assertRaises(DomainError):
            sample_exponential(0.0, 1)


if __name__ == "__main__":
    unittest.main()
