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

from harq_ec.distributions.shifted_exp import ShiftedExpProductSpec, sample_shifted_exp_product, \
    shifted_exp_product_cdf
from harq_ec.specfun.mellin_barnes import DEFAULT_CONTOUR

SAMPLES = 10_000_000
SIGMAS = 4.0

# (groups of (count, rate, shift), thresholds)
CASES = (
    (((1, 1.0, 1.0),), (1.5, 3.0, 10.0)),
    (((4, 0.5, 1.0),), (4.0, 16.0, 64.0)),
    (((3, 0.1, 1.0),), (2.0, 8.0)),
    (((2, 1.0, 1.0), (1, 0.5, 1.0)), (3.0, 8.0, 20.0)),
    (((1, 0.1, 1.0), (3, 0.2, 1.0)), (4.0, 16.0)),
    (((2, 3.16, 1.0), (2, 0.316, 1.0)), (2.0, 6.0, 30.0)),
)


class ITShiftedExpProductAgainstSampling(unittest.TestCase):

    def test_cdf_matches_sampled_products(self):
        for index, (groups, thresholds) in enumerate(CASES):
            spec = ShiftedExpProductSpec.of(*groups)
            samples = sample_shifted_exp_product(spec, np.random.default_rng(index), size=SAMPLES)
            for z in thresholds:
                closed = shifted_exp_product_cdf(spec, z)
                std_error = math.sqrt(max(closed * (1 - closed), 1 / SAMPLES) / SAMPLES)
                estimate = np.count_nonzero(samples <= z) / SAMPLES
                with self.subTest(groups=groups, z=z):
                    self.assertLessEqual(abs(estimate - closed), SIGMAS * std_error + 0.5 / SAMPLES)

    def test_cdf_does_not_depend_on_the_contour_abscissa(self):
        for groups, thresholds in CASES:
            spec = ShiftedExpProductSpec.of(*groups)
            for z in thresholds:
                values = [shifted_exp_product_cdf(spec, z, DEFAULT_CONTOUR.with_abscissa(c))
                          for c in (-0.8, -0.5, -0.2)]
                with self.subTest(groups=groups, z=z):
                    self.assertLess(max(values) - min(values), 1e-7)


if __name__ == "__main__":
    unittest.main()
