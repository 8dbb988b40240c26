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
from unittest import mock

import numpy as np
from scipy import integrate, special

from harq_ec.errors import ConvergenceError, DomainError
from harq_ec.specfun.incomplete_gamma import lower_incomplete_gamma, upper_incomplete_gamma_complex, \
    log_upper_incomplete_gamma_complex


class TestLowerIncompleteGamma(unittest.TestCase):

    def test_order_one_is_exponential_cdf(self):
        self.assertAlmostEqual(1 - math.exp(-0.7), lower_incomplete_gamma(1, 0.7), delta=1e-12)

    def test_zero_argument_gives_zero(self):
        self.assertEqual(0.0, lower_incomplete_gamma(2, 0))

    def test_order_two_matches_series(self):
        self.assertAlmostEqual(1 - 2 * math.exp(-1), lower_incomplete_gamma(2, 1), delta=1e-12)

    def test_is_nondecreasing_and_bounded_by_gamma(self):
        values = [lower_incomplete_gamma(5.5, x) for x in np.linspace(0, 60, 200)]
        self.assertTrue(all(b >= a for a, b in zip(values, values[1:])))
        self.assertLessEqual(values[-1], special.gamma(5.5) * (1 + 1e-14))

    def test_large_order_is_accurate_relative_to_gamma(self):
        expected = special.gamma(64) * special.gammainc(64, 70.0)
        self.assertAlmostEqual(1.0, lower_incomplete_gamma(64, 70.0) / expected, delta=1e-12)

    def test_nonpositive_order_raises(self):
        with self.assertRaises(DomainError):
            lower_incomplete_gamma(0, 1.0)

    def test_negative_argument_raises(self):
        with self.assertRaises(DomainError):
            lower_incomplete_gamma(2, -0.1)


class TestUpperIncompleteGammaComplex(unittest.TestCase):

    def test_order_one_is_exponential_tail(self):
        value = upper_incomplete_gamma_complex(1, 2.0)
        self.assertAlmostEqual(math.exp(-2), value.real, delta=1e-14)
        self.assertAlmostEqual(0.0, value.imag, delta=1e-14)

    def test_order_two(self):
        value = upper_incomplete_gamma_complex(2, 1.0)
        self.assertAlmostEqual(2 * math.exp(-1), value.real, delta=1e-13)

    def test_large_argument_uses_continued_fraction(self):
        value = upper_incomplete_gamma_complex(3, 20.0)
        expected = special.gammaincc(3, 20.0) * special.gamma(3)
        self.assertAlmostEqual(1.0, value.real / expected, delta=1e-12)

    def test_complex_order_matches_quadrature(self):
        s = 0.5 + 10j

        def real_part(t):
            return (t ** (s - 1) * math.exp(-t)).real

        def imaginary_part(t):
            return (t ** (s - 1) * math.exp(-t)).imag

        expected_real, _ = integrate.quad(real_part, 1, 60, limit=400, epsabs=1e-15, epsrel=1e-13)
        expected_imag, _ = integrate.quad(imaginary_part, 1, 60, limit=400, epsabs=1e-15, epsrel=1e-13)
        expected = complex(expected_real, expected_imag)
        value = upper_incomplete_gamma_complex(s, 1.0)
        self.assertLess(abs(value - expected) / abs(expected), 1e-9)

    def test_recurrence_holds_on_grid(self):
        orders = np.array([0.5, 2.5 + 3j, 1.2 - 7j, 10 + 20j, 0.3 + 40j, 30 - 5j])
        for x in [0.01, 1.0, 10.0, 100.0]:
            left = upper_incomplete_gamma_complex(orders + 1, x)
            right = orders * upper_incomplete_gamma_complex(orders, x) + np.exp(orders * math.log(x) - x)
            np.testing.assert_allclose(left, right, rtol=1e-8)

    def test_array_input_keeps_shape(self):
        orders = np.array([[1.0, 2.0], [0.5 + 1j, 3.0 - 2j]])
        self.assertEqual((2, 2), upper_incomplete_gamma_complex(orders, 1.5).shape)

    def test_zero_argument_in_log_form_is_log_gamma(self):
        s = 0.5 + 3j
        self.assertAlmostEqual(0.0, abs(log_upper_incomplete_gamma_complex(s, 0.0) - special.loggamma(s)),
                               delta=1e-14)

    def test_nonpositive_argument_raises(self):
        with self.assertRaises(DomainError):
            upper_incomplete_gamma_complex(1 + 1j, 0.0)

    def test_exhausted_iterations_raise_with_best_estimate(self):
        with mock.patch('harq_ec.specfun.incomplete_gamma.MAX_ITERATIONS', 2):
            with self.assertRaises(ConvergenceError) as context:
                upper_incomplete_gamma_complex(0.5, 0.5)
        self.assertIsNotNone(context.exception.best_estimate)


if __name__ == "__main__":
    unittest.main()
