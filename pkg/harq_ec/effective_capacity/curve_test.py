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
import os
import tempfile
import unittest

from harq_ec.effective_capacity.curve import CurveTable, snr_gap_db
from harq_ec.errors import DomainError


class TestCurveTable(unittest.TestCase):

    def setUp(self):
        self.table = CurveTable('snr_db', [0.0, 5.0, 10.0], [0.1, 1.0 / 3.0, 0.9876543210987654],
                                {'strategy': 'II', 'M': '2'}, y_name='ec')

    def test_csv_layout(self):
        text = self.table.to_csv()
        self.assertEqual('# params: strategy=II M=2\n'
                         'snr_db,ec\n'
                         '0,0.1\n'
                         '5,0.333333333333333\n'
                         '10,0.987654321098765\n', text)

    def test_reparsed_csv_is_identical(self):
        reparsed = CurveTable.from_csv(io.StringIO(self.table.to_csv()))
        self.assertTrue(reparsed.equals(self.table))
        self.assertEqual(self.table.to_csv(), reparsed.to_csv())

    def test_round_trip_through_file_keeps_extra_columns(self):
        table = CurveTable('snr_db', [0.0, 10.0], [0.5, 0.05], {'scheme': 'rr_source'}, 'closed_form',
                           {'mc_estimate': [0.51, 0.049], 'mc_stderr': [0.004, 0.002]})
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'curve.csv')
            table.to_csv(path)
            with open(path, newline='') as f:
                self.assertNotIn('\r', f.read())
            reparsed = CurveTable.from_csv(path)
        self.assertTrue(reparsed.equals(table))
        self.assertListEqual(['mc_estimate', 'mc_stderr'], list(reparsed.extra_columns))

    def test_different_values_are_not_equal(self):
        other = CurveTable('snr_db', [0.0, 5.0, 10.0], [0.1, 0.3, 0.9876543210987654], {'strategy': 'II', 'M': '2'},
                           y_name='ec')
        self.assertFalse(other.equals(self.table))

    def test_x_must_increase_strictly(self):
        with self.assertRaises(DomainError):
            CurveTable('x', [0.0, 0.0], [1.0, 2.0])

    def test_lengths_must_match(self):
        with self.assertRaises(DomainError):
            CurveTable('x', [0.0, 1.0], [1.0])

    def test_metadata_must_be_space_free(self):
        with self.assertRaises(DomainError):
            CurveTable('x', [0.0], [1.0], {'note': 'two words'})


class TestSnrGap(unittest.TestCase):

    def test_gap_between_shifted_curves(self):
        reference = CurveTable('snr_db', [0.0, 10.0, 20.0, 30.0], [0.0, 1.0, 2.0, 3.0])
        improved = CurveTable('snr_db', [0.0, 10.0, 20.0, 30.0], [0.5, 1.5, 2.5, 3.0])
        self.assertAlmostEqual(5.0, snr_gap_db(reference, improved, 2.0), delta=1e-12)

    def test_level_out_of_reach_raises(self):
        curve = CurveTable('snr_db', [0.0, 10.0], [0.2, 0.4])
        with self.assertRaises(DomainError):
            snr_gap_db(curve, curve, 1.0)


if __name__ == "__main__":
    unittest.main()
