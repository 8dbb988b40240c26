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


import contextlib
import io
import json
import os
import tempfile
import textwrap
import unittest
from pathlib import Path
from unittest import mock

import numpy as np

from harq_ec.cli import main
from harq_ec.cli.validation import CheckResult, ValidationReport
from harq_ec.effective_capacity.curve import CurveTable
from harq_ec.effective_capacity.qos import QosParams
from harq_ec.errors import ConvergenceError
from harq_ec.mode_graph.reference import strategy2_reference
from harq_ec.mode_graph.sentinel import sentinel_outage_table


def run(*argv):
    stdout, stderr = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
        code = main.main(list(argv))
    return code, stdout.getvalue(), stderr.getvalue()


class CliTestCase(unittest.TestCase):

    def setUp(self):
        self._directory = tempfile.TemporaryDirectory()
        self.directory = Path(self._directory.name)

    def tearDown(self):
        self._directory.cleanup()

    def write_config(self, body, name='scenario.ini'):
        path = self.directory / name
        path.write_text(textwrap.dedent(body).lstrip('\n'))
        return path


class TestEcCommand(CliTestCase):

    def ec_config(self, strategy, grid, rate=1, theta=1, name='scenario.ini'):
        return self.write_config(f"""
            [strategy]
            strategy = {strategy}

            [links]
            snr_db = 10

            [qos]
            rate = {rate}
            theta = {theta}

            [sweep]
            axis = snr_db
            grid = {grid}
        """, name)

    def test_curve_is_written(self):
        config = self.ec_config('II', '0,10,20')
        out = self.directory / 'ec.csv'
        code, _, _ = run('ec', '--config', str(config), '--out', str(out))
        self.assertEqual(0, code)
        curve = CurveTable.from_csv(out)
        self.assertEqual(('snr_db', 'ec'), (curve.x_name, curve.y_name))
        self.assertEqual((0.0, 10.0, 20.0), curve.x_values)
        self.assertTrue(np.all(np.diff(curve.y_values) >= 0))
        self.assertTrue(all(0 <= y <= 1 for y in curve.y_values))
        self.assertEqual('snr_db', curve.metadata['axis'])

    def test_single_point_gives_single_row(self):
        config = self.ec_config('I', '5')
        out = self.directory / 'ec.csv'
        self.assertEqual(0, run('ec', '--config', str(config), '--out', str(out))[0])
        self.assertEqual(1, len(CurveTable.from_csv(out)))

    def test_curve_goes_to_stdout_without_output_path(self):
        config = self.ec_config('I', '5,10')
        code, stdout, _ = run('ec', '--config', str(config))
        self.assertEqual(0, code)
        self.assertTrue(stdout.startswith('# params: '))
        self.assertEqual(2, len(CurveTable.from_csv(io.StringIO(stdout))))

    def test_second_strategy_dominates_first(self):
        curves = {}
        for strategy in ['I', 'II']:
            config = self.ec_config(strategy, '0:40:10', rate=4, name=f'{strategy}.ini')
            out = self.directory / f'{strategy}.csv'
            self.assertEqual(0, run('ec', '--config', str(config), '--out', str(out))[0])
            curves[strategy] = np.array(CurveTable.from_csv(out).y_values)
        self.assertTrue(np.all(curves['II'] >= curves['I'] - 1e-9))

    def test_theta_sweep_is_nonincreasing(self):
        config = self.write_config("""
            [links]
            snr_db = 10

            [qos]
            rate = 2

            [sweep]
            axis = theta
            grid = 0.25, 0.5, 1, 2, 4
        """)
        out = self.directory / 'theta.csv'
        self.assertEqual(0, run('ec', '--config', str(config), '--out', str(out))[0])
        self.assertTrue(np.all(np.diff(CurveTable.from_csv(out).y_values) <= 1e-12))

    def test_parallel_run_writes_the_same_file(self):
        config = self.ec_config('II', '0:20:5')
        serial, parallel = self.directory / 'serial.csv', self.directory / 'parallel.csv'
        self.assertEqual(0, run('ec', '--config', str(config), '--out', str(serial))[0])
        self.assertEqual(0, run('ec', '--config', str(config), '--out', str(parallel), '--threads', '2')[0])
        self.assertEqual(serial.read_text(), parallel.read_text())

    def test_numeric_failure_exits_with_three(self):
        config = self.ec_config('II', '0,10')
        with mock.patch.object(main, 'ec_sweep', side_effect=ConvergenceError('no convergence', 0.5)):
            self.assertEqual(3, run('ec', '--config', str(config))[0])


class TestConfigErrors(CliTestCase):

    def test_empty_grid_exits_with_two(self):
        config = self.write_config("""
            [links]
            snr_db = 10

            [qos]
            rate = 1

            [sweep]
            axis = snr_db
            grid =
        """)
        with self.assertLogs(main.logger, level='ERROR') as logs:
            code = run('ec', '--config', str(config))[0]
        self.assertEqual(2, code)
        self.assertIn('[sweep] grid (line 9)', logs.output[0])

    def test_missing_config_exits_with_two(self):
        self.assertEqual(2, run('ec')[0])

    def test_missing_sweep_exits_with_two(self):
        config = self.write_config("""
            [links]
            snr_db = 10

            [qos]
            rate = 1
        """)
        self.assertEqual(2, run('outage', '--config', str(config))[0])

    def test_bad_thread_variable_exits_with_two(self):
        config = self.write_config("""
            [links]
            snr_db = 10

            [qos]
            rate = 1

            [sweep]
            axis = snr_db
            grid = 0
        """)
        with mock.patch.dict(os.environ, {main.THREADS_VARIABLE: 'many'}):
            self.assertEqual(2, run('ec', '--config', str(config))[0])


class TestOutageCommand(CliTestCase):

    def test_one_file_per_count(self):
        config = self.write_config("""
            [links]
            snr_db = 0

            [qos]
            rate = 1

            [sweep]
            axis = snr_db
            grid = 0:30:10

            [outage]
            scheme = rr_source
            counts = 1,2,3
        """)
        out = self.directory / 'outage.csv'
        self.assertEqual(0, run('outage', '--config', str(config), '--out', str(out))[0])
        curves = [CurveTable.from_csv(self.directory / f'outage_{k}.csv') for k in (1, 2, 3)]
        for curve in curves:
            self.assertEqual(['snr_db', 'closed_form'], list(curve.to_frame().columns))
            self.assertTrue(np.all(np.diff(curve.y_values) < 0))
        self.assertAlmostEqual(1.0 - np.exp(-1.0), curves[0].y_values[0], places=12)
        for fewer, more in zip(curves, curves[1:]):
            self.assertTrue(np.all(np.array(more.y_values) < np.array(fewer.y_values)))

    def test_combined_scheme_labels_files_by_pairs(self):
        config = self.write_config("""
            [links]
            snr_db = 5

            [qos]
            rate = 1

            [sweep]
            axis = snr_rd_db
            grid = 0, 10

            [outage]
            scheme = ir_combined
            counts = 1:1, 2:1
        """)
        out = self.directory / 'combined.csv'
        self.assertEqual(0, run('outage', '--config', str(config), '--out', str(out))[0])
        for label in ['1_1', '2_1']:
            curve = CurveTable.from_csv(self.directory / f'combined_{label}.csv')
            self.assertEqual(label, curve.metadata['count'])
            self.assertNotIn('snr_rd_db', curve.metadata)
            self.assertGreater(curve.y_values[0], curve.y_values[1])

    def test_simulated_columns_agree_with_closed_form(self):
        config = self.write_config("""
            [links]
            snr_db = 0

            [qos]
            rate = 2

            [sweep]
            axis = snr_db
            grid = 0, 5

            [outage]
            scheme = ir_source
            counts = 2

            [sim]
            seed = 3
            samples = 40000
        """)
        out = self.directory / 'ir.csv'
        self.assertEqual(0, run('outage', '--config', str(config), '--out', str(out), '--mc')[0])
        frame = CurveTable.from_csv(self.directory / 'ir_2.csv').to_frame()
        self.assertEqual(['snr_db', 'closed_form', 'mc_estimate', 'mc_stderr'], list(frame.columns))
        deviation = np.abs(frame['mc_estimate'] - frame['closed_form'])
        self.assertTrue(np.all(deviation <= 5 * frame['mc_stderr'] + 1e-3))

    def test_theta_axis_is_rejected(self):
        config = self.write_config("""
            [links]
            snr_db = 0

            [qos]
            rate = 1

            [sweep]
            axis = theta
            grid = 1, 2
        """)
        self.assertEqual(2, run('outage', '--config', str(config))[0])


class TestMatrixCommand(CliTestCase):

    def test_strategy1_sentinel_matrix_at_zero_theta(self):
        config = self.write_config("""
            [strategy]
            strategy = I

            [links]
            snr_db = 10

            [qos]
            rate = 1
            theta = 0.5
        """)
        out = self.directory / 'matrix.csv'
        code, _, stderr = run('matrix', '--config', str(config), '--sentinel', '--theta', '0', '--out', str(out))
        self.assertEqual(0, code)
        self.assertEqual('L=2', out.read_text().splitlines()[0])
        values = np.loadtxt(out, delimiter=',', skiprows=1)
        np.testing.assert_allclose([[2 / 3, 4 / 5], [1 / 3, 1 / 5]], values, rtol=1e-14)
        self.assertIn('column sums:', stderr)

    def test_strategy2_sentinel_matrix_matches_reference(self):
        config = self.write_config("""
            [strategy]
            strategy = II
            source_budget = 2
            relay_budget = 2

            [links]
            snr_db = 10

            [qos]
            rate = 1
            theta = 1
        """)
        out = self.directory / 'matrix.csv'
        self.assertEqual(0, run('matrix', '--config', str(config), '--sentinel', '--out', str(out))[0])
        self.assertEqual('L=6', out.read_text().splitlines()[0])
        expected = strategy2_reference(sentinel_outage_table(2, 2), QosParams(1.0, 1.0).delivery_weight)
        np.testing.assert_allclose(expected, np.loadtxt(out, delimiter=',', skiprows=1), rtol=1e-14)

    def test_computed_matrix_has_unit_column_sums_at_zero_theta(self):
        config = self.write_config("""
            [strategy]
            combining = IR
            source_budget = 2
            relay_budget = 1

            [links]
            snr_db = 3

            [qos]
            rate = 2
            theta = 0
        """)
        code, stdout, _ = run('matrix', '--config', str(config))
        self.assertEqual(0, code)
        values = np.loadtxt(io.StringIO(stdout), delimiter=',', skiprows=1)
        self.assertEqual((4, 4), values.shape)
        np.testing.assert_allclose(np.ones(4), values.sum(axis=0), atol=1e-12)


class TestValidateCommand(CliTestCase):

    @staticmethod
    def report(passed):
        checks = (
            CheckResult(1, 'matrix fidelity', True, 0.0, 1e-14, 5, ''),
            CheckResult(4, 'incremental redundancy dominance', passed, 0.0 if passed else 0.1, 1e-8, 12, ''),
        )
        return ValidationReport('reduced', 9, 1.0, checks)

    def test_passing_report_exits_with_zero_and_writes_json(self):
        out = self.directory / 'report.json'
        with mock.patch.object(main, 'run_validation', return_value=self.report(True)) as run_validation:
            code, stdout, _ = run('validate', '--seed', '9', '--out', str(out))
        self.assertEqual(0, code)
        self.assertEqual(9, run_validation.call_args[0][1])
        self.assertIn('PASS [1] matrix fidelity', stdout)
        summary = json.loads(out.read_text())
        self.assertTrue(summary['passed'])
        self.assertEqual(2, len(summary['checks']))

    def test_failing_report_exits_with_one(self):
        with mock.patch.object(main, 'run_validation', return_value=self.report(False)):
            code, stdout, _ = run('validate', '--tolerance-scale', '0')
        self.assertEqual(1, code)
        self.assertIn('FAIL [4]', stdout)


if __name__ == "__main__":
    unittest.main()
