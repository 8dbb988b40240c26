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

from harq_ec.mode_graph.iterate import outgoing_transition_iterator, transition_iterator
from harq_ec.mode_graph.mode_graph import ModeGraph


class TestTransitionIterators(unittest.TestCase):

    def setUp(self):
        self.graph = ModeGraph()
        self.graph.add_source_mode(1, attempt=1).add_relay_mode(2, source_attempt=1, relay_attempt=1)
        self.graph.add_transition(1, 1, 0.25, packets=0)
        self.graph.add_transition(1, 1, 0.5, packets=1)
        self.graph.add_transition(1, 2, 0.25, packets=0)
        self.graph.add_transition(2, 1, 1.0, packets=1)

    def test_transitions_are_yielded_in_insertion_order(self):
        self.assertListEqual([(1, 1, 0.25, 0), (1, 1, 0.5, 1), (1, 2, 0.25, 0), (2, 1, 1.0, 1)],
                             list(transition_iterator(self.graph)))

    def test_outgoing_transitions_of_one_mode(self):
        self.assertListEqual([(2, 1, 1.0, 1)], list(outgoing_transition_iterator(self.graph, 2)))

    def test_empty_graph_yields_nothing(self):
        self.assertListEqual([], list(transition_iterator(ModeGraph())))


if __name__ == "__main__":
    unittest.main()
