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

import networkx as nx

TRANSITION_RTOL = 1e-14


def match_modes(data1, data2):
    return data1 == data2


def match_transitions(data1, data2):
    """Parallel transitions match when their (packets, probability) outcomes agree, whatever their keys"""
    outcomes_1 = sorted((d['packets'], d['probability']) for d in data1.values())
    outcomes_2 = sorted((d['packets'], d['probability']) for d in data2.values())
    if len(outcomes_1) != len(outcomes_2):
        return False
    return all(v1 == v2 and math.isclose(p1, p2, rel_tol=TRANSITION_RTOL, abs_tol=0.0)
               for (v1, p1), (v2, p2) in zip(outcomes_1, outcomes_2))


class ModeGraphTestCase(unittest.TestCase):

    def assertModesEqual(self, graph_1, graph_2):
        try:
            self.assertCountEqual(list(graph_1.nodes()), list(graph_2.nodes()))
        except AssertionError as e:
            raise AssertionError('Modes do not match. ' + str(e))

    def assertTransitionsEqual(self, graph_1, graph_2):
        try:
            self.assertCountEqual(list(graph_1.edges()), list(graph_2.edges()))
        except AssertionError as e:
            raise AssertionError('Transitions do not match. ' + str(e))

    def assertIsIsomorphic(self, graph_1, graph_2):
        try:
            self.assertTrue(nx.is_isomorphic(graph_1, graph_2,
                                             node_match=match_modes,
                                             edge_match=match_transitions))
        except AssertionError:
            raise AssertionError(
                "The two mode graphs are not isomorphic based on the data attached to the modes and/or transitions")

    def assertGraphsEqual(self, graph_1, graph_2):
        self.assertModesEqual(graph_1, graph_2)
        self.assertTransitionsEqual(graph_1, graph_2)
        self.assertIsIsomorphic(graph_1, graph_2)
