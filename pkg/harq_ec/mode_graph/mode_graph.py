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
from enum import Enum

import networkx as nx

from harq_ec.errors import DomainError
from harq_ec.mode_graph.iterate import outgoing_transition_iterator

NORMALIZATION_TOLERANCE = 1e-12
INITIAL_MODE = 1


class ModeKind(Enum):
    SOURCE = 'source'
    RELAY = 'relay'


class ModeGraph(nx.MultiDiGraph):
    """
    The communication modes of a retransmission protocol and the transitions between them. Nodes are the mode indices
    1..L. Each edge is one outcome of a slot spent in its source mode, carrying the `probability` of the outcome and
    the number of `packets` it delivers. Parallel edges distinguish outcomes that lead to the same mode.
    """

    def add_source_mode(self, mode, attempt):
        """
        Add a mode in which the source transmits
        Args:
            mode: Mode index
            attempt: Which source attempt l of the current packet this mode is

        Returns:
            self
        """
        self.add_node(mode, kind=ModeKind.SOURCE, attempt=attempt)
        return self

    def add_relay_mode(self, mode, source_attempt, relay_attempt):
        """
        Add a mode in which the relay transmits
        Args:
            mode: Mode index
            source_attempt: The number of source attempts l heard before the relay took over
            relay_attempt: Which relay attempt i this mode is

        Returns:
            self
        """
        self.add_node(mode, kind=ModeKind.RELAY, attempt=source_attempt, relay_attempt=relay_attempt)
        return self

    def add_transition(self, from_mode, to_mode, probability, packets):
        """
        Add one outcome of a slot in `from_mode`
        Args:
            from_mode: The mode the slot is spent in
            to_mode: The mode of the next slot
            probability: Probability of the outcome
            packets: Packets delivered to the destination by the outcome, 0 or 1

        Returns:
            self
        """
        if packets not in (0, 1):
            raise DomainError(f'A slot delivers 0 or 1 packets, got {packets}')
        if not 0.0 <= probability <= 1.0:
            raise DomainError(f'Transition probability must lie in [0, 1], got {probability}')
        self.add_edge(from_mode, to_mode, probability=float(probability), packets=packets)
        return self

    @property
    def mode_count(self):
        return self.number_of_nodes()

    def outgoing_probability(self, mode):
        return math.fsum(probability for _, _, probability, _ in outgoing_transition_iterator(self, mode))

    def validate_normalization(self, tolerance=NORMALIZATION_TOLERANCE):
        """
        Check that modes are numbered 1..L and that the outcomes of every mode partition the slot
        Returns:
            self
        """
        if sorted(self.nodes) != list(range(1, self.mode_count + 1)):
            raise DomainError(f'Modes must be numbered 1..L, got {sorted(self.nodes)}')
        for mode in self.nodes:
            total = self.outgoing_probability(mode)
            if abs(total - 1.0) > tolerance:
                raise DomainError(f'Outgoing probabilities of mode {mode} sum to {total}, not 1')
        return self

    def reachable_modes(self, start=INITIAL_MODE):
        """Modes reachable from `start` through transitions of positive probability"""
        positive = nx.subgraph_view(self, filter_edge=lambda u, v, k: self.edges[u, v, k]['probability'] > 0)
        return {start} | nx.descendants(positive, start)
