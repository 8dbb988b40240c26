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
from dataclasses import dataclass

import networkx as nx
import numpy as np

from harq_ec.mode_graph.iterate import transition_iterator
from harq_ec.mode_graph.mode_graph import INITIAL_MODE

STOCHASTIC_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class CompanionMatrix:
    """
    The L x L block companion matrix of a mode graph at QoS exponent `theta`. Entry (s, s~), 0-based here, is the
    weight Σ_v P_v e^(-θvR) of moving from mode s~ + 1 to mode s + 1, so columns are indexed by the mode left.
    """
    values: np.ndarray
    theta: float
    rate: float

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @property
    def mode_count(self):
        return self.values.shape[0]

    def column_sums(self):
        return np.array([math.fsum(column) for column in self.values.T])

    def is_column_stochastic(self, tolerance=STOCHASTIC_TOLERANCE):
        return bool(np.all(np.abs(self.column_sums() - 1.0) <= tolerance))

    def reachable_block(self, start=INITIAL_MODE):
        """
        Restrict the matrix to the modes reachable from `start` through nonzero entries
        Returns:
            The sorted 1-based modes kept, and the corresponding square block
        """
        reachability = nx.from_numpy_array((self.values.T > 0).astype(int), create_using=nx.DiGraph)
        kept = sorted({start - 1} | nx.descendants(reachability, start - 1))
        return [index + 1 for index in kept], self.values[np.ix_(kept, kept)]

    def to_csv(self, path_or_buffer):
        """Row-major dump with a `L=<n>` header line"""
        np.savetxt(path_or_buffer, self.values, fmt='%.15g', delimiter=',', header=f'L={self.mode_count}',
                   comments='')


def alpha_matrix(graph, qos):
    """
    Weigh each transition of `graph` by e^(-θvR) and accumulate it into the companion matrix
    Args:
        graph: A ModeGraph with modes 1..L
        qos: QosParams; θ = 0 gives the transition matrix of the mode chain

    Returns:
        CompanionMatrix
    """
    weights = (1.0, qos.delivery_weight)
    values = np.zeros((graph.mode_count, graph.mode_count))
    for from_mode, to_mode, probability, packets in transition_iterator(graph):
        values[to_mode - 1, from_mode - 1] += probability * weights[packets]
    return CompanionMatrix(values, qos.theta, qos.rate)
