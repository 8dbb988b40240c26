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

"""
Companion matrices of the small cooperative schemes written out entry by entry, as functions of the outage
probabilities and the delivery weight e^(-θR). They serve as an independent reference for the mode graph builders.
"""

import numpy as np

from harq_ec.errors import DomainError


def strategy1_reference(outages, weight):
    q_sd, q_sr, q_rd = outages.sd, outages.sr, outages.rd
    return np.array([
        [q_sd * q_sr + (1 - q_sd) * weight, (1 - q_rd) * weight],
        [(1 - q_sr) * q_sd, q_rd],
    ])


def strategy2_reference(table, weight):
    """Reference matrix for (M, N) in {(1, 1), (1, 2), (2, 1), (2, 2)}"""
    budgets = (table.source_budget, table.relay_budget)
    if budgets not in _STRATEGY2_REFERENCES:
        raise DomainError(f'No reference matrix for M={budgets[0]}, N={budgets[1]}')
    return _STRATEGY2_REFERENCES[budgets](table, weight)


def _delivered_or_dropped(q, weight):
    return q + (1 - q) * weight


def _one_one(t, e):
    return np.array([
        [t.q_sd(1) * t.q_sr(1) + (1 - t.q_sd(1)) * e, _delivered_or_dropped(t.q_srd(1, 1), e)],
        [t.q_sd(1) * (1 - t.q_sr(1)), 0.0],
    ])


def _one_two(t, e):
    return np.array([
        [t.q_sd(1) * t.q_sr(1) + (1 - t.q_sd(1)) * e, (1 - t.q_srd(1, 1)) * e, _delivered_or_dropped(t.q_srd(1, 2), e)],
        [t.q_sd(1) * (1 - t.q_sr(1)), 0.0, 0.0],
        [0.0, t.q_srd(1, 1), 0.0],
    ])


def _two_one(t, e):
    return np.array([
        [(1 - t.q_sd(1)) * e, _delivered_or_dropped(t.q_srd(1, 1), e), t.q_sd(2) * t.q_sr(2) + (1 - t.q_sd(2)) * e,
         _delivered_or_dropped(t.q_srd(2, 1), e)],
        [t.q_sd(1) * (1 - t.q_sr(1)), 0.0, 0.0, 0.0],
        [t.q_sd(1) * t.q_sr(1), 0.0, 0.0, 0.0],
        [0.0, 0.0, t.q_sd(2) * (1 - t.q_sr(2)), 0.0],
    ])


def _two_two(t, e):
    return np.array([
        [(1 - t.q_sd(1)) * e, (1 - t.q_srd(1, 1)) * e, _delivered_or_dropped(t.q_srd(1, 2), e),
         t.q_sd(2) * t.q_sr(2) + (1 - t.q_sd(2)) * e, (1 - t.q_srd(2, 1)) * e, _delivered_or_dropped(t.q_srd(2, 2), e)],
        [t.q_sd(1) * (1 - t.q_sr(1)), 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, t.q_srd(1, 1), 0.0, 0.0, 0.0, 0.0],
        [t.q_sd(1) * t.q_sr(1), 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, t.q_sd(2) * (1 - t.q_sr(2)), 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, t.q_srd(2, 1), 0.0],
    ])


_STRATEGY2_REFERENCES = {(1, 1): _one_one, (1, 2): _one_two, (2, 1): _two_one, (2, 2): _two_two}
