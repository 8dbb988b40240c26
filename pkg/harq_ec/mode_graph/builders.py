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


import logging

import networkx as nx

from harq_ec.errors import DomainError
from harq_ec.mode_graph.config import Strategy
from harq_ec.mode_graph.mode_graph import INITIAL_MODE, ModeGraph
from harq_ec.outage.table import build_outage_table, source_outage, strategy1_outages
from harq_ec.specfun.mellin_barnes import DEFAULT_CONTOUR

logger = logging.getLogger(__name__)

SOURCE_MODE = 1
RELAY_MODE = 2


def build_strategy1(cfg, outages=None):
    """
    Build the two-mode chain of lossless ARQ cooperation. In mode 1 the source transmits; once only the relay has
    decoded, the relay keeps transmitting in mode 2 until the destination decodes.
    Args:
        cfg: A StrategyConfig with strategy I
        outages: Strategy1Outages to use in place of the ARQ outages of `cfg.links`

    Returns:
        A frozen ModeGraph
    """
    if cfg.strategy is not Strategy.I:
        raise DomainError(f'build_strategy1 needs a strategy I config, got strategy {cfg.strategy.value}')
    if outages is None:
        outages = strategy1_outages(cfg.links, cfg.rt)

    q_sd, q_sr, q_rd = outages.sd, outages.sr, outages.rd
    graph = ModeGraph()
    graph.add_source_mode(SOURCE_MODE, attempt=1).add_relay_mode(RELAY_MODE, source_attempt=1, relay_attempt=1)
    graph.add_transition(SOURCE_MODE, SOURCE_MODE, q_sd * q_sr, packets=0)
    graph.add_transition(SOURCE_MODE, SOURCE_MODE, 1.0 - q_sd, packets=1)
    graph.add_transition(SOURCE_MODE, RELAY_MODE, q_sd * (1.0 - q_sr), packets=0)
    graph.add_transition(RELAY_MODE, SOURCE_MODE, 1.0 - q_rd, packets=1)
    graph.add_transition(RELAY_MODE, RELAY_MODE, q_rd, packets=0)
    return _finish(graph, 'strategy I')


def build_strategy2(cfg, table=None):
    """
    Build the M(N + 1)-mode chain of truncated HARQ cooperation. Source mode s'_l is the l-th source attempt and is
    followed by the relay modes s'_l + 1 .. s'_l + N, in which a relay that decoded after l source attempts
    retransmits. A packet is dropped, and the chain returns to mode 1, after M source or N relay attempts.
    Args:
        cfg: A StrategyConfig with strategy II
        table: An OutageTable to use in place of the one computed for `cfg`; must match its M and N

    Returns:
        A frozen ModeGraph
    """
    if cfg.strategy is not Strategy.II:
        raise DomainError(f'build_strategy2 needs a strategy II config, got strategy {cfg.strategy.value}')
    source_budget, relay_budget = cfg.source_budget, cfg.relay_budget
    if table is None:
        table = build_outage_table(cfg.combining, cfg.links, cfg.rt, source_budget, relay_budget, cfg.contour)
    elif (table.source_budget, table.relay_budget) != (source_budget, relay_budget):
        raise DomainError(f'Outage table is for M={table.source_budget}, N={table.relay_budget} but the config has '
                          f'M={source_budget}, N={relay_budget}')

    graph = ModeGraph()
    for l in range(1, source_budget + 1):
        source_mode = cfg.source_mode(l)
        graph.add_source_mode(source_mode, attempt=l)
        for i in range(1, relay_budget + 1):
            graph.add_relay_mode(source_mode + i, source_attempt=l, relay_attempt=i)

    for l in range(1, source_budget + 1):
        source_mode = cfg.source_mode(l)
        q_sd, q_sr = table.q_sd(l), table.q_sr(l)
        next_source_mode = cfg.source_mode(l + 1) if l < source_budget else INITIAL_MODE
        graph.add_transition(source_mode, next_source_mode, q_sd * q_sr, packets=0)
        graph.add_transition(source_mode, INITIAL_MODE, 1.0 - q_sd, packets=1)
        graph.add_transition(source_mode, source_mode + 1, q_sd * (1.0 - q_sr), packets=0)

        for i in range(1, relay_budget + 1):
            relay_mode = source_mode + i
            q_srd = table.q_srd(l, i)
            next_relay_mode = relay_mode + 1 if i < relay_budget else INITIAL_MODE
            graph.add_transition(relay_mode, next_relay_mode, q_srd, packets=0)
            graph.add_transition(relay_mode, INITIAL_MODE, 1.0 - q_srd, packets=1)

    return _finish(graph, f'strategy II {cfg.combining.value} (M={source_budget}, N={relay_budget})')


def build_point_to_point(link, rt, source_budget, combining, contour=DEFAULT_CONTOUR):
    """
    Truncated HARQ over a single link without relaying, mode l being the l-th attempt. With `source_budget` = 1 this
    is plain ARQ.
    """
    if int(source_budget) != source_budget or source_budget < 1:
        raise DomainError(f'Attempt budget must be a positive integer, got {source_budget}')
    graph = ModeGraph()
    for l in range(1, source_budget + 1):
        graph.add_source_mode(l, attempt=l)
    for l in range(1, source_budget + 1):
        q = source_outage(combining, link, l, rt, contour)
        next_mode = l + 1 if l < source_budget else INITIAL_MODE
        graph.add_transition(l, next_mode, q, packets=0)
        graph.add_transition(l, INITIAL_MODE, 1.0 - q, packets=1)
    return _finish(graph, f'point-to-point {combining.value} (M={source_budget})')


def build_mode_graph(cfg):
    if cfg.strategy is Strategy.I:
        return build_strategy1(cfg)
    return build_strategy2(cfg)


def _finish(graph, description):
    graph.validate_normalization()
    logger.debug('Built %s mode graph with %d modes and %d transitions', description, graph.mode_count,
                 graph.number_of_edges())
    return nx.freeze(graph)
