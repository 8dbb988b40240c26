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
import warnings
from enum import Enum

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from harq_ec.effective_capacity.capacity import effective_capacity
from harq_ec.effective_capacity.curve import CurveTable
from harq_ec.errors import DomainError, HarqEcError
from harq_ec.mode_graph.builders import build_mode_graph
from harq_ec.mode_graph.companion import alpha_matrix
from harq_ec.outage.link import Links

logger = logging.getLogger(__name__)


class SweepAxis(Enum):
    SNR_DB = 'snr_db'
    SNR_SD_DB = 'snr_sd_db'
    SNR_SR_DB = 'snr_sr_db'
    SNR_RD_DB = 'snr_rd_db'
    RATE = 'rate'
    THETA = 'theta'


_OVERRIDDEN = {
    SweepAxis.SNR_DB: {'snr_sd_db', 'snr_sr_db', 'snr_rd_db'},
    SweepAxis.SNR_SD_DB: {'snr_sd_db'},
    SweepAxis.SNR_SR_DB: {'snr_sr_db'},
    SweepAxis.SNR_RD_DB: {'snr_rd_db'},
    SweepAxis.RATE: {'rate'},
    SweepAxis.THETA: set(),
}


def sweep_point(cfg, qos, axis, x):
    """The config and QoS parameters of one grid point, the swept parameter overriding the given value"""
    links = cfg.links
    if axis is SweepAxis.SNR_DB:
        return cfg.with_links(Links(links.sd.with_snr_db(x), links.sr.with_snr_db(x), links.rd.with_snr_db(x))), qos
    if axis is SweepAxis.SNR_SD_DB:
        return cfg.with_links(Links(links.sd.with_snr_db(x), links.sr, links.rd)), qos
    if axis is SweepAxis.SNR_SR_DB:
        return cfg.with_links(Links(links.sd, links.sr.with_snr_db(x), links.rd)), qos
    if axis is SweepAxis.SNR_RD_DB:
        return cfg.with_links(Links(links.sd, links.sr, links.rd.with_snr_db(x))), qos
    if axis is SweepAxis.RATE:
        return cfg.with_rate(x), qos.with_rate(x)
    return cfg, qos.with_theta(x)


def evaluate_point(cfg, qos, axis, x, graph=None):
    """
    Effective capacity at one grid point
    Returns:
        (x, capacity, None) on success, (x, None, message) when the point fails
    """
    try:
        point_cfg, point_qos = sweep_point(cfg, qos, axis, x)
        if graph is None:
            graph = build_mode_graph(point_cfg)
        return x, effective_capacity(alpha_matrix(graph, point_qos), point_qos), None
    except HarqEcError as e:
        return x, None, f'{type(e).__name__}: {e}'


def ec_sweep(cfg, qos, axis, grid, n_jobs=1, progress=False):
    """
    Effective capacity along a grid of one parameter. Outage tables are rebuilt for every point unless only θ
    changes, in which case the mode graph is shared. Points that fail are left out of the table with a warning and
    listed in its metadata under `failed`.
    Args:
        cfg: StrategyConfig of the fixed parameters
        qos: QosParams of the fixed parameters; its rate must match `cfg`
        axis: SweepAxis to vary
        grid: Strictly increasing values of the swept parameter, dB for SNR axes
        n_jobs: joblib worker count
        progress: Whether to show a progress bar

    Returns:
        CurveTable with x named after the axis and y named `ec`
    """
    axis = SweepAxis(axis)
    grid = [float(x) for x in grid]
    if not grid:
        raise DomainError('Sweep grid is empty')
    if np.any(np.diff(grid) <= 0):
        raise DomainError(f'Sweep grid must be strictly increasing, got {grid}')
    if cfg.rt.rate != qos.rate:
        raise DomainError(f'Config rate {cfg.rt.rate} differs from QoS rate {qos.rate}')

    graph = build_mode_graph(cfg) if axis is SweepAxis.THETA else None
    points = tqdm(grid, desc=f'EC vs {axis.value}', disable=not progress)
    results = Parallel(n_jobs=n_jobs)(delayed(evaluate_point)(cfg, qos, axis, x, graph) for x in points)

    x_values, y_values, failed = [], [], []
    for x, capacity, message in results:
        if message is None:
            x_values.append(x)
            y_values.append(capacity)
        else:
            failed.append(x)
            warnings.warn(f'Effective capacity at {axis.value}={x:g} failed and is left out of the curve: {message}',
                          RuntimeWarning)
    logger.info('Swept %s over %d points, %d failed', axis.value, len(grid), len(failed))

    metadata = {key: value for key, value in cfg.describe().items() if key not in _OVERRIDDEN[axis]}
    metadata['axis'] = axis.value
    if axis is not SweepAxis.THETA:
        metadata['theta'] = f'{qos.theta:g}'
    if failed:
        metadata['failed'] = ';'.join(f'{x:g}' for x in failed)
    return CurveTable(axis.value, x_values, y_values, metadata, y_name='ec')
