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


import configparser
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from harq_ec.effective_capacity.qos import QosParams
from harq_ec.effective_capacity.sweep import SweepAxis
from harq_ec.errors import ConfigError, HarqEcError
from harq_ec.mode_graph.config import Strategy, StrategyConfig
from harq_ec.monte_carlo.plan import SimPlan
from harq_ec.outage.link import LinkParams, Links, RateThreshold
from harq_ec.outage.scheme import Combining, OutageScheme

LINK_NAMES = ('sd', 'sr', 'rd')
SECTIONS = ('strategy', 'links', 'qos', 'sweep', 'outage', 'sim', 'output')
GRID_LIMIT = 100_000
RANGE_PATTERN = re.compile(r'^\s*([^:]+):([^:]+):([^:]+)\s*$')


@dataclass(frozen=True)
class ScenarioConfig:
    """
    Everything one CLI run needs: the cooperative scheme, the QoS parameters, an optional sweep, the outage scheme
    and attempt counts for the `outage` command, simulation sizes and the output path
    """
    strategy: StrategyConfig
    qos: QosParams
    sweep_axis: Optional[SweepAxis] = None
    grid: Tuple[float, ...] = ()
    outage_scheme: OutageScheme = OutageScheme.RR_SOURCE
    counts: Tuple[Tuple[int, int], ...] = ((1, 0),)
    plan: SimPlan = field(default_factory=SimPlan)
    output: Optional[Path] = None


def load_scenario(path):
    """Read a scenario INI file; any problem is reported as a ConfigError naming its section, field and line"""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ConfigError(f'Cannot read scenario file {path}: {e.strerror}')
    return parse_scenario(text)


def parse_scenario(text):
    reader = _SectionReader(text)
    parser = reader.parser
    unknown = [section for section in parser.sections() if section not in SECTIONS]
    if unknown:
        raise ConfigError(f'Unknown section, expected one of {", ".join(SECTIONS)}', unknown[0],
                          line=reader.line_of(unknown[0]))

    rate = reader.get_float('qos', 'rate')
    links = _read_links(reader)
    strategy = reader.get_choice('strategy', 'strategy', Strategy, Strategy.II)
    rt = reader.build('qos', 'rate', RateThreshold, rate)
    cfg = reader.build('strategy', 'strategy', StrategyConfig, strategy, links, rt,
                       reader.get_choice('strategy', 'combining', Combining, Combining.RR),
                       reader.get_int('strategy', 'source_budget', 1), reader.get_int('strategy', 'relay_budget', 1))
    qos = reader.build('qos', 'theta', QosParams, reader.get_float('qos', 'theta', 1.0), rate)

    axis = reader.get_choice('sweep', 'axis', SweepAxis, None)
    grid = reader.get_grid('sweep', 'grid')
    if axis is not None and not grid:
        raise ConfigError('A sweep needs a nonempty grid', 'sweep', 'grid', reader.line_of('sweep', 'grid'))
    if grid and axis is None:
        raise ConfigError('A sweep grid needs an axis', 'sweep', 'axis', reader.line_of('sweep'))

    scheme = reader.get_choice('outage', 'scheme', OutageScheme, OutageScheme.RR_SOURCE)
    counts = reader.get_counts('outage', 'counts', scheme)
    if scheme is OutageScheme.ARQ and any(count != 1 for count, _ in counts):
        raise ConfigError('ARQ decodes every attempt alone, counts must be 1', 'outage', 'counts',
                          reader.line_of('outage', 'counts'))

    defaults = SimPlan()
    plan = reader.build('sim', None, SimPlan, reader.get_int('sim', 'seed', defaults.seed),
                        reader.get_int('sim', 'samples', defaults.samples),
                        reader.get_int('sim', 'blocks', defaults.blocks),
                        reader.get_int('sim', 'block_length', defaults.block_length))
    output = reader.get('output', 'path')
    return ScenarioConfig(cfg, qos, axis, grid, scheme, counts, plan, Path(output) if output else None)


def parse_grid(value):
    """`start:stop:step` with stop included, or a comma-separated list"""
    match = RANGE_PATTERN.match(value)
    if match:
        start, stop, step = (float(v) for v in match.groups())
        if not step > 0 or stop < start:
            raise ValueError(f'range {value} needs a positive step and stop >= start')
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        if count > GRID_LIMIT:
            raise ValueError(f'range {value} has more than {GRID_LIMIT} points')
        grid = tuple(float(v) for v in start + step * np.arange(count))
    else:
        grid = tuple(float(v) for v in value.split(',') if v.strip())
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError(f'grid {value} is not strictly increasing')
    return grid


def parse_counts(value, combined):
    """Attempt counts `1,2,3`, or `l:k2` pairs for combined schemes"""
    counts = []
    for item in value.split(','):
        item = item.strip()
        if not item:
            continue
        if combined:
            source, _, relay = item.partition(':')
            if not relay:
                raise ValueError(f'combined schemes take l:k2 pairs, got {item}')
            counts.append((int(source), int(relay)))
        else:
            if ':' in item:
                raise ValueError(f'single-link schemes take plain counts, got {item}')
            counts.append((int(item), 0))
    if any(count < 1 for count, _ in counts) or any(relay < 1 for _, relay in counts if combined):
        raise ValueError('attempt counts must be positive')
    if not counts:
        raise ValueError('no attempt counts given')
    return tuple(counts)


def _read_links(reader):
    symmetric = reader.get_bool('links', 'symmetric', True)
    prefixed = [key for key in reader.keys('links') if key.split('_', 1)[0] in LINK_NAMES]
    if symmetric:
        if prefixed:
            raise ConfigError('Per-link entries are not allowed with symmetric = yes', 'links', prefixed[0],
                              reader.line_of('links', prefixed[0]))
        link = reader.build('links', 'snr_db', LinkParams.from_db, reader.get_float('links', 'snr_db'),
                            reader.get_float('links', 'fading_variance', 1.0))
        return Links.symmetric(link)
    shared = [key for key in ('snr_db', 'fading_variance') if key in reader.keys('links')]
    if shared:
        raise ConfigError('Use sd_/sr_/rd_ prefixed entries with symmetric = no', 'links', shared[0],
                          reader.line_of('links', shared[0]))
    links = [reader.build('links', f'{name}_snr_db', LinkParams.from_db, reader.get_float('links', f'{name}_snr_db'),
                          reader.get_float('links', f'{name}_fading_variance', 1.0)) for name in LINK_NAMES]
    return Links(*links)


class _SectionReader:
    """Typed access to a parsed INI document that reports failures with their line numbers"""

    def __init__(self, text):
        self.lines = text.splitlines()
        self.parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=('#', ';'))
        try:
            self.parser.read_string(text)
        except configparser.DuplicateOptionError as e:
            raise ConfigError('Duplicate entry', e.section, e.option, e.lineno)
        except configparser.DuplicateSectionError as e:
            raise ConfigError('Duplicate section', e.section, line=e.lineno)
        except configparser.Error as e:
            line = getattr(e, 'lineno', None)
            where = f' (line {line})' if line is not None else ''
            raise ConfigError(f'Malformed scenario file{where}: {e.message}', line=line)

    def keys(self, section):
        return list(self.parser[section].keys()) if self.parser.has_section(section) else []

    def line_of(self, section, field=None):
        current = None
        for number, line in enumerate(self.lines, start=1):
            stripped = line.strip()
            if stripped.startswith('[') and stripped.endswith(']'):
                current = stripped[1:-1].strip()
                if field is None and current == section:
                    return number
            elif current == section and field is not None:
                key = re.split(r'[=:]', stripped, maxsplit=1)[0].strip().lower()
                if key == field:
                    return number
        return None

    def get(self, section, field, default=None):
        if not self.parser.has_option(section, field):
            return default
        return self.parser.get(section, field).strip()

    def _convert(self, section, field, default, convert, expected):
        value = self.get(section, field)
        if value is None:
            if default is _REQUIRED:
                raise ConfigError('Missing required entry', section, field, self.line_of(section))
            return default
        try:
            return convert(value)
        except ValueError as e:
            raise ConfigError(f'Expected {expected}, got {value!r} ({e})', section, field,
                              self.line_of(section, field))

    def get_float(self, section, field, default=None):
        return self._convert(section, field, _REQUIRED if default is None else default, float, 'a number')

    def get_int(self, section, field, default):
        return self._convert(section, field, default, int, 'an integer')

    def get_bool(self, section, field, default):
        def convert(value):
            if value.lower() not in self.parser.BOOLEAN_STATES:
                raise ValueError('not a boolean')
            return self.parser.BOOLEAN_STATES[value.lower()]
        return self._convert(section, field, default, convert, 'yes or no')

    def get_choice(self, section, field, enum, default):
        choices = ', '.join(member.value for member in enum)
        return self._convert(section, field, default, enum, f'one of {choices}')

    def get_grid(self, section, field):
        return self._convert(section, field, (), parse_grid, 'a start:stop:step range or a comma-separated list')

    def get_counts(self, section, field, scheme):
        default = ((1, 1),) if scheme.combined else ((1, 0),)
        return self._convert(section, field, default, lambda value: parse_counts(value, scheme.combined),
                             'comma-separated counts, l:k2 pairs for combined schemes')

    def build(self, section, field, constructor, *args):
        """Call `constructor`, turning the domain errors it raises into ConfigErrors located at `field`"""
        try:
            return constructor(*args)
        except HarqEcError as e:
            line = self.line_of(section, field) if field else self.line_of(section)
            raise ConfigError(str(e), section, field, line)


_REQUIRED = object()
