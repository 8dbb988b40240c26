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
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Tuple

import numpy as np
import pandas as pd

from harq_ec.errors import DomainError

FLOAT_FORMAT = '%.15g'
PARAMS_PREFIX = '# params:'


@dataclass(frozen=True, eq=False)
class CurveTable:
    """
    A sampled curve y(x), such as effective capacity against SNR, with the parameters it was computed at. Additional
    columns sharing the x grid go in `extra_columns`.
    """
    x_name: str
    x_values: Tuple[float, ...]
    y_values: Tuple[float, ...]
    metadata: Dict[str, str] = field(default_factory=dict)
    y_name: str = 'y'
    extra_columns: Dict[str, Tuple[float, ...]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, 'x_values', tuple(float(x) for x in self.x_values))
        object.__setattr__(self, 'y_values', tuple(float(y) for y in self.y_values))
        object.__setattr__(self, 'extra_columns',
                           {name: tuple(float(v) for v in column) for name, column in self.extra_columns.items()})
        object.__setattr__(self, 'metadata', {str(k): str(v) for k, v in self.metadata.items()})
        if len(self.x_values) != len(self.y_values):
            raise DomainError(f'Curve has {len(self.x_values)} x values but {len(self.y_values)} y values')
        for name, column in self.extra_columns.items():
            if len(column) != len(self.x_values):
                raise DomainError(f'Column {name} has {len(column)} values for {len(self.x_values)} grid points')
        if np.any(np.diff(self.x_values) <= 0):
            raise DomainError(f'Curve x values must be strictly increasing, got {self.x_values}')
        for key, value in self.metadata.items():
            if any(c.isspace() for c in key + value) or '=' in key:
                raise DomainError(f'Metadata entries must be space-free key=value pairs, got {key}={value}')

    def __len__(self):
        return len(self.x_values)

    def to_frame(self):
        columns = {self.x_name: self.x_values, self.y_name: self.y_values}
        columns.update(self.extra_columns)
        return pd.DataFrame(columns)

    def to_csv(self, path_or_buffer=None):
        """
        Write a `# params: k=v ...` comment line followed by the columns, 15 significant digits, LF line endings
        Returns:
            The CSV text when `path_or_buffer` is None
        """
        params = ' '.join(f'{key}={value}' for key, value in self.metadata.items())
        text = f'{PARAMS_PREFIX} {params}\n' + self.to_frame().to_csv(float_format=FLOAT_FORMAT, index=False,
                                                                      lineterminator='\n')
        if path_or_buffer is None:
            return text
        if hasattr(path_or_buffer, 'write'):
            path_or_buffer.write(text)
        else:
            with open(path_or_buffer, 'w', newline='') as f:
                f.write(text)

    @classmethod
    def from_csv(cls, path_or_buffer):
        if hasattr(path_or_buffer, 'read'):
            text = path_or_buffer.read()
        else:
            text = Path(path_or_buffer).read_text()
        metadata = {}
        for line in text.splitlines():
            if line.startswith(PARAMS_PREFIX):
                for pair in line[len(PARAMS_PREFIX):].split():
                    key, _, value = pair.partition('=')
                    metadata[key] = value
        frame = pd.read_csv(io.StringIO(text), comment='#')
        if frame.shape[1] < 2:
            raise DomainError(f'A curve table needs at least x and y columns, got {list(frame.columns)}')
        x_name, y_name, *extra = frame.columns
        return cls(x_name, frame[x_name].to_numpy(), frame[y_name].to_numpy(), metadata, y_name,
                   {name: frame[name].to_numpy() for name in extra})

    def equals(self, other, rtol=1e-14):
        """Same names, metadata and columns, values equal to relative tolerance `rtol`"""
        if (self.x_name, self.y_name, self.metadata) != (other.x_name, other.y_name, other.metadata):
            return False
        if len(self) != len(other) or self.extra_columns.keys() != other.extra_columns.keys():
            return False
        pairs = [(self.x_values, other.x_values), (self.y_values, other.y_values)]
        pairs += [(column, other.extra_columns[name]) for name, column in self.extra_columns.items()]
        return all(np.allclose(a, b, rtol=rtol, atol=0.0, equal_nan=True) for a, b in pairs)


def snr_gap_db(reference, improved, level):
    """
    Horizontal gap in dB between two nondecreasing curves of capacity against SNR at capacity `level`, positive when
    `improved` reaches the level at a lower SNR
    """
    return _first_crossing(reference, level) - _first_crossing(improved, level)


def _first_crossing(curve, level):
    x = np.asarray(curve.x_values)
    y = np.asarray(curve.y_values)
    above = np.flatnonzero(y >= level)
    if above.size == 0:
        raise DomainError(f'Curve never reaches {level} on [{x[0] if x.size else "-"}, {x[-1] if x.size else "-"}]')
    i = above[0]
    if y[i] == level:
        return float(x[i])
    if i == 0:
        raise DomainError(f'Curve already exceeds {level} at the first grid point {x[0]}')
    return float(np.interp(level, y[i - 1:i + 1], x[i - 1:i + 1]))
