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


from dataclasses import dataclass, replace

import numpy as np

from harq_ec.errors import DomainError

MAX_SEED = 2 ** 64 - 1
MIN_SAMPLES = 10_000
MIN_BLOCKS = 1_000
MIN_BLOCK_LENGTH = 100

OUTAGE_STREAM = 0
SERVICE_STREAM = 1
BOOTSTRAP_STREAM = 2


@dataclass(frozen=True)
class SimPlan:
    """
    How much to simulate and from which seed. `samples` channel realisations are drawn per outage estimate, and
    `blocks` independent blocks of `block_length` slots per service process estimate. Work is split into chunks of
    `chunk_size` samples or `block_chunk` blocks, each with its own random stream.
    """
    seed: int = 0
    samples: int = 1_000_000
    blocks: int = 10_000
    block_length: int = 2000
    chunk_size: int = 100_000
    block_chunk: int = 500
    bootstrap_resamples: int = 200
    confidence: float = 0.95

    def __post_init__(self):
        if int(self.seed) != self.seed or not 0 <= self.seed <= MAX_SEED:
            raise DomainError(f'Seed must be an integer in [0, 2^64 - 1], got {self.seed}')
        if self.samples < MIN_SAMPLES:
            raise DomainError(f'At least {MIN_SAMPLES} samples are needed, got {self.samples}')
        if self.blocks < MIN_BLOCKS:
            raise DomainError(f'At least {MIN_BLOCKS} blocks are needed, got {self.blocks}')
        if self.block_length < MIN_BLOCK_LENGTH:
            raise DomainError(f'Blocks need at least {MIN_BLOCK_LENGTH} slots, got {self.block_length}')
        if self.chunk_size < 1 or self.block_chunk < 1 or self.bootstrap_resamples < 1:
            raise DomainError('Chunk sizes and the bootstrap resample count must be positive')
        if not 0 < self.confidence < 1:
            raise DomainError(f'Confidence level must lie in (0, 1), got {self.confidence}')

    def with_seed(self, seed):
        return replace(self, seed=seed)


def chunk_rng(seed, stream, chunk):
    """The generator of one chunk of work; depends only on the seed, the kind of work and the chunk index"""
    return np.random.default_rng(np.random.SeedSequence([seed, stream, chunk]))


def chunks(total, size):
    """(index, count) of consecutive chunks of at most `size` items covering `total` items"""
    return [(index, min(size, total - start)) for index, start in enumerate(range(0, total, size))]


def derived_seed(seed, *keys):
    """A 64-bit seed for one sub-experiment, identified by integer `keys`, of a run seeded with `seed`"""
    return int(np.random.SeedSequence([seed, *keys]).generate_state(1, dtype=np.uint64)[0])
