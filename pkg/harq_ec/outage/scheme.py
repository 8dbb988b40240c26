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


from dataclasses import dataclass
from enum import Enum
from typing import Optional

from harq_ec.errors import DomainError
from harq_ec.outage.link import LinkParams, RateThreshold
from harq_ec.outage.probability import arq_outage, ir_combined_outage, ir_source_outage, rr_combined_outage, \
    rr_source_outage
from harq_ec.specfun.mellin_barnes import DEFAULT_CONTOUR


class Combining(Enum):
    """How a receiver combines the attempts it has heard for the current packet"""
    RR = 'RR'
    IR = 'IR'


class OutageScheme(Enum):
    ARQ = 'arq'
    RR_SOURCE = 'rr_source'
    RR_COMBINED = 'rr_combined'
    IR_SOURCE = 'ir_source'
    IR_COMBINED = 'ir_combined'

    @property
    def combined(self):
        return self in (OutageScheme.RR_COMBINED, OutageScheme.IR_COMBINED)

    @property
    def combining(self):
        if self in (OutageScheme.RR_SOURCE, OutageScheme.RR_COMBINED):
            return Combining.RR
        if self in (OutageScheme.IR_SOURCE, OutageScheme.IR_COMBINED):
            return Combining.IR
        return None


@dataclass(frozen=True)
class OutageQuery:
    """
    One outage probability to evaluate. `link` is the source link (source-destination or source-relay), `count` the
    number of source attempts k1 or l, and for the combined schemes `relay_link` and `relay_count` describe the k2
    relay-destination attempts.
    """
    scheme: OutageScheme
    link: LinkParams
    rt: RateThreshold
    count: int = 1
    relay_link: Optional[LinkParams] = None
    relay_count: int = 0

    def __post_init__(self):
        if int(self.count) != self.count or self.count < 1:
            raise DomainError(f'Attempt count must be a positive integer, got {self.count}')
        if self.scheme is OutageScheme.ARQ and self.count != 1:
            raise DomainError(f'ARQ attempts are decoded independently, count must be 1, got {self.count}')
        if self.scheme.combined:
            if self.relay_link is None:
                raise DomainError(f'Scheme {self.scheme.value} needs a relay-destination link')
            if int(self.relay_count) != self.relay_count or self.relay_count < 1:
                raise DomainError(f'Relay attempt count must be a positive integer, got {self.relay_count}')

    @property
    def label(self):
        if self.scheme.combined:
            return f'{self.count}_{self.relay_count}'
        return str(self.count)


def closed_form_outage(query, contour=DEFAULT_CONTOUR):
    scheme = query.scheme
    if scheme is OutageScheme.ARQ:
        return arq_outage(query.link, query.rt)
    if scheme is OutageScheme.RR_SOURCE:
        return rr_source_outage(query.link, query.count, query.rt)
    if scheme is OutageScheme.RR_COMBINED:
        return rr_combined_outage(query.link, query.relay_link, query.count, query.relay_count, query.rt)
    if scheme is OutageScheme.IR_SOURCE:
        return ir_source_outage(query.link, query.count, query.rt, contour)
    return ir_combined_outage(query.link, query.relay_link, query.count, query.relay_count, query.rt, contour)
