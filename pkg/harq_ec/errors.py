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


class HarqEcError(Exception):
    """Base class of every error raised by harq_ec."""


class DomainError(HarqEcError, ValueError):
    """An argument lies outside the domain of the operation."""


class ConvergenceError(HarqEcError, RuntimeError):
    """An iterative method ran out of iterations before meeting its tolerance."""

    def __init__(self, message, best_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate


class AccuracyNotReachedError(HarqEcError, RuntimeError):
    """A quadrature could not reach the requested absolute tolerance within its node budget."""

    def __init__(self, message, achieved_error):
        super().__init__(message)
        self.achieved_error = achieved_error


class ConfigError(HarqEcError, ValueError):
    """A scenario file is malformed. Carries the location of the offending entry when known."""

    def __init__(self, message, section=None, field=None, line=None):
        location = ''
        if section is not None:
            location = f'[{section}]'
            if field is not None:
                location += f' {field}'
            if line is not None:
                location += f' (line {line})'
            location += ': '
        super().__init__(location + message)
        self.section = section
        self.field = field
        self.line = line
