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


from setuptools import setup

with open('install_requires.txt') as f:
    install_requires = [line.strip() for line in f if line.strip() and not line.startswith('#')]

setup(
    name='harq_ec',
    version='0.1.0',
    packages=['harq_ec', 'harq_ec.specfun', 'harq_ec.distributions', 'harq_ec.outage', 'harq_ec.mode_graph',
              'harq_ec.effective_capacity', 'harq_ec.monte_carlo', 'harq_ec.cli'],
    install_requires=install_requires,
    entry_points={'console_scripts': ['harq-ec = harq_ec.cli.main:main']},
    python_requires='>=3.9',
    url='',
    license='Apache-2.0',
    description='Outage probability and effective capacity of ARQ and HARQ cooperative relaying'
)
