# Copyright 2026 The RipsRecon Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Microbenchmarks for RipsRecon pathmetric functions."""

import google_benchmark
import ripsrecon.core as ripsrecon

_CIRCLE = ripsrecon.get_shape("circle", r=1.0)
_CLOUD, _PARAMS = ripsrecon.sample_shape(_CIRCLE, 1000)
_NOISY = ripsrecon.perturb(_CLOUD, 0.003, seed=0)


@google_benchmark.register
def build_epsilon_graph(state):
  while state:
    ripsrecon.build_epsilon_graph(_NOISY, 0.2)


@google_benchmark.register
def path_metric(state):
  while state:
    ripsrecon.path_metric(_NOISY, 0.2)


@google_benchmark.register
def path_metric_small_epsilon(state):
  while state:
    ripsrecon.path_metric(_NOISY, 0.02)


@google_benchmark.register
def intrinsic_metric(state):
  while state:
    ripsrecon.intrinsic_metric(_CIRCLE, _PARAMS)


if __name__ == "__main__":
  google_benchmark.main()
