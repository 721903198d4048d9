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

"""Microbenchmarks for RipsRecon complexes and homology functions."""

import google_benchmark
import ripsrecon.core as ripsrecon

_CLOUD, _ = ripsrecon.sample_shape(ripsrecon.get_shape("circle", r=1.0), 500)
_METRIC = ripsrecon.path_metric(ripsrecon.perturb(_CLOUD, 0.003), 0.2)
_SKELETON = ripsrecon.rips_complex(_METRIC, 0.6, max_dim=1)
_REDUCED = ripsrecon.flag_complex(
    _CLOUD.n, ripsrecon.collapse_edges(_SKELETON, _METRIC).edges, max_dim=2
)


@google_benchmark.register
def rips_complex_skeleton(state):
  while state:
    ripsrecon.rips_complex(_METRIC, 0.6, max_dim=1)


@google_benchmark.register
def rips_complex_small_beta(state):
  while state:
    ripsrecon.rips_complex(_METRIC, 0.1, max_dim=2)


@google_benchmark.register
def collapse_edges(state):
  while state:
    ripsrecon.collapse_edges(_SKELETON, _METRIC)


@google_benchmark.register
def betti_numbers_after_collapse(state):
  while state:
    ripsrecon.betti_numbers(_REDUCED, up_to=1)


if __name__ == "__main__":
  google_benchmark.main()
