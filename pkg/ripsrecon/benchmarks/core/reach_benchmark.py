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

"""Microbenchmarks for RipsRecon reach functions."""

import google_benchmark
import ripsrecon.core as ripsrecon

_CLOUD, _ = ripsrecon.sample_shape(ripsrecon.get_shape("ninja_star"), 4000)


@google_benchmark.register
def critical_function_estimate(state):
  while state:
    ripsrecon.critical_function_estimate(
        _CLOUD, [0.1, 0.05, 0.02], n_probe=50, seed=0
    )


@google_benchmark.register
def minimal_enclosing_ball(state):
  cloud = ripsrecon.make_point_cloud(_CLOUD.points[::400])
  while state:
    ripsrecon.minimal_enclosing_ball(cloud)


if __name__ == "__main__":
  google_benchmark.main()
