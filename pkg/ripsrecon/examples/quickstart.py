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

"""Example script that reconstructs the homology of a noisy circle."""

from absl import app
import ripsrecon.core as ripsrecon

N_SAMPLE = 500
NOISE = 0.003
EPSILON = 0.2
BETA = 0.6


def main(_) -> None:
  shape = ripsrecon.get_shape("circle", r=1.0)
  cloud, _ = ripsrecon.sample_shape(shape, N_SAMPLE)
  cloud = ripsrecon.perturb(cloud, NOISE, seed=0)
  print(f"Sampled {cloud.n} points of {shape.id}, noise {NOISE}.\n")

  metric = ripsrecon.path_metric(cloud, EPSILON)
  print(f"Path metric diameter at epsilon={EPSILON}: {metric.diameter:.4f}")

  skeleton = ripsrecon.rips_complex(metric, BETA, max_dim=1)
  reduced = ripsrecon.collapse_edges(skeleton, metric)
  complex_ = ripsrecon.flag_complex(cloud.n, reduced.edges, max_dim=2)
  print(f"Rips edges: {len(skeleton.edges)}, after collapse: {complex_.counts}")

  profile = ripsrecon.betti_numbers(complex_, up_to=1)
  print(f"Betti numbers: {list(profile.betti)}")
  print(f"Expected: {list(shape.expected_betti)}")


if __name__ == "__main__":
  app.run(main)
