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

"""Example experiment and sweep configs.

Each config is a JSON file next to this module and can be run with
`ripsrecon pipeline --config=...` or `ripsrecon sweep --config=...`.
"""

import os

from ripsrecon import experiments

CONFIG_DIR = os.path.dirname(os.path.abspath(__file__))

EXPERIMENTS = (
    "circle_reconstruction",
    "ninja_star_reconstruction",
    "figure_eight_reconstruction",
    "circle_closeness",
    "circle_stability",
    "circle_figure_eight_stability",
)
SWEEPS = (
    "convergence_sweep",
    "distortion_sweep",
    "mu_reach_sweep",
    "mu_reach_control_sweep",
)


def config_path(name: str) -> str:
  if name not in EXPERIMENTS + SWEEPS:
    raise ValueError(
        f"Unknown example {name!r}, expected one of {EXPERIMENTS + SWEEPS}."
    )
  return os.path.join(CONFIG_DIR, f"{name}.json")


def get_config(
    name: str,
) -> experiments.ExperimentConfig | experiments.SweepConfig:
  return experiments.load_config(config_path(name))
