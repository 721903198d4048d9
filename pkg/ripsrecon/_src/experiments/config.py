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

"""Experiment and sweep configurations.

Configs are frozen dataclasses loaded from JSON. They validate structure
(known pipeline, positive sizes, known shape) on construction. The theorem
hypotheses relating xi, beta, epsilon and noise are NOT enforced here: a
pipeline evaluates them as named checks and reports failures, so that a
config outside the hypotheses is still runnable as a falsification instance.
"""

import dataclasses
import json
import math
from typing import Any, Mapping, Sequence

from etils import epath
from ripsrecon._src.core import geometry
from ripsrecon._src.core import shapes

PIPELINES = ("reconstruction", "latschev", "closeness", "stability")
SWEEP_KINDS = ("convergence", "distortion", "mu_reach")
SWEEP_EXPECTATIONS = ("decreasing", "at_least")
DEFAULT_XI = 1 / 14


class HypothesisError(ValueError):
  """A hypothesis check failed and the config asked to abort."""

  def __init__(self, name: str, value: float, bound: float):
    super().__init__(
        f"Hypothesis {name!r} failed: value {value} exceeds bound {bound}."
    )
    self.name = name
    self.value = value
    self.bound = bound


def _check_shape(shape: Mapping[str, Any], field: str):
  if "id" not in shape:
    raise ValueError(f"{field} needs an 'id', got {dict(shape)}.")
  shapes.shape_from_config(shape)


@dataclasses.dataclass(frozen=True)
class ExperimentConfig:
  """Parameters of one pipeline run.

  Attributes:
    pipeline: one of PIPELINES.
    shape: `{"id": ..., "params": {...}}` of the space X.
    n_ref: size of the grid reference net of X.
    n_sample: size of the sample S before perturbation.
    sample_mode: "grid" or "uniform".
    xi: ratio of the hypotheses, at most 1/14 for reconstruction.
    beta: Rips scale.
    epsilon: path metric scale.
    noise: radius of the uniform perturbation of S.
    seed: experiment seed, up to 64 bits.
    max_dim: highest simplex dimension materialized.
    collapse: whether to reduce the Rips 1-skeleton by edge collapses.
    abort_on_hypothesis_failure: raise HypothesisError instead of reporting.
    other_shape: second space of a stability run.
    output_dir: where artifacts and the report are written, if set.
  """

  pipeline: str = "reconstruction"
  shape: Mapping[str, Any] = dataclasses.field(
      default_factory=lambda: {"id": "circle", "params": {}}
  )
  n_ref: int = 2000
  n_sample: int = 1000
  sample_mode: str = "grid"
  xi: float = DEFAULT_XI
  beta: float = 0.6
  epsilon: float = 0.2
  noise: float = 0.003
  seed: int = 0
  max_dim: int = 2
  collapse: bool = True
  abort_on_hypothesis_failure: bool = False
  other_shape: Mapping[str, Any] | None = None
  output_dir: str | None = None

  def __post_init__(self):
    if self.pipeline not in PIPELINES:
      raise ValueError(
          f"Unknown pipeline {self.pipeline!r}, expected one of {PIPELINES}."
      )
    if self.sample_mode not in geometry.SAMPLE_MODES:
      raise ValueError(
          f"Unknown sample mode {self.sample_mode!r}, expected one of"
          f" {geometry.SAMPLE_MODES}."
      )
    for name in ("n_ref", "n_sample"):
      if getattr(self, name) < 1:
        raise ValueError(f"{name} must be positive, got {getattr(self, name)}.")
    for name in ("xi", "beta", "epsilon"):
      if not getattr(self, name) > 0:
        raise ValueError(f"{name} must be positive, got {getattr(self, name)}.")
    if not 0 < self.xi < 1:
      raise ValueError(f"xi must be in (0, 1), got {self.xi}.")
    if self.noise < 0:
      raise ValueError(f"noise must be nonnegative, got {self.noise}.")
    if self.max_dim < 1:
      raise ValueError(f"max_dim must be at least 1, got {self.max_dim}.")
    if not 0 <= self.seed < 2**64:
      raise ValueError(f"Seed {self.seed} must be in [0, 2**64).")
    _check_shape(self.shape, "shape")
    if self.other_shape is not None:
      _check_shape(self.other_shape, "other_shape")

  def get_shape(self) -> geometry.ShapeDescriptor:
    return shapes.shape_from_config(self.shape)

  def to_json(self) -> dict[str, Any]:
    return json.loads(json.dumps(dataclasses.asdict(self)))

  @classmethod
  def from_json(cls, data: Mapping[str, Any]) -> "ExperimentConfig":
    return _from_json(cls, data)


@dataclasses.dataclass(frozen=True)
class SweepConfig:
  """Parameters of a sweep; each grid value is one independent cell.

  Attributes:
    kind: one of SWEEP_KINDS.
    shape: `{"id": ..., "params": {...}}`.
    n: grid sample size.
    eps_list: path metric scales of convergence and distortion sweeps.
    R: smallest intrinsic distance of the distortion sweep.
    depths: level-set depths of the mu_reach sweep.
    n_probe: walking probes per depth.
    seed: experiment seed; cell i draws from fold_in(sweep key, i).
    num_threads: grain read threads; 0 uses grain's default.
    output_csv: where the table is written, if set.
    expect: pass rule of the table. "decreasing" needs the value column to
      strictly decrease; "at_least" needs every value to be at least `floor`,
      as for a control shape whose critical function stays near 1.
    floor: lower bound of the "at_least" rule.
  """

  kind: str = "convergence"
  shape: Mapping[str, Any] = dataclasses.field(
      default_factory=lambda: {"id": "circle", "params": {}}
  )
  n: int = 2000
  eps_list: Sequence[float] = (0.4, 0.2, 0.1, 0.05)
  R: float = 0.1  # pylint: disable=invalid-name
  depths: Sequence[float] = (0.1, 0.05, 0.02, 0.01, 0.004)
  n_probe: int = 200
  seed: int = 0
  num_threads: int = 0
  output_csv: str | None = None
  expect: str = "decreasing"
  floor: float = 0.0

  def __post_init__(self):
    if self.kind not in SWEEP_KINDS:
      raise ValueError(
          f"Unknown sweep kind {self.kind!r}, expected one of {SWEEP_KINDS}."
      )
    if self.n < 2:
      raise ValueError(f"Sweep needs n >= 2, got {self.n}.")
    grid = self.depths if self.kind == "mu_reach" else self.eps_list
    if not grid:
      raise ValueError(f"Parameter grid of the {self.kind} sweep is empty.")
    if any(not value > 0 for value in grid):
      raise ValueError(f"Grid values must be positive, got {list(grid)}.")
    if self.expect not in SWEEP_EXPECTATIONS:
      raise ValueError(
          f"Unknown sweep expectation {self.expect!r}, expected one of"
          f" {SWEEP_EXPECTATIONS}."
      )
    if not math.isfinite(self.floor):
      raise ValueError(f"Sweep floor must be finite, got {self.floor}.")
    _check_shape(self.shape, "shape")
    # Tuples keep the config hashable and its JSON echo stable.
    object.__setattr__(self, "eps_list", tuple(float(e) for e in self.eps_list))
    object.__setattr__(self, "depths", tuple(float(d) for d in self.depths))

  @property
  def grid(self) -> tuple[float, ...]:
    return self.depths if self.kind == "mu_reach" else self.eps_list

  def get_shape(self) -> geometry.ShapeDescriptor:
    return shapes.shape_from_config(self.shape)

  def to_json(self) -> dict[str, Any]:
    return json.loads(json.dumps(dataclasses.asdict(self)))

  @classmethod
  def from_json(cls, data: Mapping[str, Any]) -> "SweepConfig":
    return _from_json(cls, data)


def _from_json(cls, data: Mapping[str, Any]):
  known = {field.name for field in dataclasses.fields(cls)}
  unknown = sorted(set(data) - known)
  if unknown:
    raise ValueError(f"Unknown {cls.__name__} fields {unknown}.")
  return cls(**data)


def load_config(path: epath.PathLike) -> ExperimentConfig | SweepConfig:
  """Loads a config file; a top-level "sweep" key selects SweepConfig."""
  data = json.loads(epath.Path(path).read_text())
  if "sweep" in data:
    return SweepConfig.from_json(data["sweep"])
  return ExperimentConfig.from_json(data)
