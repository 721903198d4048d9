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

"""Built-in shapes with exact intrinsic-distance oracles.

All shapes are curves: intrinsically circles, wedges of circles or
intervals. This is what makes their intrinsic metric, curvature bound and
convexity radius available in closed form.
"""

import dataclasses
import math
from typing import Any, ClassVar, Mapping

import numpy as np
from ripsrecon._src.core import geometry


def _as_float(x) -> np.ndarray:
  return np.asarray(x, dtype=np.float64)


def _circular_distance(s, t, length: float) -> np.ndarray:
  diff = np.abs(_as_float(s) - _as_float(t))
  diff = np.mod(diff, length)
  return np.minimum(diff, length - diff)


def _check_positive(name: str, value: float):
  if not value > 0:
    raise ValueError(f"Shape parameter {name} must be positive, got {value}.")


class _ShapeBase:
  """Derived metadata shared by the built-in shapes."""

  id: ClassVar[str]
  is_closed: ClassVar[bool] = True

  @property
  def delta_cap(self) -> float:
    return geometry.delta_parameter(self.rho, self.kappa)

  def params(self) -> dict[str, Any]:
    return dataclasses.asdict(self)

  def to_config(self) -> dict[str, Any]:
    return {"id": self.id, "params": self.params()}


@dataclasses.dataclass(frozen=True)
class Circle(_ShapeBase):
  """A circle of radius r in the plane, centered at the origin."""

  r: float = 1.0
  id: ClassVar[str] = "circle"
  dim_ambient: ClassVar[int] = 2
  expected_betti: ClassVar[tuple[int, ...]] = (1, 1)

  def __post_init__(self):
    _check_positive("r", self.r)

  @property
  def total_length(self) -> float:
    return 2 * math.pi * self.r

  @property
  def kappa(self) -> float:
    return 1.0 / self.r**2

  @property
  def rho(self) -> float:
    return self.total_length / 4

  def sample_at(self, t: np.ndarray) -> np.ndarray:
    angle = np.asarray(t, dtype=np.float64) / self.r
    return self.r * np.stack([np.cos(angle), np.sin(angle)], axis=-1)

  def intrinsic_distance(self, s, t) -> np.ndarray:
    return _circular_distance(s, t, self.total_length)


@dataclasses.dataclass(frozen=True)
class Segment(_ShapeBase):
  """The straight segment from (0, 0) to (length, 0)."""

  length: float = 1.0
  id: ClassVar[str] = "segment"
  dim_ambient: ClassVar[int] = 2
  is_closed: ClassVar[bool] = False
  expected_betti: ClassVar[tuple[int, ...]] = (1, 0)
  kappa: ClassVar[float] = 0.0

  def __post_init__(self):
    _check_positive("length", self.length)

  @property
  def total_length(self) -> float:
    return float(self.length)

  @property
  def rho(self) -> float:
    return float(self.length)

  def sample_at(self, t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=np.float64)
    return np.stack([t, np.zeros_like(t)], axis=-1)

  def intrinsic_distance(self, s, t) -> np.ndarray:
    return np.abs(_as_float(s) - _as_float(t))


@dataclasses.dataclass(frozen=True)
class WedgeW(_ShapeBase):
  """The graph of y = |x| for |x| <= 1.

  The Euclidean diameter is 2 while the intrinsic diameter is 2 sqrt(2). The
  shape is a tree, so every intrinsic ball is convex and rho is capped at the
  total length.
  """

  id: ClassVar[str] = "wedge_w"
  dim_ambient: ClassVar[int] = 2
  is_closed: ClassVar[bool] = False
  expected_betti: ClassVar[tuple[int, ...]] = (1, 0)
  kappa: ClassVar[float] = 0.0

  @property
  def total_length(self) -> float:
    return 2 * math.sqrt(2)

  @property
  def rho(self) -> float:
    return self.total_length

  def sample_at(self, t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=np.float64)
    arm = math.sqrt(2)
    x = np.where(t < arm, -1 + t / arm, (t - arm) / arm)
    return np.stack([x, np.abs(x)], axis=-1)

  def intrinsic_distance(self, s, t) -> np.ndarray:
    return np.abs(_as_float(s) - _as_float(t))


@dataclasses.dataclass(frozen=True)
class FigureEight(_ShapeBase):
  """Two circles of radius r meeting at the origin.

  The first loop lies in the xy-plane around (r, 0, 0), the second in the
  xz-plane around (-r, 0, 0). Parameters in [0, 2 pi r) trace the first loop
  and parameters in [2 pi r, 4 pi r) the second, both starting at the wedge
  point.
  """

  r: float = 1.0
  id: ClassVar[str] = "figure_eight"
  dim_ambient: ClassVar[int] = 3
  expected_betti: ClassVar[tuple[int, ...]] = (1, 2)

  def __post_init__(self):
    _check_positive("r", self.r)

  @property
  def loop_length(self) -> float:
    return 2 * math.pi * self.r

  @property
  def total_length(self) -> float:
    return 2 * self.loop_length

  @property
  def kappa(self) -> float:
    return 1.0 / self.r**2

  @property
  def rho(self) -> float:
    return self.loop_length / 4

  def _split(self, t) -> tuple[np.ndarray, np.ndarray]:
    t = np.asarray(t, dtype=np.float64)
    second = t >= self.loop_length
    return second, np.where(second, t - self.loop_length, t)

  def sample_at(self, t: np.ndarray) -> np.ndarray:
    second, u = self._split(t)
    angle = u / self.r
    cos, sin = self.r * np.cos(angle), self.r * np.sin(angle)
    x = np.where(second, cos - self.r, self.r - cos)
    y = np.where(second, 0.0, sin)
    z = np.where(second, sin, 0.0)
    return np.stack([x, y, z], axis=-1)

  def intrinsic_distance(self, s, t) -> np.ndarray:
    loop_s, u = self._split(s)
    loop_t, v = self._split(t)
    same_loop = _circular_distance(u, v, self.loop_length)
    via_wedge = _circular_distance(
        u, 0.0, self.loop_length
    ) + _circular_distance(v, 0.0, self.loop_length)
    return np.where(loop_s == loop_t, same_loop, via_wedge)


@dataclasses.dataclass(frozen=True)
class NinjaStar(_ShapeBase):
  """Four quarter circles of radius r forming a closed curve with four cusps.

  Arc 0 is centered at (r, r) and runs from the cusp (r, 0) to the cusp
  (0, r); arc k is arc 0 rotated by k pi / 2. Intrinsically this is a circle
  of length 2 pi r, while the cusps make the global distortion of the
  embedding unbounded and its mu-reach zero.
  """

  r: float = 1.0
  id: ClassVar[str] = "ninja_star"
  dim_ambient: ClassVar[int] = 2
  expected_betti: ClassVar[tuple[int, ...]] = (1, 1)

  def __post_init__(self):
    _check_positive("r", self.r)

  @property
  def total_length(self) -> float:
    return 2 * math.pi * self.r

  @property
  def kappa(self) -> float:
    return 1.0 / self.r**2

  @property
  def rho(self) -> float:
    return self.total_length / 4

  def sample_at(self, t: np.ndarray) -> np.ndarray:
    t = np.mod(np.asarray(t, dtype=np.float64), self.total_length)
    quarter = self.total_length / 4
    arc = np.minimum(np.floor(t / quarter), 3).astype(np.int64)
    u = t - arc * quarter
    theta = -math.pi / 2 - u / self.r
    x = self.r + self.r * np.cos(theta)
    y = self.r + self.r * np.sin(theta)
    rotation = arc * (math.pi / 2)
    cos, sin = np.cos(rotation), np.sin(rotation)
    return np.stack([cos * x - sin * y, sin * x + cos * y], axis=-1)

  def intrinsic_distance(self, s, t) -> np.ndarray:
    return _circular_distance(s, t, self.total_length)


SHAPES: Mapping[str, type[_ShapeBase]] = {
    cls.id: cls for cls in (Circle, Segment, WedgeW, FigureEight, NinjaStar)
}


def get_shape(shape_id: str, **params) -> geometry.ShapeDescriptor:
  """Returns the built-in shape `shape_id` constructed with `params`."""
  key = shape_id.lower()
  if key not in SHAPES:
    raise ValueError(
        f"Unknown shape {shape_id!r}, expected one of {sorted(SHAPES)}."
    )
  try:
    return SHAPES[key](**params)
  except TypeError as e:
    raise ValueError(
        f"Invalid parameters {params} for shape {shape_id!r}: {e}"
    ) from e


def shape_from_config(config: Mapping[str, Any]) -> geometry.ShapeDescriptor:
  """Builds a shape from `{"id": ..., "params": {...}}`."""
  return get_shape(config["id"], **dict(config.get("params", {})))
