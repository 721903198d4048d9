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

"""Circumradius bounds: minimal enclosing balls and Jung-type estimates."""

import dataclasses
import itertools
import math

import numpy as np
from ripsrecon._src.core import geometry
from ripsrecon._src.core import reports
from scipy.spatial import distance


@dataclasses.dataclass(frozen=True)
class Ball:
  """A closed Euclidean ball."""

  center: np.ndarray
  radius: float

  def __post_init__(self):
    if self.radius < 0:
      raise ValueError(f"Ball radius must be nonnegative, got {self.radius}.")

  def contains(self, point: np.ndarray, tolerance: float = 0.0) -> bool:
    return bool(np.linalg.norm(point - self.center) <= self.radius + tolerance)


def _ball_through(support: list[np.ndarray]) -> tuple[np.ndarray, float]:
  """Smallest ball with every support point on its boundary."""
  origin = support[0]
  if len(support) == 1:
    return origin, 0.0
  v = np.stack(support[1:]) - origin
  rhs = 0.5 * np.sum(v * v, axis=1)
  weights = np.linalg.lstsq(v @ v.T, rhs, rcond=None)[0]
  center = origin + weights @ v
  radius = max(float(np.linalg.norm(center - p)) for p in support)
  return center, radius


def _move_to_front(points, end, support, dim, tolerance):
  """Welzl's recursion in move-to-front form; depth is at most dim + 1."""
  if support:
    center, radius = _ball_through(support)
  else:
    center, radius = None, -1.0
  if len(support) == dim + 1:
    return center, radius
  for i in range(end):
    p = points[i]
    if center is None or np.linalg.norm(p - center) > radius + tolerance:
      center, radius = _move_to_front(points, i, support + [p], dim, tolerance)
      points.insert(0, points.pop(i))
  return center, radius


def minimal_enclosing_ball(cloud: geometry.PointCloud) -> Ball:
  """Returns the smallest closed ball containing every point of `cloud`.

  Points are processed in their given order, so the result is deterministic.
  """
  points = list(cloud.points)
  scale = float(np.abs(cloud.points).max()) + 1.0
  center, radius = _move_to_front(
      points, len(points), [], cloud.dim, geometry.default_tolerance(scale)
  )
  return Ball(np.asarray(center, dtype=np.float64), max(radius, 0.0))


def jung_bound(n: int, kappa: float, rad: float) -> float:
  """Lower bound on the diameter of n + 1 points with circumradius `rad`.

  Args:
    n: the set has at most n + 1 points; n >= 1.
    kappa: curvature of the model space.
    rad: circumradius; below pi / (2 sqrt(kappa)) when kappa > 0.

  Returns:
    2 asin(f sin(sqrt(k) rad)) / sqrt(k) for k > 0, 2 f rad for k = 0 and
    2 asinh(f sinh(sqrt(-k) rad)) / sqrt(-k) for k < 0, where
    f = sqrt((n + 1) / (2 n)).
  """
  if n < 1:
    raise ValueError(f"n must be at least 1, got {n}.")
  factor = math.sqrt((n + 1) / (2 * n))
  if kappa > 0:
    root = math.sqrt(kappa)
    if rad >= math.pi / (2 * root):
      raise ValueError(
          f"Circumradius {rad} must be below pi / (2 sqrt(kappa)) ="
          f" {math.pi / (2 * root)} for kappa={kappa}."
      )
    return 2 / root * math.asin(factor * math.sin(root * rad))
  if kappa == 0:
    return 2 * factor * rad
  root = math.sqrt(-kappa)
  return 2 / root * math.asinh(factor * math.sinh(root * rad))


def _subsets(n: int):
  for i in range(n):
    yield [j for j in range(n) if j != i]
  yield from (list(pair) for pair in itertools.combinations(range(n), 2))


def check_jung_euclidean(cloud: geometry.PointCloud) -> reports.CheckReport:
  """Checks the Euclidean diameter estimates for a finite set A.

  Verifies diam(A) >= jung_bound(|A| - 1, 0, rad(A)), diam(A) >= 4/3 rad(A)
  and, for every subset B obtained by dropping one point or keeping two,
  ||c(A) - c(B)|| <= 3/4 diam(A), where c is the minimal enclosing ball
  center.
  """
  if cloud.n < 2:
    raise ValueError(f"Need at least 2 points, got {cloud.n}.")
  ball = minimal_enclosing_ball(cloud)
  pairwise = distance.squareform(distance.pdist(cloud.points))
  i, j = np.unravel_index(np.argmax(pairwise), pairwise.shape)
  diam = float(pairwise[i, j])
  jung = jung_bound(cloud.n - 1, 0.0, ball.radius)
  center_shift = 0.0
  if cloud.n > 2:
    for subset in _subsets(cloud.n):
      sub_ball = minimal_enclosing_ball(
          geometry.PointCloud(cloud.points[subset])
      )
      center_shift = max(
          center_shift, float(np.linalg.norm(sub_ball.center - ball.center))
      )
  violation = max(
      jung - diam, 4 / 3 * ball.radius - diam, center_shift - 0.75 * diam
  )
  return reports.CheckReport.upper_bound(
      "jung_euclidean",
      value=violation,
      bound=0.0,
      witness_pair=(int(i), int(j)),
      tolerance=geometry.default_tolerance(max(diam, 1.0)),
      diameter=diam,
      radius=ball.radius,
      jung_bound=jung,
      max_center_shift=center_shift,
  )
