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

"""Point clouds, finite metric spaces and the shape protocol."""

import dataclasses
import math
import typing
from typing import Protocol, Sequence

from absl import logging
import numpy as np
from ripsrecon._src.core import rng as rng_lib
from scipy.spatial import distance

# Relative float tolerance for non-strict inequalities.
RELATIVE_TOLERANCE = 1e-9

SAMPLE_MODES = ("grid", "uniform")


def default_tolerance(scale: float) -> float:
  """Returns the absolute tolerance for quantities of magnitude `scale`."""
  return RELATIVE_TOLERANCE * abs(float(scale))


def _readonly(array: np.ndarray) -> np.ndarray:
  array = np.array(array, dtype=np.float64, copy=True)
  array.setflags(write=False)
  return array


@dataclasses.dataclass(frozen=True)
class PointCloud:
  """A nonempty finite set of points in R^dim, stored as an (n, dim) array."""

  points: np.ndarray

  def __post_init__(self):
    object.__setattr__(self, "points", _readonly(self.points))
    if self.points.ndim != 2 or self.points.shape[0] == 0:
      raise ValueError(
          f"Point cloud must be a nonempty (n, dim) array, got shape"
          f" {self.points.shape}."
      )
    if self.points.shape[1] == 0:
      raise ValueError("Point cloud dimension must be positive.")
    if not np.all(np.isfinite(self.points)):
      bad = int(np.argwhere(~np.isfinite(self.points))[0, 0])
      raise ValueError(f"Non-finite coordinate in point {bad}.")

  @property
  def n(self) -> int:
    return self.points.shape[0]

  @property
  def dim(self) -> int:
    return self.points.shape[1]

  def __len__(self) -> int:
    return self.n


@dataclasses.dataclass(frozen=True)
class FiniteMetricSpace:
  """A symmetric matrix of distances on n indexed points.

  The constructor validates everything except the triangle inequality, which
  costs O(n^3); `validate_triangle_inequality` checks it on demand and
  `make_metric_space` runs both.
  """

  d: np.ndarray

  def __post_init__(self):
    object.__setattr__(self, "d", _readonly(self.d))
    d = self.d
    if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] == 0:
      raise ValueError(f"Distance matrix must be square, got shape {d.shape}.")
    if not np.all(np.isfinite(d)):
      raise ValueError("Distance matrix has non-finite entries.")
    if np.any(d < 0):
      raise ValueError("Distance matrix has negative entries.")
    if np.any(np.diagonal(d) != 0):
      raise ValueError("Distance matrix has a nonzero diagonal.")
    if not np.array_equal(d, d.T):
      i, j = np.argwhere(d != d.T)[0]
      raise ValueError(f"Distance matrix is not symmetric at ({i}, {j}).")

  @property
  def n(self) -> int:
    return self.d.shape[0]

  @property
  def diameter(self) -> float:
    return float(self.d.max())

  @property
  def tolerance(self) -> float:
    return default_tolerance(self.diameter)

  def validate_triangle_inequality(self):
    """Raises ValueError if d[i, k] > d[i, j] + d[j, k] + tolerance."""
    tol = self.tolerance
    for j in range(self.n):
      through_j = self.d[:, j : j + 1] + self.d[j : j + 1, :]
      excess = self.d - through_j
      if np.any(excess > tol):
        i, k = np.unravel_index(np.argmax(excess), excess.shape)
        raise ValueError(
            f"Triangle inequality fails: d[{i}, {k}] = {self.d[i, k]} >"
            f" d[{i}, {j}] + d[{j}, {k}] = {through_j[i, k]}."
        )


def symmetrize(matrix: np.ndarray) -> np.ndarray:
  """Returns the matrix mirrored from its strict upper triangle."""
  upper = np.triu(np.asarray(matrix, dtype=np.float64), 1)
  return upper + upper.T


def make_point_cloud(
    coords: Sequence[Sequence[float]] | np.ndarray,
) -> PointCloud:
  """Validates coordinates and returns a PointCloud.

  Args:
    coords: a nonempty sequence of equal-length coordinate vectors.

  Returns:
    The validated cloud.

  Raises:
    ValueError: on an empty input, mismatched dimensions or non-finite
      coordinates.
  """
  if isinstance(coords, np.ndarray):
    return PointCloud(coords)
  coords = list(coords)
  if not coords:
    raise ValueError("Point cloud must be nonempty.")
  dims = {len(c) for c in coords}
  if len(dims) != 1:
    raise ValueError(
        f"Dimension mismatch in point cloud: found dims {sorted(dims)}."
    )
  return PointCloud(np.asarray(coords, dtype=np.float64))


def make_metric_space(
    matrix: np.ndarray | Sequence[Sequence[float]],
) -> FiniteMetricSpace:
  """Returns a FiniteMetricSpace after validating all metric axioms."""
  metric = FiniteMetricSpace(np.asarray(matrix, dtype=np.float64))
  metric.validate_triangle_inequality()
  return metric


def euclidean_metric(cloud: PointCloud) -> FiniteMetricSpace:
  """Returns the Euclidean distances between the points of `cloud`."""
  if cloud.n == 1:
    return FiniteMetricSpace(np.zeros((1, 1)))
  return FiniteMetricSpace(distance.squareform(distance.pdist(cloud.points)))


def delta_parameter(rho: float, kappa: float) -> float:
  """Returns min{pi / (4 sqrt(kappa)), rho}, or rho if kappa <= 0."""
  if rho <= 0:
    raise ValueError(f"Convexity radius must be positive, got {rho}.")
  if kappa > 0:
    return min(math.pi / (4 * math.sqrt(kappa)), rho)
  return float(rho)


@typing.runtime_checkable
class ShapeDescriptor(Protocol):
  """A compact curve in R^N parametrized by arclength.

  Attributes:
    id: the registry name of the shape.
    dim_ambient: dimension of the embedding space.
    total_length: total arclength; parameters live in [0, total_length).
    is_closed: whether the curve is a closed loop in arclength, so that the
      parameter total_length is the same point as 0.
    kappa: upper curvature bound of the intrinsic metric.
    rho: convexity radius of the intrinsic metric.
    delta_cap: the sampling cap `delta_parameter(rho, kappa)`.
    expected_betti: Betti profile (dimensions 0 and 1) of the shape.
  """

  id: str

  @property
  def dim_ambient(self) -> int:
    ...

  @property
  def total_length(self) -> float:
    ...

  @property
  def is_closed(self) -> bool:
    ...

  @property
  def kappa(self) -> float:
    ...

  @property
  def rho(self) -> float:
    ...

  @property
  def delta_cap(self) -> float:
    ...

  @property
  def expected_betti(self) -> tuple[int, ...]:
    ...

  def sample_at(self, t: np.ndarray) -> np.ndarray:
    """Maps arclength parameters of shape (k,) to points of shape (k, N)."""
    ...

  def intrinsic_distance(self, s: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Exact intrinsic distances between broadcastable parameter arrays."""
    ...


def sample_shape(
    shape: ShapeDescriptor, n: int, mode: str = "grid", seed: int = 0
) -> tuple[PointCloud, np.ndarray]:
  """Samples `n` points of `shape`.

  Args:
    shape: the shape to sample.
    n: number of points.
    mode: "grid" for the parameters {k L / n} on closed shapes and the
      midpoints {(k + 1/2) L / n} on open ones, "uniform" for i.i.d. uniform
      arclength parameters drawn from the seeded "sampling" substream. Either
      grid is within `grid_cover_radius(shape, n)` of every point of the shape.
    seed: experiment seed; unused in grid mode.

  Returns:
    The sampled cloud and its arclength parameters.
  """
  if n < 1:
    raise ValueError(f"Sample size must be positive, got {n}.")
  length = shape.total_length
  if mode == "grid":
    offset = 0.0 if shape.is_closed else 0.5
    params = (np.arange(n, dtype=np.float64) + offset) * (length / n)
  elif mode == "uniform":
    generator = rng_lib.substream(seed, rng_lib.SAMPLING)
    params = generator.uniform(0.0, length, size=n)
  else:
    raise ValueError(
        f"Unknown sample mode {mode!r}, expected one of {SAMPLE_MODES}."
    )
  return PointCloud(shape.sample_at(params)), params


def grid_cover_radius(shape: ShapeDescriptor, n: int) -> float:
  """Intrinsic (hence Euclidean) Hausdorff bound of an n-point grid sample."""
  if n < 1:
    raise ValueError(f"Sample size must be positive, got {n}.")
  return shape.total_length / (2 * n)


def perturb(cloud: PointCloud, eta: float, seed: int = 0) -> PointCloud:
  """Displaces every point by an independent uniform vector of norm < eta."""
  if eta < 0:
    raise ValueError(f"Noise radius must be nonnegative, got {eta}.")
  if eta == 0:
    return PointCloud(cloud.points)
  generator = rng_lib.substream(seed, rng_lib.NOISE)
  directions = generator.standard_normal(cloud.points.shape)
  directions /= np.linalg.norm(directions, axis=1, keepdims=True)
  radii = eta * generator.random(cloud.n) ** (1.0 / cloud.dim)
  radii = np.minimum(radii, np.nextafter(eta, 0.0))
  logging.info("Perturbing %d points with noise radius %g.", cloud.n, eta)
  return PointCloud(cloud.points + directions * radii[:, None])


def intrinsic_metric(
    shape: ShapeDescriptor, params: np.ndarray
) -> FiniteMetricSpace:
  """Returns the exact intrinsic distances between the given parameters."""
  params = np.asarray(params, dtype=np.float64)
  d = shape.intrinsic_distance(params[:, None], params[None, :])
  return FiniteMetricSpace(symmetrize(d))
