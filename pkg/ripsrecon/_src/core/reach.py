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

"""Generalized gradient of the distance function and mu-reach estimates.

For a finite cloud X and a point z, R(z) is the distance to X, Gamma(z) the
set of nearest points, Theta(z) the point of conv(Gamma(z)) closest to z and
||grad(z)|| = ||z - Theta(z)|| / R(z). The critical function chi(d) is the
infimum of ||grad|| over the level set R = d, and the mu-reach is the
smallest d with chi(d) < mu. Level sets are probed, so every chi value is an
estimate that can only overshoot the infimum.
"""

import dataclasses
import itertools
import math
from typing import Any, Sequence

from absl import logging
import numpy as np
from ripsrecon._src.core import geometry
from ripsrecon._src.core import rng as rng_lib
from scipy import spatial

# Largest nearest-point set solved by face enumeration.
MAX_EXACT_GAMMA = 8
_PROJECTION_THRESHOLD = 1e-10
_MAX_PROJECTION_STEPS = 100_000
_MAX_WALK_STEPS = 50
_RIDGE_BLOCK = 200_000


def neighbor_tolerance(radius: float) -> float:
  """Distance slack under which two points count as equally near."""
  return max(1e-9, 1e-6 * radius)


def distance_field(
    cloud: geometry.PointCloud,
    z: np.ndarray,
    tree: spatial.KDTree | None = None,
) -> tuple[float, np.ndarray]:
  """Returns R(z) and the sorted indices of the near-minimizers Gamma(z)."""
  z = np.asarray(z, dtype=np.float64)
  if z.shape != (cloud.dim,):
    raise ValueError(
        f"Probe of shape {z.shape} in a cloud of dimension {cloud.dim}."
    )
  if tree is None:
    tree = spatial.KDTree(cloud.points)
  approx, _ = tree.query(z)
  cutoff = approx * (1 + 1e-6) + neighbor_tolerance(approx)
  candidates = np.asarray(tree.query_ball_point(z, cutoff), dtype=np.int64)
  norms = np.linalg.norm(cloud.points[candidates] - z, axis=1)
  radius = float(norms.min())
  gamma = np.sort(candidates[norms <= radius + neighbor_tolerance(radius)])
  return radius, gamma


def _project_to_face(z: np.ndarray, face: np.ndarray):
  """Projects z onto the affine hull of `face`; returns point and weights."""
  origin = face[0]
  if len(face) == 1:
    return origin, np.ones(1)
  v = face[1:] - origin
  coeffs = np.linalg.lstsq(v @ v.T, v @ (z - origin), rcond=None)[0]
  return origin + coeffs @ v, np.concatenate([[1 - coeffs.sum()], coeffs])


def _nearest_hull_point_exact(z: np.ndarray, points: np.ndarray) -> np.ndarray:
  best, best_dist = points[0], math.inf
  max_face = min(len(points), points.shape[1] + 1)
  for size in range(1, max_face + 1):
    for face in itertools.combinations(range(len(points)), size):
      candidate, weights = _project_to_face(z, points[list(face)])
      if weights.min() < -1e-12:
        continue
      dist = float(np.linalg.norm(z - candidate))
      if dist < best_dist:
        best, best_dist = candidate, dist
  return best


def _project_to_simplex(w: np.ndarray) -> np.ndarray:
  u = np.sort(w)[::-1]
  cumulative = np.cumsum(u) - 1
  k = np.arange(1, len(w) + 1)
  rho = np.nonzero(u - cumulative / k > 0)[0][-1]
  return np.maximum(w - cumulative[rho] / (rho + 1), 0)


def _nearest_hull_point_iterative(
    z: np.ndarray, points: np.ndarray
) -> np.ndarray:
  """Projected gradient descent on the barycentric weights."""
  weights = np.full(len(points), 1 / len(points))
  step = 1 / max(np.linalg.eigvalsh(points @ points.T).max(), 1e-300)
  for _ in range(_MAX_PROJECTION_STEPS):
    gradient = points @ (weights @ points - z)
    updated = _project_to_simplex(weights - step * gradient)
    if np.abs(updated - weights).max() < _PROJECTION_THRESHOLD:
      weights = updated
      break
    weights = updated
  return weights @ points


def nearest_hull_point(z: np.ndarray, points: np.ndarray) -> np.ndarray:
  """Returns the point of conv(points) closest to z."""
  points = np.asarray(points, dtype=np.float64)
  if len(points) <= MAX_EXACT_GAMMA:
    return _nearest_hull_point_exact(z, points)
  logging.warning(
      "Nearest point set of size %d exceeds %d; using iterative projection.",
      len(points),
      MAX_EXACT_GAMMA,
  )
  # Work relative to z so that the iteration is well conditioned.
  return z + _nearest_hull_point_iterative(np.zeros_like(z), points - z)


def gradient_norm(
    cloud: geometry.PointCloud,
    z: np.ndarray,
    tree: spatial.KDTree | None = None,
) -> float:
  """Returns ||z - Theta(z)|| / R(z), a value in [0, 1].

  Raises:
    ValueError: if z lies on the cloud.
  """
  z = np.asarray(z, dtype=np.float64)
  radius, gamma = distance_field(cloud, z, tree)
  if radius == 0:
    raise ValueError("The gradient is undefined on the cloud itself.")
  if len(gamma) == 1:
    return 1.0
  theta = nearest_hull_point(z, cloud.points[gamma])
  return min(float(np.linalg.norm(z - theta)) / radius, 1.0)


@dataclasses.dataclass(frozen=True)
class CriticalFunctionRow:
  """Estimate of chi(d); nan when no probe reached the level set."""

  d: float
  chi_estimate: float
  n_probes: int

  def to_json(self) -> dict[str, Any]:
    return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True)
class CriticalFunctionTable:
  """Critical function estimates ordered as the requested depths."""

  rows: tuple[CriticalFunctionRow, ...]

  def mu_reach_estimate(self, mu: float) -> float:
    """Smallest probed d with chi estimate below mu, or inf."""
    hits = [row.d for row in self.rows if row.chi_estimate < mu]
    return min(hits, default=math.inf)


def _nearest(tree, z, k):
  """Distances to the k nearest points, as an (m, k) array."""
  k = min(k, tree.n)
  distances, _ = tree.query(z, k=k)
  return np.asarray(distances).reshape(len(z), k)


def _walking_probes(points, tree, d, n_probe, generator):
  """Seeded offsets projected onto the level set along nearest directions.

  Returns the probes and their gradient norms, which are 1 where the nearest
  point is unique and nan where `gradient_norm` has to decide.
  """
  if n_probe == 0:
    return np.zeros((0, points.shape[1])), np.zeros(0)
  anchors = generator.integers(0, len(points), size=n_probe)
  directions = generator.standard_normal((n_probe, points.shape[1]))
  directions /= np.linalg.norm(directions, axis=1, keepdims=True)
  z = points[anchors] + d * directions
  tol = neighbor_tolerance(d)
  for _ in range(_MAX_WALK_STEPS):
    radius, nearest = tree.query(z)
    if np.all(np.abs(radius - d) <= tol):
      break
    offsets = z - points[nearest]
    safe = radius > 0
    offsets[~safe] = directions[~safe]
    offsets /= np.linalg.norm(offsets, axis=1, keepdims=True)
    z = points[nearest] + d * offsets
  distances = _nearest(tree, z, 2)
  z = z[np.abs(distances[:, 0] - d) <= tol]
  distances = distances[np.abs(distances[:, 0] - d) <= tol]
  values = np.full(len(z), np.nan)
  if distances.shape[1] < 2:
    values[:] = 1.0
  else:
    values[distances[:, 1] > distances[:, 0] + tol] = 1.0
  return z, values


def _delaunay_edges(points: np.ndarray) -> np.ndarray | None:
  """Edges of the Delaunay triangulation of a planar cloud, if it has one.

  Two points share a Voronoi boundary only if they are joined by a Delaunay
  edge, so in the plane these are the only pairs worth probing.
  """
  if points.shape[1] != 2 or len(points) < 3:
    return None
  try:
    simplices = spatial.Delaunay(points).simplices
  except spatial.QhullError:
    logging.warning("Delaunay triangulation failed; probing all close pairs.")
    return None
  pairs = np.concatenate(
      [simplices[:, [0, 1]], simplices[:, [1, 2]], simplices[:, [0, 2]]]
  )
  return np.unique(np.sort(pairs, axis=1), axis=0).astype(np.int64)


def _candidate_pairs(points, tree, edges, d) -> np.ndarray:
  """Pairs closer than 2 d, restricted to `edges` when given."""
  if edges is None:
    pairs = tree.query_pairs(2 * d, output_type="ndarray")
    return np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
  lengths = np.linalg.norm(points[edges[:, 0]] - points[edges[:, 1]], axis=1)
  return edges[lengths < 2 * d]


def _ridge_probes(points, tree, pairs, d, generator):
  """Points at depth d on bisectors of sample pairs that stay nearest.

  Returns the probes and their gradient norms. Where the pair is the whole
  nearest set the norm is height / d, the distance from the probe to the
  pair midpoint over the radius; other probes get nan.
  """
  found, found_values = [], []
  tol = neighbor_tolerance(d)
  for start in range(0, len(pairs), _RIDGE_BLOCK):
    block = pairs[start : start + _RIDGE_BLOCK]
    a, b = points[block[:, 0]], points[block[:, 1]]
    half = 0.5 * np.linalg.norm(b - a, axis=1)
    keep = (half > 0) & (half < d)
    a, b, half = a[keep], b[keep], half[keep]
    axis = (b - a) / (2 * half[:, None])
    if points.shape[1] == 2:
      normal = np.stack([-axis[:, 1], axis[:, 0]], axis=1)
    else:
      normal = generator.standard_normal(axis.shape)
      normal -= np.sum(normal * axis, axis=1, keepdims=True) * axis
      normal /= np.linalg.norm(normal, axis=1, keepdims=True)
    height = np.sqrt(d**2 - half**2)
    middle = 0.5 * (a + b)
    z = np.concatenate(
        [middle + height[:, None] * normal, middle - height[:, None] * normal]
    )
    values = np.concatenate([height, height]) / d
    distances = _nearest(tree, z, 3)
    valid = distances[:, 0] >= d - tol
    if distances.shape[1] == 3:
      values[distances[:, 2] <= distances[:, 0] + tol] = np.nan
    found.append(z[valid])
    found_values.append(values[valid])
  if not found:
    return np.zeros((0, points.shape[1])), np.zeros(0)
  return np.concatenate(found), np.concatenate(found_values)


def critical_function_estimate(
    cloud: geometry.PointCloud,
    d_values: Sequence[float],
    n_probe: int,
    seed: int = 0,
) -> CriticalFunctionTable:
  """Estimates chi(d) for each depth d by probing the level set R = d.

  Probes come from two sources: `n_probe` seeded offsets walked onto the
  level set, and points at depth d on the bisector of every candidate sample
  pair for which the pair is still nearest. The estimate is the smallest
  gradient norm over all probes.

  Args:
    cloud: the sample.
    d_values: positive depths.
    n_probe: number of walking probes per depth.
    seed: experiment seed; draws come from the "probing" substream.

  Returns:
    One row per depth, in the given order.
  """
  if any(not d > 0 for d in d_values):
    raise ValueError(f"Depths must be positive, got {list(d_values)}.")
  generator = rng_lib.substream(seed, rng_lib.PROBING)
  points = cloud.points
  tree = spatial.KDTree(points)
  edges = _delaunay_edges(points)
  rows = []
  for d in d_values:
    walked, walked_values = _walking_probes(points, tree, d, n_probe, generator)
    ridge, ridge_values = _ridge_probes(
        points, tree, _candidate_pairs(points, tree, edges, d), d, generator
    )
    probes = np.concatenate([walked, ridge])
    values = np.concatenate([walked_values, ridge_values])
    if not len(probes):
      logging.warning("No probe reached the level set at d=%g.", d)
      rows.append(CriticalFunctionRow(float(d), math.nan, 0))
      continue
    undecided = np.flatnonzero(np.isnan(values))
    for i in undecided:
      values[i] = gradient_norm(cloud, probes[i], tree)
    chi = float(values.min())
    logging.info("chi(%g) <= %g from %d probes.", d, chi, len(probes))
    rows.append(CriticalFunctionRow(float(d), chi, len(probes)))
  return CriticalFunctionTable(tuple(rows))
