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

"""Epsilon-neighborhood graphs and the epsilon-path metric.

An epsilon-path is a finite chain of points whose consecutive Euclidean gaps
are strictly below epsilon. The epsilon-path metric d^eps is the length of
the shortest such chain, computed here as all-pairs shortest paths on the
epsilon-graph of a finite cloud.
"""

import dataclasses
from typing import Sequence

from absl import logging
import numpy as np
from ripsrecon._src.core import geometry
from ripsrecon._src.core import reports
from scipy import sparse
from scipy import spatial
from scipy.sparse import csgraph


class DisconnectedGraphError(ValueError):
  """Raised when two points are not joined by any epsilon-path."""

  def __init__(
      self,
      epsilon: float,
      vertex_a: int,
      vertex_b: int,
      size_a: int,
      size_b: int,
      num_components: int,
  ):
    self.epsilon = epsilon
    self.vertex_a = vertex_a
    self.vertex_b = vertex_b
    self.num_components = num_components
    super().__init__(
        f"Epsilon-graph at epsilon={epsilon} has {num_components} components:"
        f" point {vertex_a} (component of size {size_a}) and point"
        f" {vertex_b} (component of size {size_b}) are not joined by any"
        " epsilon-path."
    )


@dataclasses.dataclass(frozen=True)
class EpsilonGraph:
  """Pairs of points at Euclidean distance strictly below epsilon.

  Attributes:
    n: number of vertices.
    epsilon: the strict edge threshold.
    edges: (m, 2) array of index pairs i < j in lexicographic order.
    weights: (m,) Euclidean edge lengths, all positive.
  """

  n: int
  epsilon: float
  edges: np.ndarray
  weights: np.ndarray

  def __len__(self) -> int:
    return len(self.weights)

  def to_csgraph(self) -> sparse.csr_matrix:
    """Returns the symmetric sparse adjacency matrix of the graph."""
    rows = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
    cols = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
    data = np.concatenate([self.weights, self.weights])
    return sparse.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))


def build_epsilon_graph(
    cloud: geometry.PointCloud, epsilon: float
) -> EpsilonGraph:
  """Returns the graph of all pairs with 0 < ||p_i - p_j|| < epsilon."""
  if not epsilon > 0:
    raise ValueError(f"Epsilon must be positive, got {epsilon}.")
  tree = spatial.KDTree(cloud.points)
  # The tree's own distance arithmetic may round across the threshold, so
  # query slightly wider and apply the strict test below.
  pairs = tree.query_pairs(r=epsilon * (1 + 1e-9), output_type="ndarray")
  pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
  weights = np.linalg.norm(
      cloud.points[pairs[:, 0]] - cloud.points[pairs[:, 1]], axis=1
  )
  keep = (weights < epsilon) & (weights > 0)
  pairs, weights = pairs[keep], weights[keep]
  order = np.lexsort((pairs[:, 1], pairs[:, 0]))
  return EpsilonGraph(
      n=cloud.n,
      epsilon=float(epsilon),
      edges=pairs[order],
      weights=weights[order],
  )


def _check_connected(graph: EpsilonGraph, original_index: np.ndarray):
  num_components, labels = csgraph.connected_components(
      graph.to_csgraph(), directed=False
  )
  if num_components > 1:
    other = int(np.argmax(labels != labels[0]))
    sizes = np.bincount(labels)
    raise DisconnectedGraphError(
        epsilon=graph.epsilon,
        vertex_a=int(original_index[0]),
        vertex_b=int(original_index[other]),
        size_a=int(sizes[labels[0]]),
        size_b=int(sizes[labels[other]]),
        num_components=int(num_components),
    )


def path_metric(
    cloud: geometry.PointCloud, epsilon: float
) -> geometry.FiniteMetricSpace:
  """Computes the epsilon-path metric of a cloud.

  Coincident points are at distance 0 and are merged before the shortest path
  computation.

  Args:
    cloud: the points.
    epsilon: the strict step threshold.

  Returns:
    The all-pairs shortest epsilon-path lengths.

  Raises:
    DisconnectedGraphError: if some pair is not joined by an epsilon-path.
  """
  unique, first_index, inverse = np.unique(
      cloud.points, axis=0, return_index=True, return_inverse=True
  )
  inverse = np.asarray(inverse).reshape(-1)
  graph = build_epsilon_graph(geometry.PointCloud(unique), epsilon)
  _check_connected(graph, first_index)
  logging.info(
      "Shortest paths on %d vertices and %d edges at epsilon=%g.",
      graph.n,
      len(graph),
      epsilon,
  )
  d = csgraph.dijkstra(graph.to_csgraph(), directed=False)
  d = geometry.symmetrize(d)
  return geometry.FiniteMetricSpace(d[np.ix_(inverse, inverse)])


def _argmax_pair(matrix: np.ndarray) -> tuple[int, int]:
  i, j = np.unravel_index(np.argmax(matrix), matrix.shape)
  return int(i), int(j)


def check_monotonicity(
    cloud: geometry.PointCloud, eps1: float, eps2: float
) -> reports.CheckReport:
  """Checks that d^eps2 <= d^eps1 entrywise for eps1 <= eps2."""
  if eps1 > eps2:
    raise ValueError(f"Expected eps1 <= eps2, got {eps1} > {eps2}.")
  d1 = path_metric(cloud, eps1).d
  d2 = path_metric(cloud, eps2).d
  excess = d2 - d1
  witness = _argmax_pair(excess)
  return reports.CheckReport.upper_bound(
      "monotonicity",
      value=max(float(excess[witness]), 0.0),
      bound=0.0,
      witness_pair=witness,
      tolerance=geometry.default_tolerance(d1.max()),
      max_decrease=float((d1 - d2).max()),
  )


def _paired_reference(
    shape: geometry.ShapeDescriptor,
    ref_params: np.ndarray,
    sample_cloud: geometry.PointCloud,
    xi: float,
    epsilon: float,
) -> np.ndarray:
  """Returns the reference points after checking the index-wise pairing."""
  if not 0 < xi < 1:
    raise ValueError(f"xi must be in (0, 1), got {xi}.")
  if not epsilon > 0:
    raise ValueError(f"Epsilon must be positive, got {epsilon}.")
  reference = shape.sample_at(np.asarray(ref_params, dtype=np.float64))
  if reference.shape != sample_cloud.points.shape:
    raise ValueError(
        f"Reference of shape {reference.shape} cannot be paired with sample of"
        f" shape {sample_cloud.points.shape}."
    )
  offsets = np.linalg.norm(reference - sample_cloud.points, axis=1)
  limit = 0.5 * xi * epsilon
  if np.any(offsets >= limit):
    worst = int(np.argmax(offsets))
    raise ValueError(
        f"Pairing offset {offsets[worst]} at index {worst} is not below"
        f" xi * epsilon / 2 = {limit}."
    )
  return reference


def check_comparison(
    shape: geometry.ShapeDescriptor,
    ref_params: np.ndarray,
    sample_cloud: geometry.PointCloud,
    xi: float,
    epsilon: float,
) -> reports.CheckReport:
  """Checks ||s1 - s2|| <= d^eps_S(s1, s2) <= (d^L(x1, x2) + xi eps) / (1 - xi).

  Args:
    shape: the shape whose intrinsic oracle gives d^L.
    ref_params: arclength parameters of the reference points x_i.
    sample_cloud: the sample; s_i is paired with x_i.
    xi: ratio in (0, 1).
    epsilon: path metric scale.

  Returns:
    A report whose value is the largest violation of either inequality.

  Raises:
    ValueError: if some ||x_i - s_i|| >= xi * epsilon / 2.
  """
  _paired_reference(shape, ref_params, sample_cloud, xi, epsilon)
  d_eps = path_metric(sample_cloud, epsilon).d
  chord = geometry.euclidean_metric(sample_cloud).d
  upper = (geometry.intrinsic_metric(shape, ref_params).d + xi * epsilon) / (
      1 - xi
  )
  lower_excess = chord - d_eps
  upper_excess = d_eps - upper
  excess = np.maximum(lower_excess, upper_excess)
  witness = _argmax_pair(excess)
  return reports.CheckReport.upper_bound(
      "path_metric_comparison",
      value=max(float(excess[witness]), 0.0),
      bound=0.0,
      witness_pair=witness,
      tolerance=geometry.default_tolerance(upper.max()),
      lower_max_violation=float(lower_excess.max()),
      upper_max_violation=float(upper_excess.max()),
      upper_min_slack=float(-upper_excess.max()),
  )


def check_stability(
    shape: geometry.ShapeDescriptor,
    ref_params: np.ndarray,
    sample_cloud: geometry.PointCloud,
    xi: float,
    epsilon: float,
) -> reports.CheckReport:
  """Checks the path metric stability bound between a reference and a sample.

  For paired points p' ~ p and q' ~ q this verifies

    d^{(2 + xi) eps}_X(p', q') <= d^eps_S(p, q) + xi * max(d^eps_S(p, q), eps),

  which is (1 + xi) d^eps_S(p, q) when d^eps_S(p, q) >= eps. Closer pairs are
  joined by a single edge in X and obey the additive form instead.

  Args:
    shape: the shape the reference is drawn from.
    ref_params: arclength parameters of the reference points.
    sample_cloud: the sample, paired index-wise with the reference.
    xi: ratio in (0, 1).
    epsilon: path metric scale of the sample.

  Returns:
    A report whose value is the largest violation; `details` carries the
    largest ratio d_X / d_S over pairs with d_S >= eps.
  """
  reference = _paired_reference(shape, ref_params, sample_cloud, xi, epsilon)
  d_x = path_metric(geometry.PointCloud(reference), (2 + xi) * epsilon).d
  d_s = path_metric(sample_cloud, epsilon).d
  bound = d_s + xi * np.maximum(d_s, epsilon)
  excess = d_x - bound
  witness = _argmax_pair(excess)
  long_range = d_s >= epsilon
  max_ratio = 1.0
  if long_range.any():
    max_ratio = float((d_x[long_range] / d_s[long_range]).max())
  return reports.CheckReport.upper_bound(
      "path_metric_stability",
      value=max(float(excess[witness]), 0.0),
      bound=0.0,
      witness_pair=witness,
      tolerance=geometry.default_tolerance(bound.max()),
      max_long_range_ratio=max_ratio,
      ratio_bound=1 + xi,
  )


@dataclasses.dataclass(frozen=True)
class ConvergenceRow:
  """One epsilon of a convergence sweep; `error` is set for failed cells."""

  epsilon: float
  sup_error: float
  witness_pair: tuple[int, int] | None = None
  error: str | None = None


def path_metric_sup_error(
    shape: geometry.ShapeDescriptor,
    params: np.ndarray,
    epsilon: float,
    intrinsic: geometry.FiniteMetricSpace | None = None,
) -> tuple[float, tuple[int, int]]:
  """Returns sup |d^eps - d^L| over the sampled pairs and a witness pair."""
  cloud = geometry.PointCloud(shape.sample_at(np.asarray(params)))
  if intrinsic is None:
    intrinsic = geometry.intrinsic_metric(shape, params)
  error = np.abs(path_metric(cloud, epsilon).d - intrinsic.d)
  witness = _argmax_pair(error)
  return float(error[witness]), witness


def convergence_sweep(
    shape: geometry.ShapeDescriptor, n: int, eps_list: Sequence[float]
) -> list[ConvergenceRow]:
  """Sup-error of d^eps against the intrinsic metric on an n-point grid.

  Cells whose epsilon-graph is disconnected are recorded with their error
  message and the sweep continues.
  """
  _, params = geometry.sample_shape(shape, n, mode="grid")
  intrinsic = geometry.intrinsic_metric(shape, params)
  rows = []
  for epsilon in eps_list:
    try:
      sup_error, witness = path_metric_sup_error(
          shape, params, epsilon, intrinsic
      )
    except DisconnectedGraphError as e:
      logging.warning("Convergence cell epsilon=%g failed: %s", epsilon, e)
      rows.append(ConvergenceRow(float(epsilon), float("nan"), None, str(e)))
      continue
    rows.append(ConvergenceRow(float(epsilon), sup_error, witness))
  return rows
