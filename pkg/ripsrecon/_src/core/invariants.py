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

"""Hausdorff and Gromov-Hausdorff comparisons between finite spaces."""

import dataclasses
import math
from typing import Iterator

import numpy as np
from ripsrecon._src.core import geometry
from ripsrecon._src.core import pathmetric
from ripsrecon._src.core import reports
from scipy import spatial
from scipy.spatial import distance

# Upper bound on the entries of one block of pair-of-pairs gaps.
_BLOCK_ENTRIES = 1 << 22


def hausdorff_distance(
    a: geometry.PointCloud, b: geometry.PointCloud
) -> float:
  """Returns the Euclidean Hausdorff distance between two finite clouds."""
  if a.dim != b.dim:
    raise ValueError(f"Dimension mismatch: {a.dim} vs {b.dim}.")
  forward, _, _ = distance.directed_hausdorff(a.points, b.points)
  backward, _, _ = distance.directed_hausdorff(b.points, a.points)
  return float(max(forward, backward))


@dataclasses.dataclass(frozen=True)
class Correspondence:
  """A relation between [0, m) and [0, n) that covers both sides.

  Attributes:
    m: size of the first space.
    n: size of the second space.
    pairs: (k, 2) array of index pairs (i, j), unique, in lexicographic order.
  """

  m: int
  n: int
  pairs: np.ndarray

  def __post_init__(self):
    pairs = np.asarray(self.pairs, dtype=np.int64).reshape(-1, 2)
    pairs = np.unique(pairs, axis=0)
    pairs.setflags(write=False)
    object.__setattr__(self, "pairs", pairs)
    if len(pairs) and (
        pairs.min() < 0
        or pairs[:, 0].max() >= self.m
        or pairs[:, 1].max() >= self.n
    ):
      raise ValueError(
          f"Correspondence index out of range for sizes ({self.m}, {self.n})."
      )
    for side, size in ((0, self.m), (1, self.n)):
      covered = np.zeros(size, dtype=bool)
      covered[pairs[:, side]] = True
      if not covered.all():
        missing = int(np.argmin(covered))
        raise ValueError(
            f"Point {missing} of space {'AB'[side]} has no partner in the"
            " correspondence."
        )

  def __len__(self) -> int:
    return len(self.pairs)

  @classmethod
  def diagonal(cls, n: int) -> "Correspondence":
    index = np.arange(n)
    return cls(n, n, np.stack([index, index], axis=1))


def hausdorff_correspondence(
    a: geometry.PointCloud, b: geometry.PointCloud, threshold: float
) -> Correspondence:
  """Returns all pairs (i, j) with ||a_i - b_j|| < threshold.

  Raises:
    ValueError: if some point of either cloud has no partner, i.e. the
      Hausdorff distance is not below `threshold`.
  """
  if a.dim != b.dim:
    raise ValueError(f"Dimension mismatch: {a.dim} vs {b.dim}.")
  tree = spatial.KDTree(b.points)
  neighbors = tree.query_ball_point(a.points, r=threshold * (1 + 1e-9))
  rows = np.repeat(np.arange(a.n), [len(js) for js in neighbors])
  cols = np.fromiter(
      (j for js in neighbors for j in js), dtype=np.int64, count=len(rows)
  )
  gaps = np.linalg.norm(a.points[rows] - b.points[cols], axis=1)
  keep = gaps < threshold
  return Correspondence(a.n, b.n, np.stack([rows[keep], cols[keep]], axis=1))


def _check_sizes(corr: Correspondence, d_a, d_b):
  if corr.m != d_a.n or corr.n != d_b.n:
    raise ValueError(
        f"Correspondence of sizes ({corr.m}, {corr.n}) does not index metric"
        f" spaces of sizes ({d_a.n}, {d_b.n})."
    )


def _gap_blocks(
    corr: Correspondence,
    d_a: geometry.FiniteMetricSpace,
    d_b: geometry.FiniteMetricSpace,
) -> Iterator[tuple[int, np.ndarray, np.ndarray, np.ndarray]]:
  """Yields (row offset, gaps, dA block, dB block) over pairs of pairs."""
  left, right = corr.pairs[:, 0], corr.pairs[:, 1]
  rows_per_block = max(1, _BLOCK_ENTRIES // max(len(corr), 1))
  for start in range(0, len(corr), rows_per_block):
    stop = min(start + rows_per_block, len(corr))
    block_a = d_a.d[np.ix_(left[start:stop], left)]
    block_b = d_b.d[np.ix_(right[start:stop], right)]
    yield start, np.abs(block_a - block_b), block_a, block_b


def _max_gap(corr, d_a, d_b, radius: float = math.inf):
  """Largest gap over pairs of pairs with min(dA, dB) <= radius."""
  best, witness = -1.0, None
  for start, gaps, block_a, block_b in _gap_blocks(corr, d_a, d_b):
    if math.isfinite(radius):
      gaps = np.where(np.minimum(block_a, block_b) <= radius, gaps, -1.0)
    p, q = np.unravel_index(np.argmax(gaps), gaps.shape)
    if gaps[p, q] > best:
      best, witness = float(gaps[p, q]), (start + int(p), int(q))
  return max(best, 0.0), witness


def distortion(
    corr: Correspondence,
    d_a: geometry.FiniteMetricSpace,
    d_b: geometry.FiniteMetricSpace,
) -> float:
  """Returns sup |dA(i1, i2) - dB(j1, j2)| over (i1, j1), (i2, j2) in corr."""
  _check_sizes(corr, d_a, d_b)
  return _max_gap(corr, d_a, d_b)[0]


def gh_upper_bound(corr, d_a, d_b) -> float:
  """Half the distortion of `corr`, an upper bound for d_GH."""
  return 0.5 * distortion(corr, d_a, d_b)


def gh_lower_bound(
    d_a: geometry.FiniteMetricSpace, d_b: geometry.FiniteMetricSpace
) -> float:
  """Half the difference of diameters, a lower bound for d_GH."""
  return 0.5 * abs(d_a.diameter - d_b.diameter)


def check_eps_R_closeness(  # pylint: disable=invalid-name
    corr: Correspondence,
    d_a: geometry.FiniteMetricSpace,
    d_b: geometry.FiniteMetricSpace,
    eps: float,
    R: float,  # pylint: disable=invalid-name
) -> reports.CheckReport:
  """Checks |dA - dB| <= 2 eps on pairs of pairs with min(dA, dB) <= R.

  The witness is a pair of indices into `corr.pairs`.
  """
  _check_sizes(corr, d_a, d_b)
  value, witness = _max_gap(corr, d_a, d_b, R)
  details = {"eps": float(eps), "R": float(R)}
  if witness is not None:
    details["witness_points"] = [
        corr.pairs[witness[0]].tolist(),
        corr.pairs[witness[1]].tolist(),
    ]
  return reports.CheckReport.upper_bound(
      "eps_R_closeness",
      value=value,
      bound=2 * eps,
      witness_pair=witness,
      tolerance=geometry.default_tolerance(max(d_a.diameter, d_b.diameter)),
      **details,
  )


def distortion_ratio(
    intrinsic: geometry.FiniteMetricSpace,
    relaxed: geometry.FiniteMetricSpace,
    R: float,  # pylint: disable=invalid-name
) -> tuple[float, tuple[int, int]]:
  """Returns max intrinsic / relaxed over pairs with intrinsic >= R."""
  if not R > 0:
    raise ValueError(f"R must be positive, got {R}.")
  mask = intrinsic.d >= R
  if not mask.any():
    raise ValueError(
        f"No pair at intrinsic distance >= R={R}; the intrinsic diameter is"
        f" {intrinsic.diameter}."
    )
  with np.errstate(divide="ignore", invalid="ignore"):
    ratio = np.where(mask, intrinsic.d / relaxed.d, -np.inf)
  i, j = np.unravel_index(np.argmax(ratio), ratio.shape)
  return float(ratio[i, j]), (int(i), int(j))


def large_scale_distortion(
    shape: geometry.ShapeDescriptor,
    ref_params: np.ndarray,
    epsilon: float,
    R: float,  # pylint: disable=invalid-name
) -> float:
  """Returns max d^L / d^eps over reference pairs at intrinsic distance >= R.

  Args:
    shape: the shape providing the intrinsic oracle d^L.
    ref_params: arclength parameters of a dense reference of the shape.
    epsilon: scale of the path metric on the reference.
    R: smallest intrinsic distance considered.

  Raises:
    DisconnectedGraphError: if the epsilon-graph of the reference is
      disconnected.
    ValueError: if no pair is at intrinsic distance >= R.
  """
  ref_params = np.asarray(ref_params, dtype=np.float64)
  cloud = geometry.PointCloud(shape.sample_at(ref_params))
  relaxed = pathmetric.path_metric(cloud, epsilon)
  intrinsic = geometry.intrinsic_metric(shape, ref_params)
  return distortion_ratio(intrinsic, relaxed, R)[0]


def global_distortion(
    shape: geometry.ShapeDescriptor, params: np.ndarray
) -> float:
  """Returns max d^L / ||.|| over distinct sampled points.

  Unlike the large-scale distortion this grows without bound on cusped
  shapes as the sample is refined.
  """
  params = np.asarray(params, dtype=np.float64)
  points = geometry.PointCloud(shape.sample_at(params))
  chord = geometry.euclidean_metric(points)
  intrinsic = geometry.intrinsic_metric(shape, params)
  mask = chord.d > 0
  if not mask.any():
    raise ValueError("Global distortion needs two distinct points.")
  return float((intrinsic.d[mask] / chord.d[mask]).max())
