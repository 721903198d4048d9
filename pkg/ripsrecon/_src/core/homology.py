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

"""Simplicial homology with coefficients in the two-element field."""

import dataclasses
from typing import Any

from absl import logging
import numpy as np
from ripsrecon._src.core import complexes
from scipy.sparse import csgraph


@dataclasses.dataclass(frozen=True)
class BoundaryMatrix:
  """The boundary map from k-simplices to (k-1)-simplices.

  Attributes:
    dim: k.
    n_rows: number of (k-1)-simplices (0 when k = 0).
    columns: for each k-simplex, the sorted row indices of its faces.
  """

  dim: int
  n_rows: int
  columns: tuple[tuple[int, ...], ...]

  @property
  def n_columns(self) -> int:
    return len(self.columns)


@dataclasses.dataclass(frozen=True)
class BettiProfile:
  """Betti numbers up to `certified_up_to` and the Euler characteristic."""

  betti: tuple[int, ...]
  euler: int
  certified_up_to: int

  def to_json(self) -> dict[str, Any]:
    return {
        "betti": list(self.betti),
        "euler": self.euler,
        "certified_up_to": self.certified_up_to,
    }


def boundary_matrix(complex_: complexes.FlagComplex, k: int) -> BoundaryMatrix:
  """Returns the boundary matrix of dimension k of `complex_`."""
  if not 0 <= k <= complex_.max_dim:
    raise ValueError(f"Dimension {k} outside [0, {complex_.max_dim}].")
  simplices = complex_.simplices[k]
  if k == 0:
    return BoundaryMatrix(0, 0, tuple(() for _ in range(len(simplices))))
  index = complex_.simplex_index(k - 1)
  columns = []
  for simplex in simplices.tolist():
    faces = (tuple(simplex[:i] + simplex[i + 1 :]) for i in range(k + 1))
    columns.append(tuple(sorted(index[face] for face in faces)))
  return BoundaryMatrix(k, len(complex_.simplices[k - 1]), tuple(columns))


def compose_is_zero(lower: BoundaryMatrix, upper: BoundaryMatrix) -> bool:
  """Returns whether lower o upper = 0 over the two-element field."""
  if upper.dim != lower.dim + 1:
    raise ValueError(
        f"Cannot compose boundaries of dimensions {lower.dim} and {upper.dim}."
    )
  for column in upper.columns:
    image = set()
    for row in column:
      image.symmetric_difference_update(lower.columns[row])
    if image:
      return False
  return True


def rank_mod2(matrix: BoundaryMatrix) -> int:
  """Rank over the two-element field by left-to-right column reduction.

  Each column is reduced against earlier pivots (keyed by lowest, i.e.
  largest, row index) until it is empty or has a new pivot.
  """
  pivots: dict[int, list[int]] = {}
  rank = 0
  for column in matrix.columns:
    column = list(column)
    while column:
      low = column[-1]
      if low not in pivots:
        pivots[low] = column
        rank += 1
        break
      column = sorted(set(column).symmetric_difference(pivots[low]))
  return rank


def betti_numbers(
    complex_: complexes.FlagComplex, up_to: int
) -> BettiProfile:
  """Betti numbers of dimensions 0..up_to over the two-element field.

  Args:
    complex_: the complex; `up_to` must be below its max_dim unless it is
      fully materialized, in which case up_to may equal max_dim.
    up_to: highest homology dimension to compute.

  Returns:
    The Betti profile.

  Raises:
    ValueError: if the (up_to + 1)-simplices needed are not materialized.
  """
  if up_to < 0:
    raise ValueError(f"up_to must be nonnegative, got {up_to}.")
  if up_to >= complex_.max_dim and not (
      up_to == complex_.max_dim and complex_.is_fully_materialized
  ):
    raise ValueError(
        f"Betti numbers up to dimension {up_to} need simplices of dimension"
        f" {up_to + 1}, but the complex is materialized to {complex_.max_dim}."
    )
  ranks = [0]
  for k in range(1, up_to + 2):
    ranks.append(
        rank_mod2(boundary_matrix(complex_, k)) if k <= complex_.max_dim else 0
    )
  betti = tuple(
      complex_.num_simplices(k) - ranks[k] - ranks[k + 1]
      for k in range(up_to + 1)
  )
  logging.info("Betti numbers up to %d: %s.", up_to, betti)
  return BettiProfile(
      betti=betti,
      euler=complexes.euler_characteristic(complex_),
      certified_up_to=up_to,
  )


def connected_components(complex_: complexes.FlagComplex) -> int:
  """Number of connected components of the 1-skeleton."""
  if complex_.n_vertices == 0:
    return 0
  num_components, _ = csgraph.connected_components(
      complex_.adjacency().astype(np.int8), directed=False
  )
  return int(num_components)
