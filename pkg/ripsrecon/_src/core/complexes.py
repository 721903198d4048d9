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

"""Vietoris-Rips and other flag complexes."""

import dataclasses
import itertools
from typing import Sequence

from absl import logging
import numpy as np
from ripsrecon._src.core import geometry


def _as_simplex_array(simplices, k: int) -> np.ndarray:
  array = np.asarray(simplices, dtype=np.int64).reshape(-1, k + 1)
  array.setflags(write=False)
  return array


@dataclasses.dataclass(frozen=True)
class FlagComplex:
  """A flag complex materialized up to `max_dim`.

  Attributes:
    n_vertices: number of vertices; vertex k is the k-th point.
    max_dim: highest materialized dimension.
    simplices: for each k in [0, max_dim], a (count, k + 1) integer array of
      strictly increasing vertex tuples in lexicographic order.
  """

  n_vertices: int
  max_dim: int
  simplices: tuple[np.ndarray, ...]

  def __post_init__(self):
    if self.max_dim < 0:
      raise ValueError(f"max_dim must be nonnegative, got {self.max_dim}.")
    if len(self.simplices) != self.max_dim + 1:
      raise ValueError(
          f"Expected simplices for dimensions 0..{self.max_dim}, got"
          f" {len(self.simplices)} blocks."
      )
    object.__setattr__(
        self,
        "simplices",
        tuple(_as_simplex_array(s, k) for k, s in enumerate(self.simplices)),
    )

  @property
  def edges(self) -> np.ndarray:
    if self.max_dim == 0:
      return np.zeros((0, 2), dtype=np.int64)
    return self.simplices[1]

  @property
  def counts(self) -> tuple[int, ...]:
    return tuple(len(s) for s in self.simplices)

  @property
  def top_dimension(self) -> int:
    """Highest dimension with at least one simplex, or -1 if empty."""
    nonempty = [k for k, s in enumerate(self.simplices) if len(s)]
    return max(nonempty, default=-1)

  def num_simplices(self, k: int) -> int:
    return len(self.simplices[k]) if 0 <= k <= self.max_dim else 0

  def adjacency(self) -> np.ndarray:
    """Returns the boolean adjacency matrix of the 1-skeleton."""
    adj = np.zeros((self.n_vertices, self.n_vertices), dtype=bool)
    edges = self.edges
    adj[edges[:, 0], edges[:, 1]] = True
    adj[edges[:, 1], edges[:, 0]] = True
    return adj

  @property
  def is_fully_materialized(self) -> bool:
    """True if the complex has no clique of dimension above max_dim."""
    if self.max_dim == 0:
      # Edges are not stored at max_dim 0.
      return self.n_vertices <= 1
    return len(_extend_cliques(self.simplices[-1], self.adjacency())) == 0

  def simplex_index(self, k: int) -> dict[tuple[int, ...], int]:
    """Maps each k-simplex to its position in canonical order."""
    return {tuple(s): i for i, s in enumerate(self.simplices[k].tolist())}

  def is_subcomplex_of(self, other: "FlagComplex") -> bool:
    for k in range(self.max_dim + 1):
      if not len(self.simplices[k]):
        continue
      if k > other.max_dim:
        return False
      known = set(map(tuple, other.simplices[k].tolist()))
      if any(tuple(s) not in known for s in self.simplices[k].tolist()):
        return False
    return True


def _extend_cliques(cliques: np.ndarray, adj: np.ndarray) -> np.ndarray:
  """Extends each clique by every common neighbor above its largest vertex."""
  k = cliques.shape[1]
  blocks = []
  for clique in cliques:
    common = np.logical_and.reduce(adj[clique], axis=0)
    common[: clique[-1] + 1] = False
    extra = np.flatnonzero(common)
    if len(extra):
      block = np.empty((len(extra), k + 1), dtype=np.int64)
      block[:, :k] = clique
      block[:, k] = extra
      blocks.append(block)
  if not blocks:
    return np.zeros((0, k + 1), dtype=np.int64)
  return np.concatenate(blocks)


def flag_complex(
    n_vertices: int, edges: np.ndarray | Sequence[Sequence[int]], max_dim: int
) -> FlagComplex:
  """Returns the flag complex of a graph up to `max_dim`.

  Cliques are enumerated by ordered extension: a k-simplex is only extended
  by common neighbors greater than its largest vertex, so every clique is
  produced once and in lexicographic order.
  """
  if max_dim < 0:
    raise ValueError(f"max_dim must be nonnegative, got {max_dim}.")
  edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
  edges = np.sort(edges, axis=1)
  edges = edges[edges[:, 0] != edges[:, 1]]
  edges = np.unique(edges, axis=0)
  simplices = [np.arange(n_vertices, dtype=np.int64)[:, None]]
  if max_dim >= 1:
    simplices.append(edges)
  if max_dim >= 2:
    adj = np.zeros((n_vertices, n_vertices), dtype=bool)
    adj[edges[:, 0], edges[:, 1]] = True
    adj[edges[:, 1], edges[:, 0]] = True
    for _ in range(2, max_dim + 1):
      simplices.append(_extend_cliques(simplices[-1], adj))
  return FlagComplex(n_vertices, max_dim, tuple(simplices))


def rips_complex(
    metric: geometry.FiniteMetricSpace, beta: float, max_dim: int = 2
) -> FlagComplex:
  """Returns the Vietoris-Rips complex with edges d[i, j] < beta (strict)."""
  if not beta > 0:
    raise ValueError(f"Rips scale beta must be positive, got {beta}.")
  edges = np.argwhere(np.triu(metric.d < beta, 1))
  complex_ = flag_complex(metric.n, edges, max_dim)
  logging.info(
      "Rips complex at beta=%g has simplex counts %s.", beta, complex_.counts
  )
  return complex_


def barycentric_subdivision(complex_: FlagComplex) -> FlagComplex:
  """Returns the order complex of the face poset of `complex_`.

  Vertex v of the subdivision is the v-th simplex of the input in canonical
  order: dimension-major, then lexicographic.
  """
  offsets = np.cumsum((0,) + complex_.counts)
  index = {}
  for k in range(complex_.max_dim + 1):
    for i, simplex in enumerate(complex_.simplices[k].tolist()):
      index[tuple(simplex)] = int(offsets[k]) + i
  edges = []
  for k in range(1, complex_.max_dim + 1):
    for simplex in complex_.simplices[k].tolist():
      top = index[tuple(simplex)]
      for size in range(1, k + 1):
        for face in itertools.combinations(simplex, size):
          edges.append((index[face], top))
  return flag_complex(int(offsets[-1]), edges, complex_.max_dim)


def euler_characteristic(complex_: FlagComplex) -> int:
  """Alternating sum of simplex counts up to max_dim."""
  return sum((-1) ** k * count for k, count in enumerate(complex_.counts))


def collapse_edges(
    complex_: FlagComplex,
    metric: geometry.FiniteMetricSpace | None = None,
    max_passes: int = 10,
) -> FlagComplex:
  """Removes dominated edges and re-completes the flag complex.

  An edge {a, b} is dominated by a vertex w outside it when the closed common
  neighborhood N[a] & N[b] lies inside N[w]. Removing a dominated edge from a
  flag complex is a collapse, so the homotopy type and Betti numbers are
  unchanged. Passes run until no edge is removed or `max_passes` is reached.

  Args:
    complex_: the complex to reduce.
    metric: if given, edges are visited longest first.
    max_passes: upper bound on sweeps over the remaining edges.

  Returns:
    A flag complex with the same vertices and max_dim on the reduced graph.
  """
  adj = complex_.adjacency()
  np.fill_diagonal(adj, True)
  edges = complex_.edges
  if metric is not None:
    lengths = metric.d[edges[:, 0], edges[:, 1]]
    edges = edges[np.lexsort((edges[:, 1], edges[:, 0], -lengths))]
  else:
    edges = edges[::-1]
  alive = np.ones(len(edges), dtype=bool)
  for pass_index in range(max_passes):
    removed = 0
    for e in np.flatnonzero(alive):
      a, b = edges[e]
      common = np.flatnonzero(adj[a] & adj[b])
      candidates = common[(common != a) & (common != b)]
      if not len(candidates):
        continue
      covers = np.all(adj[np.ix_(candidates, common)], axis=1)
      if covers.any():
        adj[a, b] = adj[b, a] = False
        alive[e] = False
        removed += 1
    logging.info(
        "Edge collapse pass %d removed %d edges, %d remain.",
        pass_index,
        removed,
        int(alive.sum()),
    )
    if not removed:
      break
  return flag_complex(complex_.n_vertices, edges[alive], complex_.max_dim)
