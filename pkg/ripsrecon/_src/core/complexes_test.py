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

"""Tests for complexes."""

import itertools

from absl.testing import absltest
from absl.testing import parameterized
import numpy as np
from ripsrecon._src.core import complexes
from ripsrecon._src.core import geometry
from ripsrecon._src.core import homology
from ripsrecon._src.core import shapes
from ripsrecon._src.core import test_utils


def _equilateral_metric() -> geometry.FiniteMetricSpace:
  return geometry.make_metric_space([[0, 1, 1], [1, 0, 1], [1, 1, 0]])


def _hexagon_metric() -> geometry.FiniteMetricSpace:
  cloud, _ = geometry.sample_shape(shapes.Circle(), 6)
  return geometry.euclidean_metric(cloud)


def _complete_graph(n: int, max_dim: int) -> complexes.FlagComplex:
  return complexes.flag_complex(
      n, list(itertools.combinations(range(n), 2)), max_dim
  )


class RipsComplexTest(absltest.TestCase):

  def test_equilateral_above_side(self):
    complex_ = complexes.rips_complex(_equilateral_metric(), 1.1)
    self.assertEqual(complex_.counts, (3, 3, 1))
    np.testing.assert_array_equal(complex_.simplices[2], [[0, 1, 2]])

  def test_equilateral_at_side_is_discrete(self):
    complex_ = complexes.rips_complex(_equilateral_metric(), 1.0)
    self.assertEqual(complex_.counts, (3, 0, 0))

  def test_hexagon(self):
    complex_ = complexes.rips_complex(_hexagon_metric(), 1.2)
    self.assertEqual(complex_.counts, (6, 6, 0))

  def test_scale_is_strict(self):
    metric = geometry.euclidean_metric(test_utils.random_cloud(seed=0, n=20))
    for i, j in [(0, 1), (3, 7), (5, 19)]:
      complex_ = complexes.rips_complex(metric, float(metric.d[i, j]))
      self.assertNotIn((i, j), test_utils.complex_simplices(complex_))

  def test_nonpositive_beta_raises(self):
    with self.assertRaisesRegex(ValueError, "must be positive"):
      complexes.rips_complex(_equilateral_metric(), 0.0)

  def test_nested_in_beta(self):
    metric = geometry.euclidean_metric(test_utils.random_cloud(seed=1, n=25))
    smaller = complexes.rips_complex(metric, 0.3)
    larger = complexes.rips_complex(metric, 0.45)
    self.assertTrue(smaller.is_subcomplex_of(larger))
    self.assertFalse(larger.is_subcomplex_of(smaller))


class FlagComplexTest(parameterized.TestCase):

  @parameterized.parameters(
      (6, 0.5, 3), (10, 0.4, 3), (12, 0.6, 4), (8, 0.9, 7)
  )
  def test_matches_networkx_cliques(self, n, p, max_dim):
    for seed in range(10):
      edges = test_utils.random_edges(seed, n, p)
      complex_ = complexes.flag_complex(n, edges, max_dim)
      self.assertEqual(
          test_utils.complex_simplices(complex_),
          test_utils.networkx_cliques(n, edges, max_dim + 1),
      )
      test_utils.assert_faces_closed(complex_)

  def test_simplices_are_sorted(self):
    complex_ = test_utils.random_flag_complex(seed=4, n=10, p=0.6)
    for block in complex_.simplices:
      self.assertTrue(np.all(np.diff(block, axis=1) > 0))
      rows = block.tolist()
      self.assertEqual(rows, sorted(rows))

  def test_duplicate_and_loop_edges_are_dropped(self):
    complex_ = complexes.flag_complex(3, [(1, 0), (0, 1), (2, 2)], 1)
    np.testing.assert_array_equal(complex_.edges, [[0, 1]])

  def test_is_fully_materialized(self):
    random_complex = test_utils.random_flag_complex(seed=2, n=8, p=0.5)
    self.assertTrue(random_complex.is_fully_materialized)
    self.assertFalse(_complete_graph(4, 2).is_fully_materialized)
    self.assertTrue(_complete_graph(4, 3).is_fully_materialized)
    self.assertTrue(complexes.flag_complex(1, [], 0).is_fully_materialized)

  def test_top_dimension(self):
    self.assertEqual(_complete_graph(4, 3).top_dimension, 3)
    self.assertEqual(complexes.flag_complex(4, [], 2).top_dimension, 0)

  def test_simplices_are_read_only(self):
    complex_ = _complete_graph(3, 2)
    with self.assertRaises(ValueError):
      complex_.simplices[1][0, 0] = 5


class SubdivisionTest(absltest.TestCase):

  def test_single_vertex(self):
    self.assertEqual(
        complexes.barycentric_subdivision(
            complexes.flag_complex(1, [], 0)
        ).counts,
        (1,),
    )

  def test_single_edge(self):
    edge = complexes.flag_complex(2, [(0, 1)], 1)
    sd = complexes.barycentric_subdivision(edge)
    self.assertEqual(sd.counts, (3, 2))
    np.testing.assert_array_equal(sd.edges, [[0, 2], [1, 2]])

  def test_filled_triangle(self):
    sd = complexes.barycentric_subdivision(_complete_graph(3, 2))
    self.assertEqual(sd.counts, (7, 12, 6))

  def test_preserves_euler_characteristic(self):
    for seed in range(20):
      complex_ = test_utils.random_flag_complex(seed, n=7, p=0.5)
      self.assertEqual(
          complexes.euler_characteristic(
              complexes.barycentric_subdivision(complex_)
          ),
          complexes.euler_characteristic(complex_),
      )


class EulerCharacteristicTest(absltest.TestCase):

  def test_examples(self):
    self.assertEqual(complexes.euler_characteristic(_complete_graph(3, 2)), 1)
    self.assertEqual(
        complexes.euler_characteristic(
            complexes.rips_complex(_hexagon_metric(), 1.2)
        ),
        0,
    )
    self.assertEqual(
        complexes.euler_characteristic(complexes.flag_complex(2, [], 1)), 2
    )


class CollapseTest(absltest.TestCase):

  def test_hexagon_is_unchanged(self):
    complex_ = complexes.rips_complex(_hexagon_metric(), 1.2)
    collapsed = complexes.collapse_edges(complex_, _hexagon_metric())
    self.assertEqual(collapsed.counts, complex_.counts)

  def test_simplex_collapses_to_tree(self):
    collapsed = complexes.collapse_edges(_complete_graph(4, 2))
    self.assertEqual(collapsed.counts, (4, 3, 0))
    self.assertEqual(homology.betti_numbers(collapsed, 1).betti, (1, 0))

  def test_circle_keeps_betti_numbers(self):
    cloud, _ = geometry.sample_shape(shapes.Circle(), 60)
    metric = geometry.euclidean_metric(cloud)
    complex_ = complexes.rips_complex(metric, 0.5)
    collapsed = complexes.collapse_edges(complex_, metric)
    self.assertLess(collapsed.num_simplices(1), complex_.num_simplices(1))
    self.assertTrue(collapsed.is_subcomplex_of(complex_))
    self.assertEqual(homology.betti_numbers(complex_, 1).betti, (1, 1))
    self.assertEqual(homology.betti_numbers(collapsed, 1).betti, (1, 1))

  def test_random_complexes_keep_betti_numbers(self):
    for seed in range(30):
      complex_ = test_utils.random_flag_complex(seed, n=9, p=0.5)
      collapsed = complexes.collapse_edges(complex_)
      up_to = complex_.max_dim
      self.assertEqual(
          homology.betti_numbers(collapsed, up_to).betti,
          homology.betti_numbers(complex_, up_to).betti,
      )


if __name__ == "__main__":
  absltest.main()
