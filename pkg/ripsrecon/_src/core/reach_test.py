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

"""Tests for reach."""

import math

from absl.testing import absltest
from absl.testing import parameterized
import numpy as np
from ripsrecon._src.core import geometry
from ripsrecon._src.core import reach
from ripsrecon._src.core import shapes
from ripsrecon._src.core import test_utils

_DEPTHS = (0.1, 0.05, 0.02, 0.01, 0.004)


def _cusp_gradient(r: float, d: float) -> float:
  """Gradient norm on a cusp bisector of the star at depth d."""
  return math.sqrt(2 * r * d + d * d) / (r + d)


class DistanceFieldTest(absltest.TestCase):

  def test_on_the_cloud(self):
    cloud = geometry.make_point_cloud([(0, 0), (1, 0), (5, 5)])
    radius, gamma = reach.distance_field(cloud, np.array([1.0, 0.0]))
    self.assertEqual(radius, 0.0)
    np.testing.assert_array_equal(gamma, [1])

  def test_equidistant(self):
    cloud = geometry.make_point_cloud([(-1, 0), (1, 0)])
    radius, gamma = reach.distance_field(cloud, np.array([0.0, 2.0]))
    self.assertAlmostEqual(radius, math.sqrt(5))
    np.testing.assert_array_equal(gamma, [0, 1])

  def test_shape_mismatch_raises(self):
    cloud = geometry.make_point_cloud([(0, 0)])
    with self.assertRaisesRegex(ValueError, "dimension"):
      reach.distance_field(cloud, np.zeros(3))


class GradientNormTest(parameterized.TestCase):

  def test_unique_nearest_point(self):
    cloud = geometry.make_point_cloud([(0, 0), (3, 0)])
    self.assertEqual(reach.gradient_norm(cloud, np.array([0.5, 0.5])), 1.0)

  @parameterized.parameters(0.1, 0.5, 2.0)
  def test_two_nearest_points(self, height):
    cloud = geometry.make_point_cloud([(-1, 0), (1, 0)])
    self.assertAlmostEqual(
        reach.gradient_norm(cloud, np.array([0.0, height])),
        height / math.sqrt(1 + height**2),
    )

  def test_circumcenter_is_critical(self):
    angles = np.pi / 2 + 2 * np.pi / 3 * np.arange(3)
    cloud = geometry.PointCloud(np.stack([np.cos(angles), np.sin(angles)], 1))
    self.assertAlmostEqual(reach.gradient_norm(cloud, np.zeros(2)), 0.0)

  def test_on_the_cloud_raises(self):
    cloud = geometry.make_point_cloud([(0, 0), (3, 0)])
    with self.assertRaisesRegex(ValueError, "undefined"):
      reach.gradient_norm(cloud, np.zeros(2))

  def test_in_unit_interval(self):
    cloud = test_utils.random_cloud(seed=0, n=50)
    generator = np.random.default_rng(1)
    for z in generator.uniform(-0.5, 1.5, size=(500, 2)):
      value = reach.gradient_norm(cloud, z)
      self.assertBetween(value, 0.0, 1.0)


class NearestHullPointTest(absltest.TestCase):

  def test_vertex_edge_and_interior(self):
    triangle = np.array([[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]])
    np.testing.assert_allclose(
        reach.nearest_hull_point(np.array([-1.0, -1.0]), triangle), [0, 0]
    )
    np.testing.assert_allclose(
        reach.nearest_hull_point(np.array([1.0, -1.0]), triangle), [1, 0]
    )
    np.testing.assert_allclose(
        reach.nearest_hull_point(np.array([0.5, 0.5]), triangle), [0.5, 0.5]
    )

  def test_iterative_projection_is_near_optimal(self):
    generator = np.random.default_rng(2)
    for _ in range(10):
      points = generator.random((12, 2))
      z = generator.uniform(-1.0, 2.0, size=2)
      # pylint: disable-next=protected-access
      exact = reach._nearest_hull_point_exact(z, points)
      iterative = reach.nearest_hull_point(z, points)
      self.assertLessEqual(
          np.linalg.norm(z - iterative), np.linalg.norm(z - exact) + 1e-3
      )


class CriticalFunctionTest(absltest.TestCase):

  def test_circle_has_no_small_gradients(self):
    cloud, _ = geometry.sample_shape(shapes.Circle(), 4000)
    table = reach.critical_function_estimate(cloud, _DEPTHS, n_probe=200)
    for row in table.rows:
      self.assertGreaterEqual(row.chi_estimate, 0.95, msg=row)
      self.assertGreater(row.n_probes, 0)
    self.assertEqual(table.mu_reach_estimate(0.5), math.inf)

  def test_star_gradients_vanish_at_cusps(self):
    cloud, _ = geometry.sample_shape(shapes.NinjaStar(1.0), 40_000)
    table = reach.critical_function_estimate(cloud, _DEPTHS, n_probe=200)
    chi = [row.chi_estimate for row in table.rows]
    self.assertTrue(all(a > b for a, b in zip(chi, chi[1:])), chi)
    self.assertLess(chi[-1], 0.11)
    self.assertAlmostEqual(chi[0], _cusp_gradient(1.0, 0.1), delta=0.01)
    self.assertEqual(table.mu_reach_estimate(0.25), 0.004)

  def test_no_probes(self):
    cloud = geometry.make_point_cloud([(0, 0), (1, 0)])
    table = reach.critical_function_estimate(cloud, [0.1], n_probe=0)
    self.assertTrue(math.isnan(table.rows[0].chi_estimate))
    self.assertEqual(table.rows[0].n_probes, 0)
    self.assertEqual(table.mu_reach_estimate(0.5), math.inf)

  def test_same_seed_same_table(self):
    cloud = test_utils.random_cloud(seed=3, n=200)
    self.assertEqual(
        reach.critical_function_estimate(cloud, [0.05], n_probe=100, seed=9),
        reach.critical_function_estimate(cloud, [0.05], n_probe=100, seed=9),
    )

  def test_nonpositive_depth_raises(self):
    cloud = test_utils.random_cloud(seed=3, n=20)
    with self.assertRaisesRegex(ValueError, "must be positive"):
      reach.critical_function_estimate(cloud, [0.1, 0.0], n_probe=10)

  def test_mu_reach_estimate(self):
    table = reach.CriticalFunctionTable((
        reach.CriticalFunctionRow(0.1, 0.5, 10),
        reach.CriticalFunctionRow(0.05, 0.3, 10),
        reach.CriticalFunctionRow(0.02, math.nan, 0),
        reach.CriticalFunctionRow(0.01, 0.1, 10),
    ))
    self.assertEqual(table.mu_reach_estimate(0.35), 0.01)
    self.assertEqual(table.mu_reach_estimate(0.05), math.inf)


if __name__ == "__main__":
  absltest.main()
