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

"""Tests for geometry."""

import math

from absl.testing import absltest
from absl.testing import parameterized
import numpy as np
from ripsrecon._src.core import geometry
from ripsrecon._src.core import invariants
from ripsrecon._src.core import shapes


class PointCloudTest(absltest.TestCase):

  def test_make_point_cloud(self):
    cloud = geometry.make_point_cloud([(0, 0), (1, 0)])
    self.assertEqual(cloud.n, 2)
    self.assertEqual(cloud.dim, 2)
    self.assertLen(cloud, 2)

  def test_make_point_cloud_dimension_mismatch(self):
    with self.assertRaisesRegex(ValueError, "Dimension mismatch"):
      geometry.make_point_cloud([(0, 0), (1, 0, 0)])

  def test_make_point_cloud_non_finite(self):
    with self.assertRaisesRegex(ValueError, "Non-finite"):
      geometry.make_point_cloud([(math.nan, 0)])

  def test_make_point_cloud_empty(self):
    with self.assertRaisesRegex(ValueError, "nonempty"):
      geometry.make_point_cloud([])

  def test_points_are_read_only(self):
    cloud = geometry.make_point_cloud([(0, 0)])
    with self.assertRaises(ValueError):
      cloud.points[0, 0] = 1.0


class MetricTest(absltest.TestCase):

  def test_euclidean_metric_345(self):
    cloud = geometry.make_point_cloud([(0, 0), (3, 4)])
    metric = geometry.euclidean_metric(cloud)
    self.assertEqual(metric.d[0, 1], 5.0)
    self.assertEqual(metric.d[1, 0], 5.0)

  def test_euclidean_metric_single_point(self):
    metric = geometry.euclidean_metric(geometry.make_point_cloud([(2, 3)]))
    np.testing.assert_array_equal(metric.d, np.zeros((1, 1)))

  def test_euclidean_metric_square(self):
    cloud = geometry.make_point_cloud([(0, 0), (1, 0), (1, 1), (0, 1)])
    metric = geometry.euclidean_metric(cloud)
    upper = sorted(metric.d[np.triu_indices(4, 1)])
    np.testing.assert_allclose(upper, [1, 1, 1, 1, math.sqrt(2), math.sqrt(2)])

  def test_make_metric_space_rejects_triangle_violation(self):
    with self.assertRaisesRegex(ValueError, "Triangle inequality"):
      geometry.make_metric_space([[0, 1, 3], [1, 0, 1], [3, 1, 0]])

  def test_metric_space_rejects_asymmetry(self):
    with self.assertRaisesRegex(ValueError, "not symmetric"):
      geometry.FiniteMetricSpace(np.array([[0.0, 1.0], [2.0, 0.0]]))

  def test_metric_space_rejects_nonzero_diagonal(self):
    with self.assertRaisesRegex(ValueError, "diagonal"):
      geometry.FiniteMetricSpace(np.array([[1.0, 1.0], [1.0, 0.0]]))


class DeltaParameterTest(parameterized.TestCase):

  @parameterized.parameters(
      (math.pi / 2, 1.0, math.pi / 4),
      (0.3, 0.0, 0.3),
      (10.0, 4.0, math.pi / 8),
      (0.5, -1.0, 0.5),
  )
  def test_delta_parameter(self, rho, kappa, expected):
    self.assertAlmostEqual(geometry.delta_parameter(rho, kappa), expected)

  @parameterized.parameters(0.0, -1.0)
  def test_nonpositive_rho_raises(self, rho):
    with self.assertRaisesRegex(ValueError, "must be positive"):
      geometry.delta_parameter(rho, 1.0)

  def test_delta_parameter_at_most_rho(self):
    for rho in (0.1, 1.0, 5.0):
      for kappa in (-2.0, 0.0, 0.5, 3.0):
        self.assertLessEqual(geometry.delta_parameter(rho, kappa), rho)
        if kappa <= 0:
          self.assertEqual(geometry.delta_parameter(rho, kappa), rho)


class SampleShapeTest(absltest.TestCase):

  def test_circle_grid(self):
    cloud, params = geometry.sample_shape(shapes.Circle(), 4, mode="grid")
    np.testing.assert_allclose(
        params, [0, math.pi / 2, math.pi, 3 * math.pi / 2]
    )
    np.testing.assert_allclose(
        cloud.points, [[1, 0], [0, 1], [-1, 0], [0, -1]], atol=1e-15
    )

  def test_single_point_grid(self):
    shape = shapes.NinjaStar()
    cloud, params = geometry.sample_shape(shape, 1, mode="grid")
    np.testing.assert_array_equal(params, [0.0])
    np.testing.assert_allclose(cloud.points, shape.sample_at(np.zeros(1)))

  def test_uniform_is_deterministic(self):
    shape = shapes.NinjaStar()
    first, _ = geometry.sample_shape(shape, 400, mode="uniform", seed=7)
    second, _ = geometry.sample_shape(shape, 400, mode="uniform", seed=7)
    other, _ = geometry.sample_shape(shape, 400, mode="uniform", seed=8)
    np.testing.assert_array_equal(first.points, second.points)
    self.assertFalse(np.array_equal(first.points, other.points))

  def test_uniform_params_in_range(self):
    shape = shapes.Circle(2.0)
    _, params = geometry.sample_shape(shape, 1000, mode="uniform", seed=3)
    self.assertTrue(np.all(params >= 0))
    self.assertTrue(np.all(params < shape.total_length))

  def test_unknown_mode_raises(self):
    with self.assertRaisesRegex(ValueError, "Unknown sample mode"):
      geometry.sample_shape(shapes.Circle(), 4, mode="poisson")

  def test_nonpositive_n_raises(self):
    with self.assertRaisesRegex(ValueError, "positive"):
      geometry.sample_shape(shapes.Circle(), 0)


class PerturbTest(absltest.TestCase):

  def setUp(self):
    super().setUp()
    self._cloud, _ = geometry.sample_shape(shapes.Circle(), 200)

  def test_zero_noise_is_identity(self):
    np.testing.assert_array_equal(
        geometry.perturb(self._cloud, 0.0, seed=1).points, self._cloud.points
    )

  def test_displacements_below_eta(self):
    perturbed = geometry.perturb(self._cloud, 0.01, seed=1)
    displacement = np.linalg.norm(perturbed.points - self._cloud.points, axis=1)
    self.assertLess(displacement.max(), 0.01)
    self.assertLess(invariants.hausdorff_distance(self._cloud, perturbed), 0.01)

  def test_same_seed_is_bit_identical(self):
    np.testing.assert_array_equal(
        geometry.perturb(self._cloud, 0.05, seed=11).points,
        geometry.perturb(self._cloud, 0.05, seed=11).points,
    )

  def test_negative_eta_raises(self):
    with self.assertRaisesRegex(ValueError, "nonnegative"):
      geometry.perturb(self._cloud, -0.1)


if __name__ == "__main__":
  absltest.main()
