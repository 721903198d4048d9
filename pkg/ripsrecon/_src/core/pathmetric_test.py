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

"""Tests for pathmetric."""

import math

from absl.testing import absltest
from absl.testing import parameterized
import numpy as np
from ripsrecon._src.core import geometry
from ripsrecon._src.core import pathmetric
from ripsrecon._src.core import shapes
from ripsrecon._src.core import test_utils
from scipy.sparse import csgraph


def _square_circle() -> geometry.PointCloud:
  cloud, _ = geometry.sample_shape(shapes.Circle(), 4)
  return cloud


def _connectivity_threshold(cloud: geometry.PointCloud) -> float:
  """Longest edge of the Euclidean minimum spanning tree."""
  tree = csgraph.minimum_spanning_tree(geometry.euclidean_metric(cloud).d)
  return float(tree.max())


def _random_curve_trial(seed: int):
  """Draws a shape, a grid reference and a sample meeting the pairing bound."""
  generator = np.random.default_rng(seed)
  shape = [
      shapes.Circle(float(generator.uniform(0.5, 2.0))),
      shapes.Segment(float(generator.uniform(0.5, 3.0))),
      shapes.NinjaStar(float(generator.uniform(0.5, 1.5))),
      shapes.FigureEight(float(generator.uniform(0.3, 1.0))),
  ][seed % 4]
  n = int(generator.integers(20, 61))
  spacing = shape.total_length / n
  xi = float(generator.uniform(0.1, 0.9))
  epsilon = spacing / xi * (1.5 + float(generator.random()))
  eta = (0.5 * xi * epsilon - 0.5 * spacing) * float(generator.random())
  reference, params = geometry.sample_shape(shape, n)
  sample = geometry.perturb(reference, eta, seed=seed)
  return shape, params, sample, xi, epsilon


class EpsilonGraphTest(absltest.TestCase):

  def test_single_edge(self):
    cloud = geometry.make_point_cloud([(0, 0), (1, 0)])
    graph = pathmetric.build_epsilon_graph(cloud, 1.5)
    np.testing.assert_array_equal(graph.edges, [[0, 1]])
    np.testing.assert_array_equal(graph.weights, [1.0])

  def test_threshold_is_strict(self):
    cloud = geometry.make_point_cloud([(0, 0), (1, 0)])
    self.assertEmpty(pathmetric.build_epsilon_graph(cloud, 1.0))

  def test_square(self):
    graph = pathmetric.build_epsilon_graph(_square_circle(), 1.5)
    np.testing.assert_array_equal(graph.edges, [[0, 1], [0, 3], [1, 2], [2, 3]])
    np.testing.assert_allclose(graph.weights, [math.sqrt(2)] * 4)

  def test_nonpositive_epsilon_raises(self):
    with self.assertRaisesRegex(ValueError, "must be positive"):
      pathmetric.build_epsilon_graph(_square_circle(), 0.0)


class PathMetricTest(absltest.TestCase):

  def test_square(self):
    metric = pathmetric.path_metric(_square_circle(), 1.5)
    self.assertAlmostEqual(metric.d[0, 2], 2 * math.sqrt(2))
    self.assertAlmostEqual(metric.d[0, 1], math.sqrt(2))
    np.testing.assert_array_equal(np.diagonal(metric.d), 0)

  def test_disconnected_raises(self):
    cloud = geometry.make_point_cloud([(0, 0), (3, 0)])
    with self.assertRaises(pathmetric.DisconnectedGraphError) as raised:
      pathmetric.path_metric(cloud, 1.0)
    self.assertIsInstance(raised.exception, ValueError)
    self.assertEqual(raised.exception.num_components, 2)
    self.assertEqual(
        {raised.exception.vertex_a, raised.exception.vertex_b}, {0, 1}
    )

  def test_coincident_points(self):
    cloud = geometry.make_point_cloud([(0, 0), (1, 0), (0, 0), (2, 0)])
    metric = pathmetric.path_metric(cloud, 1.5)
    self.assertEqual(metric.d[0, 2], 0.0)
    self.assertAlmostEqual(metric.d[2, 3], 2.0)
    self.assertAlmostEqual(metric.d[0, 3], 2.0)

  def test_single_point(self):
    cloud = geometry.make_point_cloud([(4, 2)])
    np.testing.assert_array_equal(
        pathmetric.path_metric(cloud, 0.1).d, np.zeros((1, 1))
    )

  def test_epsilon_beyond_diameter_is_euclidean(self):
    cloud = test_utils.random_cloud(seed=3, n=100)
    np.testing.assert_allclose(
        pathmetric.path_metric(cloud, 2.0).d,
        geometry.euclidean_metric(cloud).d,
        atol=1e-12,
    )

  def test_grid_neighbors_are_chords(self):
    cloud, _ = geometry.sample_shape(shapes.Circle(), 100)
    d_eps = pathmetric.path_metric(cloud, 0.1).d
    chord = geometry.euclidean_metric(cloud).d
    for i in range(100):
      j = (i + 1) % 100
      self.assertAlmostEqual(d_eps[i, j], chord[i, j], places=12)
      # Two grid steps exceed epsilon and need a detour.
      k = (i + 2) % 100
      self.assertGreater(d_eps[i, k], chord[i, k])

  def test_random_clouds_give_valid_metrics(self):
    for seed in range(20):
      cloud = test_utils.random_cloud(seed, n=40)
      epsilon = 1.01 * _connectivity_threshold(cloud)
      metric = pathmetric.path_metric(cloud, epsilon)
      test_utils.assert_valid_metric(metric)
      self.assertTrue(
          np.all(metric.d >= geometry.euclidean_metric(cloud).d - 1e-12)
      )


class MonotonicityTest(absltest.TestCase):

  def test_square(self):
    report = pathmetric.check_monotonicity(_square_circle(), 1.5, 2.5)
    self.assertTrue(report.passed)
    self.assertEqual(report.value, 0.0)
    self.assertAlmostEqual(
        report.details["max_decrease"], 2 * math.sqrt(2) - 2
    )

  def test_equal_scales(self):
    report = pathmetric.check_monotonicity(_square_circle(), 1.5, 1.5)
    self.assertTrue(report.passed)
    self.assertEqual(report.details["max_decrease"], 0.0)

  def test_reversed_scales_raise(self):
    with self.assertRaisesRegex(ValueError, "eps1 <= eps2"):
      pathmetric.check_monotonicity(_square_circle(), 2.5, 1.5)

  def test_random_trials(self):
    generator = np.random.default_rng(0)
    for seed in range(1000):
      cloud = test_utils.random_cloud(seed, n=int(generator.integers(5, 41)))
      eps1 = 1.01 * _connectivity_threshold(cloud)
      eps2 = eps1 * (1 + float(generator.random()))
      report = pathmetric.check_monotonicity(cloud, eps1, eps2)
      self.assertTrue(report.passed, msg=f"seed {seed}: {report}")

  def test_adding_a_point_never_increases_distances(self):
    for seed in range(50):
      cloud = test_utils.random_cloud(seed, n=30)
      epsilon = 1.01 * _connectivity_threshold(cloud)
      graph = pathmetric.build_epsilon_graph(cloud, epsilon)
      i, j = graph.edges[seed % len(graph)]
      midpoint = 0.5 * (cloud.points[i] + cloud.points[j])
      larger = geometry.PointCloud(np.vstack([cloud.points, midpoint]))
      before = pathmetric.path_metric(cloud, epsilon).d
      after = pathmetric.path_metric(larger, epsilon).d[:30, :30]
      self.assertTrue(np.all(after <= before + 1e-12))


class ComparisonTest(absltest.TestCase):

  def test_noise_free_circle(self):
    shape = shapes.Circle()
    cloud, params = geometry.sample_shape(shape, 100)
    report = pathmetric.check_comparison(shape, params, cloud, 0.5, 0.1)
    self.assertTrue(report.passed)
    self.assertLessEqual(report.details["lower_max_violation"], 1e-12)

  def test_noisy_circle(self):
    shape = shapes.Circle()
    reference, params = geometry.sample_shape(shape, 500)
    sample = geometry.perturb(reference, 0.02, seed=0)
    report = pathmetric.check_comparison(shape, params, sample, 0.5, 0.1)
    self.assertTrue(report.passed)
    self.assertGreater(report.details["upper_min_slack"], 0)

  def test_pairing_violation_raises(self):
    shape = shapes.Circle()
    reference, params = geometry.sample_shape(shape, 500)
    sample = geometry.perturb(reference, 0.03, seed=0)
    with self.assertRaisesRegex(ValueError, "Pairing offset"):
      pathmetric.check_comparison(shape, params, sample, 0.5, 0.1)

  def test_xi_out_of_range_raises(self):
    shape = shapes.Circle()
    cloud, params = geometry.sample_shape(shape, 100)
    with self.assertRaisesRegex(ValueError, "xi must be"):
      pathmetric.check_comparison(shape, params, cloud, 1.0, 0.1)

  def test_random_trials(self):
    for seed in range(1000):
      shape, params, sample, xi, epsilon = _random_curve_trial(seed)
      report = pathmetric.check_comparison(shape, params, sample, xi, epsilon)
      self.assertTrue(report.passed, msg=f"seed {seed}: {report}")


class StabilityTest(absltest.TestCase):

  def test_noisy_circle(self):
    shape = shapes.Circle()
    reference, params = geometry.sample_shape(shape, 500)
    sample = geometry.perturb(reference, 0.009, seed=0)
    report = pathmetric.check_stability(shape, params, sample, 0.2, 0.1)
    self.assertTrue(report.passed)
    self.assertLessEqual(report.details["max_long_range_ratio"], 1.2 + 1e-6)

  def test_noise_free(self):
    shape = shapes.NinjaStar()
    cloud, params = geometry.sample_shape(shape, 200)
    self.assertTrue(
        pathmetric.check_stability(shape, params, cloud, 0.2, 0.1).passed
    )

  def test_two_points(self):
    shape = shapes.Segment(1.0)
    params = np.array([0.0, 0.05])
    cloud = geometry.PointCloud(shape.sample_at(params))
    report = pathmetric.check_stability(shape, params, cloud, 0.5, 0.1)
    self.assertTrue(report.passed)
    self.assertEqual(report.details["max_long_range_ratio"], 1.0)

  def test_random_trials(self):
    for seed in range(1000):
      shape, params, sample, xi, epsilon = _random_curve_trial(seed)
      report = pathmetric.check_stability(shape, params, sample, xi, epsilon)
      self.assertTrue(report.passed, msg=f"seed {seed}: {report}")


class ConvergenceTest(parameterized.TestCase):

  @parameterized.parameters(0.05, 0.2)
  def test_segment_is_exact(self, epsilon):
    shape = shapes.Segment(1.0)
    _, params = geometry.sample_shape(shape, 50)
    sup_error, _ = pathmetric.path_metric_sup_error(shape, params, epsilon)
    self.assertLess(sup_error, 1e-12)

  def test_large_epsilon_on_circle(self):
    shape = shapes.Circle()
    _, params = geometry.sample_shape(shape, 100)
    sup_error, (i, j) = pathmetric.path_metric_sup_error(shape, params, 2.5)
    self.assertAlmostEqual(sup_error, math.pi - 2, places=9)
    self.assertEqual(abs(i - j), 50)

  def test_circle_errors_decrease(self):
    rows = pathmetric.convergence_sweep(
        shapes.Circle(), 2000, [0.4, 0.2, 0.1, 0.05]
    )
    errors = [row.sup_error for row in rows]
    self.assertTrue(all(a > b for a, b in zip(errors, errors[1:])), errors)
    self.assertLessEqual(errors[-1], 0.01)
    self.assertTrue(all(row.error is None for row in rows))

  def test_disconnected_cell_is_recorded(self):
    rows = pathmetric.convergence_sweep(shapes.Segment(1.0), 10, [0.5, 0.05])
    self.assertIsNone(rows[0].error)
    self.assertLess(rows[0].sup_error, 1e-12)
    self.assertIn("not joined", rows[1].error)
    self.assertTrue(math.isnan(rows[1].sup_error))


if __name__ == "__main__":
  absltest.main()
