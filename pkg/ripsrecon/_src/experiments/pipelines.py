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

"""Reconstruction pipelines that turn a config into a certified report.

Every pipeline evaluates its hypotheses as named checks. A failing hypothesis
does not stop the run (unless the config asks to abort): the report is marked
"hypothesis-fail" and still carries everything that could be computed, so a
pipeline doubles as a falsification harness.
"""

import contextlib
import dataclasses
import math
import time
from typing import Any, Iterator, Mapping, Sequence

from absl import logging
from etils import epath
import numpy as np
from ripsrecon._src.core import complexes
from ripsrecon._src.core import geometry
from ripsrecon._src.core import homology
from ripsrecon._src.core import invariants
from ripsrecon._src.core import pathmetric
from ripsrecon._src.core import reports
from ripsrecon._src.core import serialization
from ripsrecon._src.experiments import config as config_lib

BETTI_CERTIFIED = "Betti-certified"
BETTI_MISMATCH = "Betti-mismatch"
HYPOTHESIS_FAIL = "hypothesis-fail"
CLOSENESS_CERTIFIED = "closeness-certified"
CLOSENESS_FAIL = "closeness-fail"

REPORT_FILE = "report.json"
COMPLEX_FILE = "complex.txt"
COLLAPSED_COMPLEX_FILE = "collapsed_complex.txt"
RIPS_SKELETON_FILE = "rips_skeleton.txt"


@dataclasses.dataclass(frozen=True)
class Report:
  """Outcome of one pipeline run.

  Attributes:
    pipeline: name of the pipeline.
    config: JSON echo of the config(s).
    hypotheses: the checked theorem hypotheses.
    conclusions: checks that are the result of the run rather than its
      premise, e.g. a closeness certificate.
    betti_observed: Betti profile of the emitted complex, if computed.
    betti_expected: the profile it is compared against.
    certification: label of the conclusion that may be drawn.
    passed: all hypotheses and conclusions hold and Betti profiles match.
    runtimes: wall-clock seconds per stage.
    details: further named quantities.
  """

  pipeline: str
  config: Mapping[str, Any]
  hypotheses: tuple[reports.CheckReport, ...]
  conclusions: tuple[reports.CheckReport, ...]
  betti_observed: homology.BettiProfile | None
  betti_expected: tuple[int, ...] | None
  certification: str
  passed: bool
  runtimes: Mapping[str, float]
  details: Mapping[str, Any]

  @property
  def failed_hypotheses(self) -> list[str]:
    return [check.quantity for check in self.hypotheses if not check.passed]

  def to_json(self, include_runtimes: bool = True) -> dict[str, Any]:
    data = {
        "pipeline": self.pipeline,
        "config": dict(self.config),
        "hypotheses": [check.to_json() for check in self.hypotheses],
        "conclusions": [check.to_json() for check in self.conclusions],
        "betti_observed": (
            self.betti_observed.to_json() if self.betti_observed else None
        ),
        "betti_expected": (
            list(self.betti_expected)
            if self.betti_expected is not None
            else None
        ),
        "certification": self.certification,
        "pass": self.passed,
        "details": dict(self.details),
    }
    if include_runtimes:
      data["runtimes"] = dict(self.runtimes)
    return data


def betti_match(observed: Sequence[int], expected: Sequence[int]) -> bool:
  """Whether `observed` agrees with `expected` padded with zeros.

  Entries of `expected` beyond the observed range must be zero, since they
  cannot be confirmed.
  """
  n = len(observed)
  padded = tuple(expected[:n]) + (0,) * max(0, n - len(expected))
  return tuple(observed) == padded and not any(expected[n:])


def _strictly_below(name: str, value: float, bound: float, **details):
  return reports.CheckReport(
      quantity=name,
      value=float(value),
      bound=float(bound),
      witness_pair=None,
      tolerance=0.0,
      passed=bool(value < bound),
      details={"strict": True, **details},
  )


def _at_most(name: str, value: float, bound: float, **details):
  return reports.CheckReport.upper_bound(
      name,
      value=value,
      bound=bound,
      witness_pair=None,
      tolerance=0.0,
      **details,
  )


class _Run:
  """Accumulates checks, runtimes and details of a pipeline run."""

  def __init__(self, pipeline: str, abort_on_failure: bool):
    self.pipeline = pipeline
    self.abort_on_failure = abort_on_failure
    self.hypotheses: list[reports.CheckReport] = []
    self.conclusions: list[reports.CheckReport] = []
    self.runtimes: dict[str, float] = {}
    self.details: dict[str, Any] = {}

  def hypothesis(self, check: reports.CheckReport):
    logging.info(
        "Hypothesis %s: value=%g bound=%g pass=%s.",
        check.quantity,
        check.value,
        check.bound,
        check.passed,
    )
    self.hypotheses.append(check)
    if not check.passed and self.abort_on_failure:
      raise config_lib.HypothesisError(check.quantity, check.value, check.bound)

  def conclusion(self, check: reports.CheckReport):
    logging.info("Conclusion %s: pass=%s.", check.quantity, check.passed)
    self.conclusions.append(check)

  @property
  def hypotheses_hold(self) -> bool:
    return all(check.passed for check in self.hypotheses)

  @contextlib.contextmanager
  def stage(self, name: str) -> Iterator[None]:
    start = time.perf_counter()
    try:
      yield
    finally:
      self.runtimes[name] = time.perf_counter() - start

  def report(
      self,
      config: Mapping[str, Any],
      betti_observed: homology.BettiProfile | None = None,
      betti_expected: Sequence[int] | None = None,
      certification: str | None = None,
  ) -> Report:
    betti_ok = True
    if betti_expected is not None:
      betti_ok = betti_observed is not None and betti_match(
          betti_observed.betti, betti_expected
      )
    conclusions_hold = all(check.passed for check in self.conclusions)
    if certification is None:
      if not self.hypotheses_hold:
        certification = HYPOTHESIS_FAIL
      elif betti_ok:
        certification = BETTI_CERTIFIED
      else:
        certification = BETTI_MISMATCH
    report = Report(
        pipeline=self.pipeline,
        config=config,
        hypotheses=tuple(self.hypotheses),
        conclusions=tuple(self.conclusions),
        betti_observed=betti_observed,
        betti_expected=(
            tuple(int(b) for b in betti_expected)
            if betti_expected is not None
            else None
        ),
        certification=certification,
        passed=self.hypotheses_hold and conclusions_hold and betti_ok,
        runtimes=dict(self.runtimes),
        details=dict(self.details),
    )
    logging.info(
        "%s run finished: %s, pass=%s.",
        self.pipeline,
        report.certification,
        report.passed,
    )
    return report


def _scale_hypotheses(
    run: _Run, xi: float, beta: float, delta_cap: float
):
  run.hypothesis(_at_most("xi_range", xi, config_lib.DEFAULT_XI))
  run.hypothesis(
      _strictly_below(
          "beta_cap", beta, delta_cap / (1 + 2 * xi), delta_cap=delta_cap
      )
  )


def _restricted_distortion_check(
    shape: geometry.ShapeDescriptor,
    ref_params: np.ndarray,
    intrinsic: geometry.FiniteMetricSpace,
    config: config_lib.ExperimentConfig,
) -> reports.CheckReport:
  """Checks delta^eps_{2 xi beta} of the reference against 1 + xi/(1 + xi)."""
  R = 2 * config.xi * config.beta  # pylint: disable=invalid-name
  bound = 1 + config.xi / (1 + config.xi)
  cloud = geometry.PointCloud(shape.sample_at(ref_params))
  try:
    relaxed = pathmetric.path_metric(cloud, config.epsilon)
    ratio, witness = invariants.distortion_ratio(intrinsic, relaxed, R)
  except ValueError as e:
    logging.warning("Restricted distortion is undefined: %s", e)
    return reports.CheckReport(
        quantity="restricted_distortion",
        value=math.inf,
        bound=bound,
        witness_pair=None,
        tolerance=0.0,
        passed=False,
        details={"R": R, "error": str(e)},
    )
  return reports.CheckReport.upper_bound(
      "restricted_distortion",
      value=ratio,
      bound=bound,
      witness_pair=witness,
      tolerance=geometry.default_tolerance(bound),
      R=R,
  )


def hausdorff_upper_bound(
    shape: geometry.ShapeDescriptor,
    reference: geometry.PointCloud,
    unperturbed: geometry.PointCloud,
    sample: geometry.PointCloud,
    sample_mode: str,
) -> tuple[float, dict[str, float]]:
  """Upper bound on d_H(X, S) from a grid reference of X.

  Every point of S lies within its noise displacement of X. A point of X is
  within the grid cover radius L / (2 n_ref) of a reference point, and so
  within that plus d_H(reference, S) of S; for a grid sample it is also
  within L / (2 n_sample) of an unperturbed sample point. Open shapes are
  grid-sampled at midpoints, so the same radii hold at their ends.

  Args:
    shape: the space X.
    reference: the grid reference net of X.
    unperturbed: the sample before perturbation.
    sample: the perturbed sample S.
    sample_mode: how `unperturbed` was drawn.

  Returns:
    The bound and the terms it is assembled from.
  """
  displacement = float(
      np.linalg.norm(sample.points - unperturbed.points, axis=1).max()
  )
  via_reference = invariants.hausdorff_distance(
      reference, sample
  ) + geometry.grid_cover_radius(shape, reference.n)
  cover = via_reference
  if sample_mode == "grid":
    cover = min(
        cover, geometry.grid_cover_radius(shape, sample.n) + displacement
    )
  terms = {
      "displacement": displacement,
      "via_reference": via_reference,
      "cover": cover,
  }
  return max(displacement, cover), terms


@dataclasses.dataclass(frozen=True)
class _Sampled:
  ref_params: np.ndarray
  reference: geometry.PointCloud
  intrinsic: geometry.FiniteMetricSpace
  sample: geometry.PointCloud
  path_metric: geometry.FiniteMetricSpace | None


def _reference_net(
    shape: geometry.ShapeDescriptor, n_ref: int
) -> tuple[np.ndarray, geometry.PointCloud, geometry.FiniteMetricSpace]:
  reference, ref_params = geometry.sample_shape(shape, n_ref, mode="grid")
  return ref_params, reference, geometry.intrinsic_metric(shape, ref_params)


def _sample_and_check(
    run: _Run, config: config_lib.ExperimentConfig
) -> _Sampled:
  """Runs the hypotheses shared by reconstruction and closeness runs."""
  shape = config.get_shape()
  with run.stage("reference"):
    ref_params, reference, intrinsic = _reference_net(shape, config.n_ref)
  _scale_hypotheses(run, config.xi, config.beta, shape.delta_cap)
  run.hypothesis(_at_most("epsilon_at_most_beta", config.epsilon, config.beta))
  budget = 0.5 * config.xi * config.epsilon
  run.hypothesis(_strictly_below("noise_budget", config.noise, budget))
  with run.stage("restricted_distortion"):
    run.hypothesis(
        _restricted_distortion_check(shape, ref_params, intrinsic, config)
    )

  with run.stage("sample"):
    unperturbed, _ = geometry.sample_shape(
        shape, config.n_sample, mode=config.sample_mode, seed=config.seed
    )
    sample = geometry.perturb(unperturbed, config.noise, seed=config.seed)
  bound, terms = hausdorff_upper_bound(
      shape, reference, unperturbed, sample, config.sample_mode
  )
  run.hypothesis(_strictly_below("hausdorff_budget", bound, budget, **terms))

  with run.stage("path_metric"):
    try:
      metric = pathmetric.path_metric(sample, config.epsilon)
      components = 1
    except pathmetric.DisconnectedGraphError as e:
      logging.warning("%s", e)
      metric, components = None, e.num_components
  run.hypothesis(_at_most("epsilon_graph_connected", components, 1))
  return _Sampled(ref_params, reference, intrinsic, sample, metric)


def rips_betti(
    metric: geometry.FiniteMetricSpace,
    beta: float,
    max_dim: int,
    collapse: bool,
) -> tuple[complexes.FlagComplex, homology.BettiProfile, dict[str, Any]]:
  """Builds R_beta of `metric` and its Betti profile.

  With `collapse`, the 1-skeleton is reduced by edge collapses before the
  cliques are enumerated, which leaves the Betti numbers unchanged. Betti
  numbers are certified up to max_dim - 1, or up to max_dim when no clique
  of dimension max_dim + 1 exists.
  """
  if collapse:
    skeleton = complexes.rips_complex(metric, beta, max_dim=1)
    reduced = complexes.collapse_edges(skeleton, metric)
    complex_ = complexes.flag_complex(metric.n, reduced.edges, max_dim)
    details = {"rips_edges": len(skeleton.edges)}
  else:
    complex_ = complexes.rips_complex(metric, beta, max_dim)
    details = {"rips_edges": len(complex_.edges)}
  up_to = max_dim if complex_.is_fully_materialized else max_dim - 1
  betti = homology.betti_numbers(complex_, up_to)
  details["simplex_counts"] = list(complex_.counts)
  details["connected_components"] = homology.connected_components(complex_)
  return complex_, betti, details


def _write_report(
    report: Report, output_dir: str | None, **artifacts: Any
) -> Report:
  """Writes artifacts and the report JSON under `output_dir`, if set."""
  if output_dir is None:
    return report
  directory = epath.Path(output_dir)
  directory.mkdir(parents=True, exist_ok=True)
  for name, value in artifacts.items():
    if value is None:
      continue
    path = directory / name
    if isinstance(value, geometry.PointCloud):
      serialization.write_cloud(path, value)
    elif isinstance(value, geometry.FiniteMetricSpace):
      serialization.write_metric(path, value)
    elif isinstance(value, complexes.FlagComplex):
      serialization.write_complex(path, value)
    elif isinstance(value, invariants.Correspondence):
      serialization.write_correspondence(path, value)
    else:
      raise ValueError(f"Cannot write artifact {name} of type {type(value)}.")
  serialization.write_json(directory / REPORT_FILE, report.to_json())
  logging.info("Wrote report to %s.", directory / REPORT_FILE)
  return report


def _complex_artifacts(
    config: config_lib.ExperimentConfig,
    metric: geometry.FiniteMetricSpace | None,
    complex_: complexes.FlagComplex | None,
) -> dict[str, Any]:
  """Names the homology complex after whether its edges were collapsed.

  A collapsed run also writes the uncollapsed 1-skeleton of R_beta, which is
  what `rips --beta --max_dim=1` rebuilds from the written metric.
  """
  if metric is None or complex_ is None:
    return {}
  if not config.collapse:
    return {COMPLEX_FILE: complex_}
  return {
      COLLAPSED_COMPLEX_FILE: complex_,
      RIPS_SKELETON_FILE: complexes.rips_complex(
          metric, config.beta, max_dim=1
      ),
  }


def run_reconstruction(config: config_lib.ExperimentConfig) -> Report:
  """Reconstructs the homotopy type of X from a noisy sample.

  Checks the hypotheses on xi, beta, epsilon, the restricted distortion of X
  and the Hausdorff distance of the sample, then builds the Rips complex of
  the sample's epsilon-path metric and compares its Betti profile with the
  shape's.

  Args:
    config: the experiment.

  Returns:
    The report; "Betti-certified" when every hypothesis holds and the Betti
    profiles agree.

  Raises:
    HypothesisError: if a hypothesis fails and the config asks to abort.
  """
  shape = config.get_shape()
  run = _Run("reconstruction", config.abort_on_hypothesis_failure)
  sampled = _sample_and_check(run, config)
  complex_, betti = None, None
  if sampled.path_metric is not None:
    with run.stage("rips_homology"):
      complex_, betti, details = rips_betti(
          sampled.path_metric, config.beta, config.max_dim, config.collapse
      )
    run.details.update(details)
  report = run.report(config.to_json(), betti, shape.expected_betti)
  return _write_report(
      report,
      config.output_dir,
      **{
          "sample.csv": sampled.sample,
          "metric.csv": sampled.path_metric,
          **_complex_artifacts(config, sampled.path_metric, complex_),
      },
  )


def run_latschev(
    config: config_lib.ExperimentConfig,
    sample_metric: geometry.FiniteMetricSpace,
    correspondence: invariants.Correspondence | None = None,
) -> Report:
  """Certifies R_beta(S) of an explicit finite metric S against X.

  X is represented by its grid net of `config.n_ref` points under the
  intrinsic metric. The hypothesis is (xi beta, beta)-closeness of the net
  and S through `correspondence`.

  Args:
    config: the experiment; its sampling fields are unused.
    sample_metric: the metric of S.
    correspondence: pairs (net index, S index); the diagonal when omitted,
      which requires S to have n_ref points.

  Returns:
    The report.
  """
  shape = config.get_shape()
  run = _Run("latschev", config.abort_on_hypothesis_failure)
  with run.stage("reference"):
    _, _, intrinsic = _reference_net(shape, config.n_ref)
  if correspondence is None:
    if sample_metric.n != intrinsic.n:
      raise ValueError(
          f"A metric on {sample_metric.n} points needs an explicit"
          f" correspondence with the {intrinsic.n}-point net."
      )
    correspondence = invariants.Correspondence.diagonal(intrinsic.n)
  _scale_hypotheses(run, config.xi, config.beta, shape.delta_cap)
  with run.stage("closeness"):
    run.hypothesis(
        invariants.check_eps_R_closeness(
            correspondence,
            intrinsic,
            sample_metric,
            config.xi * config.beta,
            config.beta,
        )
    )
    run.details["gh_upper_bound"] = invariants.gh_upper_bound(
        correspondence, intrinsic, sample_metric
    )
  with run.stage("rips_homology"):
    complex_, betti, details = rips_betti(
        sample_metric, config.beta, config.max_dim, config.collapse
    )
  run.details.update(details)
  report = run.report(config.to_json(), betti, shape.expected_betti)
  return _write_report(
      report,
      config.output_dir,
      **_complex_artifacts(config, sample_metric, complex_),
  )


def run_closeness_check(config: config_lib.ExperimentConfig) -> Report:
  """Certifies (xi beta, beta)-closeness of (X, d^L) and (S, d^eps_S).

  The correspondence pairs reference and sample points closer than
  xi epsilon / 2; the run fails, without raising, when some point has no
  partner.
  """
  run = _Run("closeness", config.abort_on_hypothesis_failure)
  sampled = _sample_and_check(run, config)
  correspondence = None
  with run.stage("closeness"):
    threshold = 0.5 * config.xi * config.epsilon
    try:
      correspondence = invariants.hausdorff_correspondence(
          sampled.reference, sampled.sample, threshold
      )
    except ValueError as e:
      logging.warning("No Hausdorff correspondence: %s", e)
      run.conclusion(
          reports.CheckReport(
              quantity="hausdorff_correspondence",
              value=math.inf,
              bound=threshold,
              witness_pair=None,
              tolerance=0.0,
              passed=False,
              details={"error": str(e)},
          )
      )
    if correspondence is not None and sampled.path_metric is not None:
      check = invariants.check_eps_R_closeness(
          correspondence,
          sampled.intrinsic,
          sampled.path_metric,
          config.xi * config.beta,
          config.beta,
      )
      run.conclusion(check)
      run.details["max_gap"] = check.value
      run.details["correspondence_size"] = len(correspondence)
  if not run.hypotheses_hold:
    certification = HYPOTHESIS_FAIL
  elif run.conclusions and all(c.passed for c in run.conclusions):
    certification = CLOSENESS_CERTIFIED
  else:
    certification = CLOSENESS_FAIL
  report = run.report(config.to_json(), certification=certification)
  return _write_report(
      report,
      config.output_dir,
      **{
          "sample.csv": sampled.sample,
          "metric.csv": sampled.path_metric,
          "correspondence.csv": correspondence,
      },
  )


def parameter_correspondence(m: int, n: int) -> invariants.Correspondence:
  """Pairs grid nets of m and n points by their relative arclength."""
  if m == n:
    return invariants.Correspondence.diagonal(n)
  rows = np.arange(m)
  cols = np.arange(n)
  pairs = np.concatenate([
      np.stack([rows, rows * n // m], axis=1),
      np.stack([cols * m // n, cols], axis=1),
  ])
  return invariants.Correspondence(m, n, np.unique(pairs, axis=0))


def run_stability(
    config_x: config_lib.ExperimentConfig,
    config_x2: config_lib.ExperimentConfig,
) -> Report:
  """Compares R_beta of two nets that are (xi beta, beta)-close.

  The nets are grids of each config's n_ref points under the intrinsic
  metric, paired by relative arclength. Scales are taken from `config_x`.
  The Betti profile of the second net is the expected profile.
  """
  shape, other = config_x.get_shape(), config_x2.get_shape()
  run = _Run("stability", config_x.abort_on_hypothesis_failure)
  with run.stage("reference"):
    _, _, d_x = _reference_net(shape, config_x.n_ref)
    _, _, d_x2 = _reference_net(other, config_x2.n_ref)
  _scale_hypotheses(
      run,
      config_x.xi,
      config_x.beta,
      min(shape.delta_cap, other.delta_cap),
  )
  correspondence = parameter_correspondence(d_x.n, d_x2.n)
  with run.stage("closeness"):
    run.hypothesis(
        invariants.check_eps_R_closeness(
            correspondence,
            d_x,
            d_x2,
            config_x.xi * config_x.beta,
            config_x.beta,
        )
    )
  with run.stage("rips_homology"):
    _, betti, details = rips_betti(
        d_x, config_x.beta, config_x.max_dim, config_x.collapse
    )
    _, betti_other, details_other = rips_betti(
        d_x2, config_x.beta, config_x.max_dim, config_x.collapse
    )
  run.details.update(details)
  run.details["other"] = {**details_other, **betti_other.to_json()}
  report = run.report(
      {"x": config_x.to_json(), "x2": config_x2.to_json()},
      betti,
      betti_other.betti,
  )
  return _write_report(report, config_x.output_dir)


def run_pipeline(
    config: config_lib.ExperimentConfig,
    sample_metric: geometry.FiniteMetricSpace | None = None,
    correspondence: invariants.Correspondence | None = None,
) -> Report:
  """Dispatches on `config.pipeline`.

  A latschev run without an explicit metric uses the epsilon-path metric of
  the config's noisy sample, paired with the net by the xi epsilon / 2
  Hausdorff correspondence. A sample that fails either gives a failed
  latschev report instead. A stability run compares `config.shape` with
  `config.other_shape`.
  """
  if config.pipeline == "reconstruction":
    return run_reconstruction(config)
  if config.pipeline == "closeness":
    return run_closeness_check(config)
  if config.pipeline == "stability":
    if config.other_shape is None:
      raise ValueError("A stability run needs other_shape.")
    other = dataclasses.replace(config, shape=config.other_shape)
    return run_stability(config, other)
  if sample_metric is None:
    try:
      sample_metric, correspondence = _sampled_latschev_input(config)
    except ValueError as e:
      return _latschev_sampling_failure(config, e)
  return run_latschev(config, sample_metric, correspondence)


def _sampled_latschev_input(
    config: config_lib.ExperimentConfig,
) -> tuple[geometry.FiniteMetricSpace, invariants.Correspondence]:
  shape = config.get_shape()
  reference, _ = geometry.sample_shape(shape, config.n_ref, mode="grid")
  unperturbed, _ = geometry.sample_shape(
      shape, config.n_sample, mode=config.sample_mode, seed=config.seed
  )
  sample = geometry.perturb(unperturbed, config.noise, seed=config.seed)
  sample_metric = pathmetric.path_metric(sample, config.epsilon)
  correspondence = invariants.hausdorff_correspondence(
      reference, sample, 0.5 * config.xi * config.epsilon
  )
  return sample_metric, correspondence


def _latschev_sampling_failure(
    config: config_lib.ExperimentConfig, error: ValueError
) -> Report:
  """Reports a sample with no path metric or no correspondence to the net."""
  logging.warning("%s", error)
  run = _Run("latschev", config.abort_on_hypothesis_failure)
  if isinstance(error, pathmetric.DisconnectedGraphError):
    check = _at_most("epsilon_graph_connected", error.num_components, 1)
  else:
    check = reports.CheckReport(
        quantity="hausdorff_correspondence",
        value=math.inf,
        bound=0.5 * config.xi * config.epsilon,
        witness_pair=None,
        tolerance=0.0,
        passed=False,
        details={"error": str(error)},
    )
  run.hypothesis(check)
  report = run.report(
      config.to_json(), None, config.get_shape().expected_betti
  )
  return _write_report(report, config.output_dir)
