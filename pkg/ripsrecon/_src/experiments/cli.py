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

r"""Command line interface.

Usage:

  ripsrecon sample --shape=circle --n=1000 --output=/tmp/s.csv
  ripsrecon perturb --input=/tmp/s.csv --eta=0.003 --output=/tmp/s2.csv
  ripsrecon metric --input=/tmp/s2.csv --kind=path --epsilon=0.2 \
      --output=/tmp/d.fms
  ripsrecon rips --input=/tmp/d.fms --beta=0.6 --output=/tmp/k.txt
  ripsrecon betti --input=/tmp/k.txt --expected=1,1
  ripsrecon pipeline --config=ripsrecon/examples/circle_reconstruction.json
  ripsrecon sweep --config=ripsrecon/examples/convergence_sweep.json

Results are printed as JSON (CSV for sweeps) unless --output is given. The
exit code is 0 iff the command's check passes; commands without a check
pass when they complete.
"""

import dataclasses
import json
import math
from typing import Any, Callable, Sequence

from absl import app
from absl import flags
from absl import logging
from ripsrecon._src.core import circumradius
from ripsrecon._src.core import complexes
from ripsrecon._src.core import geometry
from ripsrecon._src.core import homology
from ripsrecon._src.core import invariants
from ripsrecon._src.core import pathmetric
from ripsrecon._src.core import reach
from ripsrecon._src.core import serialization
from ripsrecon._src.core import shapes
from ripsrecon._src.experiments import config as config_lib
from ripsrecon._src.experiments import pipelines
from ripsrecon._src.experiments import sweeps

_INPUT = flags.DEFINE_string("input", None, "Input cloud, metric or complex.")
_OTHER = flags.DEFINE_string("other", None, "Second cloud or metric.")
_OUTPUT = flags.DEFINE_string("output", None, "Output path.")
_CORRESPONDENCE = flags.DEFINE_string(
    "correspondence", None, "Correspondence CSV; the diagonal if unset."
)
_CONFIG = flags.DEFINE_string("config", None, "Pipeline or sweep JSON config.")
_SHAPE = flags.DEFINE_enum("shape", "circle", sorted(shapes.SHAPES), "Shape.")
_SHAPE_PARAMS = flags.DEFINE_string(
    "shape_params", "{}", "Shape parameters as a JSON object."
)
_N = flags.DEFINE_integer("n", 1000, "Number of sample points.")
_MODE = flags.DEFINE_enum(
    "mode", "grid", list(geometry.SAMPLE_MODES), "Sampling mode."
)
_SEED = flags.DEFINE_integer("seed", 0, "Experiment seed.")
_ETA = flags.DEFINE_float("eta", 0.0, "Noise radius.")
_KIND = flags.DEFINE_enum(
    "kind", "euclidean", ["euclidean", "path"], "Metric kind."
)
_EPSILON = flags.DEFINE_float("epsilon", 0.1, "Path metric scale.")
_BETA = flags.DEFINE_float("beta", 0.6, "Rips scale.")
_MAX_DIM = flags.DEFINE_integer("max_dim", 2, "Highest simplex dimension.")
_COLLAPSE = flags.DEFINE_bool("collapse", False, "Collapse Rips edges.")
_UP_TO = flags.DEFINE_integer(
    "up_to", None, "Highest Betti dimension; derived from the complex if unset."
)
_EXPECTED = flags.DEFINE_list("expected", [], "Expected Betti profile.")
_GH_EPS = flags.DEFINE_float("gh_eps", 0.05, "Closeness epsilon.")
_RADIUS = flags.DEFINE_float("radius", 0.1, "Closeness radius R.")
_DEPTHS = flags.DEFINE_list(
    "depths", ["0.1", "0.05", "0.02", "0.01"], "Critical function depths."
)
_N_PROBE = flags.DEFINE_integer("n_probe", 200, "Walking probes per depth.")
_MU = flags.DEFINE_float("mu", 0.1, "Gradient threshold of the mu-reach.")


@dataclasses.dataclass(frozen=True)
class CommandArgs:
  """Arguments of a subcommand, mirroring the flags."""

  input: str | None = None
  other: str | None = None
  output: str | None = None
  correspondence: str | None = None
  config: str | None = None
  shape: str = "circle"
  shape_params: str = "{}"
  n: int = 1000
  mode: str = "grid"
  seed: int = 0
  eta: float = 0.0
  kind: str = "euclidean"
  epsilon: float = 0.1
  beta: float = 0.6
  max_dim: int = 2
  collapse: bool = False
  up_to: int | None = None
  expected: Sequence[int] = ()
  gh_eps: float = 0.05
  radius: float = 0.1
  depths: Sequence[float] = (0.1, 0.05, 0.02, 0.01)
  n_probe: int = 200
  mu: float = 0.1

  @classmethod
  def from_flags(cls) -> "CommandArgs":
    return cls(
        input=_INPUT.value,
        other=_OTHER.value,
        output=_OUTPUT.value,
        correspondence=_CORRESPONDENCE.value,
        config=_CONFIG.value,
        shape=_SHAPE.value,
        shape_params=_SHAPE_PARAMS.value,
        n=_N.value,
        mode=_MODE.value,
        seed=_SEED.value,
        eta=_ETA.value,
        kind=_KIND.value,
        epsilon=_EPSILON.value,
        beta=_BETA.value,
        max_dim=_MAX_DIM.value,
        collapse=_COLLAPSE.value,
        up_to=_UP_TO.value,
        expected=tuple(int(b) for b in _EXPECTED.value),
        gh_eps=_GH_EPS.value,
        radius=_RADIUS.value,
        depths=tuple(float(d) for d in _DEPTHS.value),
        n_probe=_N_PROBE.value,
        mu=_MU.value,
    )


@dataclasses.dataclass(frozen=True)
class CommandResult:
  """A JSON payload, or CSV text for sweeps, and whether the check passed."""

  payload: dict[str, Any] | str
  passed: bool = True


def _require(args: CommandArgs, *names: str):
  missing = [name for name in names if getattr(args, name) is None]
  if missing:
    raise app.UsageError(f"Missing required flags: {missing}.")


def _cloud_result(args: CommandArgs, cloud: geometry.PointCloud):
  if args.output:
    serialization.write_cloud(args.output, cloud)
    return CommandResult(
        {"n": cloud.n, "dim": cloud.dim, "output": args.output}
    )
  return CommandResult(serialization.cloud_to_json(cloud))


def _read_pair(args: CommandArgs):
  _require(args, "input", "other")
  d_a = serialization.read_metric(args.input)
  d_b = serialization.read_metric(args.other)
  if args.correspondence:
    corr = serialization.read_correspondence(args.correspondence, d_a.n, d_b.n)
  elif d_a.n == d_b.n:
    corr = invariants.Correspondence.diagonal(d_a.n)
  else:
    raise app.UsageError(
        f"Metrics of sizes {d_a.n} and {d_b.n} need --correspondence."
    )
  return corr, d_a, d_b


def sample(args: CommandArgs) -> CommandResult:
  shape = shapes.get_shape(args.shape, **json.loads(args.shape_params))
  cloud, _ = geometry.sample_shape(
      shape, args.n, mode=args.mode, seed=args.seed
  )
  return _cloud_result(args, cloud)


def perturb(args: CommandArgs) -> CommandResult:
  _require(args, "input")
  cloud = serialization.read_cloud(args.input)
  return _cloud_result(args, geometry.perturb(cloud, args.eta, seed=args.seed))


def metric(args: CommandArgs) -> CommandResult:
  """Writes the Euclidean or epsilon-path metric of a cloud."""
  _require(args, "input", "output")
  cloud = serialization.read_cloud(args.input)
  if args.kind == "euclidean":
    result = geometry.euclidean_metric(cloud)
  else:
    try:
      result = pathmetric.path_metric(cloud, args.epsilon)
    except pathmetric.DisconnectedGraphError as e:
      return CommandResult({"error": str(e)}, passed=False)
  serialization.write_metric(args.output, result)
  return CommandResult(
      {"n": result.n, "diameter": result.diameter, "output": args.output}
  )


def rips(args: CommandArgs) -> CommandResult:
  _require(args, "input", "output")
  d = serialization.read_metric(args.input)
  if args.collapse:
    skeleton = complexes.rips_complex(d, args.beta, max_dim=1)
    reduced = complexes.collapse_edges(skeleton, d)
    complex_ = complexes.flag_complex(d.n, reduced.edges, args.max_dim)
  else:
    complex_ = complexes.rips_complex(d, args.beta, max_dim=args.max_dim)
  serialization.write_complex(args.output, complex_)
  return CommandResult({"counts": list(complex_.counts), "output": args.output})


def betti(args: CommandArgs) -> CommandResult:
  """Betti profile of a complex; fails on a mismatch with --expected."""
  _require(args, "input")
  complex_ = serialization.read_complex(args.input)
  up_to = args.up_to
  if up_to is None:
    full = complex_.is_fully_materialized
    up_to = complex_.max_dim if full else complex_.max_dim - 1
  try:
    profile = homology.betti_numbers(complex_, up_to)
  except ValueError as e:
    raise app.UsageError(
        f"Cannot compute Betti numbers of {args.input}: {e} Rebuild it with"
        " a larger --max_dim or pass a smaller --up_to."
    ) from e
  payload = profile.to_json()
  payload["connected_components"] = homology.connected_components(complex_)
  passed = True
  if args.expected:
    passed = pipelines.betti_match(profile.betti, args.expected)
    payload["expected"] = list(args.expected)
  return CommandResult(payload, passed)


def hausdorff(args: CommandArgs) -> CommandResult:
  _require(args, "input", "other")
  a = serialization.read_cloud(args.input)
  b = serialization.read_cloud(args.other)
  return CommandResult({"hausdorff": invariants.hausdorff_distance(a, b)})


def distortion(args: CommandArgs) -> CommandResult:
  corr, d_a, d_b = _read_pair(args)
  value = invariants.distortion(corr, d_a, d_b)
  return CommandResult({
      "distortion": value,
      "gh_upper_bound": 0.5 * value,
      "gh_lower_bound": invariants.gh_lower_bound(d_a, d_b),
  })


def closeness(args: CommandArgs) -> CommandResult:
  corr, d_a, d_b = _read_pair(args)
  report = invariants.check_eps_R_closeness(
      corr, d_a, d_b, args.gh_eps, args.radius
  )
  return CommandResult(report.to_json(), report.passed)


def jung(args: CommandArgs) -> CommandResult:
  _require(args, "input")
  report = circumradius.check_jung_euclidean(
      serialization.read_cloud(args.input)
  )
  return CommandResult(report.to_json(), report.passed)


def mureach(args: CommandArgs) -> CommandResult:
  _require(args, "input")
  table = reach.critical_function_estimate(
      serialization.read_cloud(args.input),
      args.depths,
      n_probe=args.n_probe,
      seed=args.seed,
  )
  estimate = table.mu_reach_estimate(args.mu)
  return CommandResult({
      "rows": [row.to_json() for row in table.rows],
      "mu": args.mu,
      "mu_reach_estimate": estimate if math.isfinite(estimate) else "inf",
  })


def pipeline(args: CommandArgs) -> CommandResult:
  """Runs the pipeline of --config; --input/--correspondence feed latschev."""
  _require(args, "config")
  config = config_lib.load_config(args.config)
  if not isinstance(config, config_lib.ExperimentConfig):
    raise app.UsageError(f"{args.config} is a sweep config; use `sweep`.")
  sample_metric, corr = None, None
  if args.input:
    sample_metric = serialization.read_metric(args.input)
    if args.correspondence:
      corr = serialization.read_correspondence(
          args.correspondence, config.n_ref, sample_metric.n
      )
  report = pipelines.run_pipeline(config, sample_metric, corr)
  return CommandResult(report.to_json(), report.passed)


def sweep(args: CommandArgs) -> CommandResult:
  """Runs the sweep of --config; CSV goes to --output or stdout.

  The exit status follows the sweep's `expect` rule.
  """
  _require(args, "config")
  config = config_lib.load_config(args.config)
  if not isinstance(config, config_lib.SweepConfig):
    raise app.UsageError(f"{args.config} is not a sweep config.")
  if args.output:
    config = dataclasses.replace(config, output_csv=args.output)
  table = sweeps.run_sweeps(config)
  if config.output_csv:
    payload = {
        "kind": table.kind,
        "values": table.values,
        "monotone": table.monotone,
        "passed": table.passed,
        "output": config.output_csv,
    }
    return CommandResult(payload, table.passed)
  lines = [",".join(table.columns)]
  lines.extend(",".join(map(str, row)) for row in table.to_csv_rows())
  return CommandResult("\n".join(lines) + "\n", table.passed)


COMMANDS: dict[str, Callable[[CommandArgs], CommandResult]] = {
    "sample": sample,
    "perturb": perturb,
    "metric": metric,
    "rips": rips,
    "betti": betti,
    "hausdorff": hausdorff,
    "distortion": distortion,
    "closeness": closeness,
    "jung": jung,
    "mureach": mureach,
    "pipeline": pipeline,
    "sweep": sweep,
}


def run_command(command: str, args: CommandArgs) -> CommandResult:
  if command not in COMMANDS:
    raise app.UsageError(
        f"Unknown command {command!r}, expected one of {sorted(COMMANDS)}."
    )
  logging.info("Running %s.", command)
  return COMMANDS[command](args)


def main(argv: Sequence[str]) -> int:
  if len(argv) != 2:
    raise app.UsageError(
        f"Expected exactly one command, one of {sorted(COMMANDS)}."
    )
  result = run_command(argv[1], CommandArgs.from_flags())
  if isinstance(result.payload, str):
    print(result.payload, end="")
  else:
    print(json.dumps(result.payload, indent=2, sort_keys=True))
  return 0 if result.passed else 1


def run():
  app.run(main)


if __name__ == "__main__":
  run()
