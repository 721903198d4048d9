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

"""Parameter sweeps over independent cells.

The grid of a sweep is a grain LazyMapDataset; every cell is mapped to a
table row with its own key, fold_in(sweep key, cell index), and the rows are
read in index order, optionally by several threads. A cell that raises
ValueError becomes a failed row and the sweep goes on.
"""

import dataclasses
import math
from typing import Any, Callable, Sequence

from absl import logging
import grain.python as grain
import jax
from ripsrecon._src.core import geometry
from ripsrecon._src.core import invariants
from ripsrecon._src.core import pathmetric
from ripsrecon._src.core import reach
from ripsrecon._src.core import rng as rng_lib
from ripsrecon._src.core import serialization
from ripsrecon._src.experiments import config as config_lib

lazy_dataset = grain.experimental.lazy_dataset
JaxRng = jax.Array
Row = dict[str, Any]
CellFn = Callable[[float, JaxRng], Row]

COLUMNS = {
    "convergence": ("epsilon", "sup_error", "witness_i", "witness_j", "error"),
    "distortion": (
        "epsilon",
        "R",
        "distortion",
        "witness_i",
        "witness_j",
        "error",
    ),
    "mu_reach": ("d", "chi_estimate", "n_probes", "error"),
}
VALUE_COLUMNS = {
    "convergence": "sup_error",
    "distortion": "distortion",
    "mu_reach": "chi_estimate",
}


@dataclasses.dataclass(frozen=False)
class SweepCellLazyMapDataset(lazy_dataset.LazyMapDataset[Row]):
  """Maps each grid value to its table row, keyed by the cell index.

  Rows must have exactly the columns of `kind`. A cell raising ValueError
  yields a failed row instead: nan values and the error type in "error".
  """

  parent: lazy_dataset.LazyMapDataset
  kind: str
  cell_fn: CellFn
  base_rng: JaxRng

  def __init__(
      self,
      parent: lazy_dataset.LazyMapDataset,
      kind: str,
      cell_fn: CellFn,
      base_rng: JaxRng,
  ):
    if kind not in COLUMNS:
      raise ValueError(f"Unknown sweep kind {kind!r}.")
    super().__init__([parent])
    self.parent = parent
    self.kind = kind
    self.cell_fn = cell_fn
    self.base_rng = base_rng

  def __len__(self) -> int:
    return len(self.parent)

  def __getitem__(self, index):
    if isinstance(index, slice):
      return self.slice(index)
    grid_value = self.parent[index]
    if grid_value is None:
      return None
    rng = jax.random.fold_in(self.base_rng, index)
    try:
      row = self.cell_fn(grid_value, rng)
    except ValueError as e:
      return _failed_row(self.kind, grid_value, e)
    if set(row) != set(COLUMNS[self.kind]):
      raise KeyError(
          f"Row columns {sorted(row)} of cell {index} do not match"
          f" {self.kind} columns {COLUMNS[self.kind]}."
      )
    return row


@dataclasses.dataclass(frozen=True)
class SweepTable:
  """Rows of a sweep in grid order.

  Attributes:
    kind: the sweep kind.
    columns: CSV column names.
    rows: one dict per cell; failed cells carry nan values and the error
      type in "error".
    monotone: whether the value column strictly decreases across the grid
      with no failed cell.
    passed: whether the table meets the sweep's `expect` rule.
  """

  kind: str
  columns: tuple[str, ...]
  rows: tuple[Row, ...]
  monotone: bool
  passed: bool

  @property
  def values(self) -> list[float]:
    return [row[VALUE_COLUMNS[self.kind]] for row in self.rows]

  def to_csv_rows(self) -> list[list[Any]]:
    return [[row[c] for c in self.columns] for row in self.rows]


def _failed_row(kind: str, grid_value: float, error: Exception):
  logging.warning("Sweep cell at %g failed: %s", grid_value, error)
  row = {column: math.nan for column in COLUMNS[kind]}
  row[COLUMNS[kind][0]] = grid_value
  row["error"] = type(error).__name__
  return row


def _convergence_cell(sweep: config_lib.SweepConfig) -> CellFn:
  shape = sweep.get_shape()
  _, params = geometry.sample_shape(shape, sweep.n, mode="grid")
  intrinsic = geometry.intrinsic_metric(shape, params)

  def cell(epsilon: float, rng: JaxRng) -> Row:
    del rng
    error, (i, j) = pathmetric.path_metric_sup_error(
        shape, params, epsilon, intrinsic
    )
    return {
        "epsilon": epsilon,
        "sup_error": error,
        "witness_i": i,
        "witness_j": j,
        "error": "",
    }

  return cell


def _distortion_cell(sweep: config_lib.SweepConfig) -> CellFn:
  shape = sweep.get_shape()
  cloud, params = geometry.sample_shape(shape, sweep.n, mode="grid")
  intrinsic = geometry.intrinsic_metric(shape, params)

  def cell(epsilon: float, rng: JaxRng) -> Row:
    del rng
    relaxed = pathmetric.path_metric(cloud, epsilon)
    ratio, (i, j) = invariants.distortion_ratio(intrinsic, relaxed, sweep.R)
    return {
        "epsilon": epsilon,
        "R": sweep.R,
        "distortion": ratio,
        "witness_i": i,
        "witness_j": j,
        "error": "",
    }

  return cell


def _mu_reach_cell(sweep: config_lib.SweepConfig) -> CellFn:
  cloud, _ = geometry.sample_shape(sweep.get_shape(), sweep.n, mode="grid")

  def cell(d: float, rng: JaxRng) -> Row:
    seed = int(rng_lib.generator_from_key(rng).integers(2**63))
    table = reach.critical_function_estimate(
        cloud, [d], n_probe=sweep.n_probe, seed=seed
    )
    row = table.rows[0]
    return {
        "d": row.d,
        "chi_estimate": row.chi_estimate,
        "n_probes": row.n_probes,
        "error": "",
    }

  return cell


_CELL_BUILDERS = {
    "convergence": _convergence_cell,
    "distortion": _distortion_cell,
    "mu_reach": _mu_reach_cell,
}


def is_strictly_decreasing(values: Sequence[float]) -> bool:
  if any(not math.isfinite(v) for v in values):
    return False
  return all(a > b for a, b in zip(values, values[1:]))


def meets_expectation(
    sweep: config_lib.SweepConfig, rows: Sequence[Row]
) -> bool:
  """Applies the sweep's pass rule; a failed cell never passes."""
  values = [row[VALUE_COLUMNS[sweep.kind]] for row in rows]
  if sweep.expect == "decreasing":
    return is_strictly_decreasing(values)
  if any(row["error"] for row in rows):
    return False
  return all(value >= sweep.floor for value in values)


def _get_read_options(num_threads: int) -> grain.ReadOptions:
  if num_threads:
    return grain.ReadOptions(num_threads=num_threads)
  return grain.ReadOptions()


def run_sweeps(sweep: config_lib.SweepConfig) -> SweepTable:
  """Runs every cell of the sweep and writes the table if configured.

  Args:
    sweep: the sweep config.

  Returns:
    The table of cells in grid order.
  """
  logging.info(
      "Running %s sweep on %s over %s.", sweep.kind, sweep.shape, sweep.grid
  )
  ds = lazy_dataset.SourceLazyMapDataset(list(sweep.grid))
  ds = SweepCellLazyMapDataset(
      ds,
      sweep.kind,
      _CELL_BUILDERS[sweep.kind](sweep),
      rng_lib.substream_key(sweep.seed, rng_lib.SWEEP),
  )
  rows = tuple(ds.to_iter_dataset(_get_read_options(sweep.num_threads)))
  values = [row[VALUE_COLUMNS[sweep.kind]] for row in rows]
  table = SweepTable(
      kind=sweep.kind,
      columns=COLUMNS[sweep.kind],
      rows=rows,
      monotone=is_strictly_decreasing(values),
      passed=meets_expectation(sweep, rows),
  )
  logging.info(
      "%s sweep values %s, monotone=%s, passed=%s.",
      sweep.kind,
      values,
      table.monotone,
      table.passed,
  )
  if sweep.output_csv:
    serialization.write_table(
        sweep.output_csv, table.columns, table.to_csv_rows()
    )
  return table
