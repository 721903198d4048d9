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

"""File formats for clouds, metrics, complexes and correspondences.

  * Point clouds: CSV with header `x0,x1,...`, one point per row, or JSON
    `{"dim": d, "points": [[...], ...]}`.
  * Metrics: dense row-major CSV with 17 significant digits, or the binary
    FMS1 format: magic b"FMS1", little-endian u64 n, then n * n float64.
  * Complexes: text, one simplex per line, blocks headed by `#dim k`.
  * Correspondences: CSV with header `i,j`.
"""

import io
import json
import os
from typing import Any, Sequence

from etils import epath
import numpy as np
from ripsrecon._src.core import complexes
from ripsrecon._src.core import geometry
from ripsrecon._src.core import invariants

PathLike = str | os.PathLike
FMS_MAGIC = b"FMS1"
_FLOAT_FORMAT = "%.17g"


def _write_csv(path: PathLike, array: np.ndarray, header: str, fmt: str):
  buffer = io.StringIO()
  np.savetxt(buffer, array, delimiter=",", header=header, comments="", fmt=fmt)
  epath.Path(path).write_text(buffer.getvalue())


def _read_csv(
    path: PathLike, skip_header: bool, dtype=np.float64
) -> np.ndarray:
  text = epath.Path(path).read_text()
  return np.loadtxt(
      io.StringIO(text),
      delimiter=",",
      skiprows=1 if skip_header else 0,
      ndmin=2,
      dtype=dtype,
  )


def write_cloud_csv(path: PathLike, cloud: geometry.PointCloud):
  header = ",".join(f"x{k}" for k in range(cloud.dim))
  _write_csv(path, cloud.points, header, _FLOAT_FORMAT)


def read_cloud_csv(path: PathLike) -> geometry.PointCloud:
  return geometry.make_point_cloud(_read_csv(path, skip_header=True))


def cloud_to_json(cloud: geometry.PointCloud) -> dict[str, Any]:
  return {"dim": cloud.dim, "points": cloud.points.tolist()}


def cloud_from_json(data: dict[str, Any]) -> geometry.PointCloud:
  cloud = geometry.make_point_cloud(data["points"])
  if cloud.dim != data.get("dim", cloud.dim):
    raise ValueError(
        f"Declared dim {data['dim']} but points have dim {cloud.dim}."
    )
  return cloud


def read_cloud(path: PathLike) -> geometry.PointCloud:
  """Reads a cloud from `.json` or CSV."""
  if os.fspath(path).endswith(".json"):
    return cloud_from_json(json.loads(epath.Path(path).read_text()))
  return read_cloud_csv(path)


def write_cloud(path: PathLike, cloud: geometry.PointCloud):
  if os.fspath(path).endswith(".json"):
    epath.Path(path).write_text(json.dumps(cloud_to_json(cloud)))
  else:
    write_cloud_csv(path, cloud)


def write_metric_csv(path: PathLike, metric: geometry.FiniteMetricSpace):
  _write_csv(path, metric.d, header="", fmt=_FLOAT_FORMAT)


def read_metric_csv(path: PathLike) -> np.ndarray:
  return _read_csv(path, skip_header=False)


def metric_to_bytes(metric: geometry.FiniteMetricSpace) -> bytes:
  return (
      FMS_MAGIC
      + np.uint64(metric.n).astype("<u8").tobytes()
      + metric.d.astype("<f8").tobytes()
  )


def metric_from_bytes(data: bytes) -> np.ndarray:
  if data[:4] != FMS_MAGIC:
    raise ValueError(f"Bad magic {data[:4]!r}, expected {FMS_MAGIC!r}.")
  n = int(np.frombuffer(data, dtype="<u8", count=1, offset=4)[0])
  expected = 12 + 8 * n * n
  if len(data) != expected:
    raise ValueError(f"FMS1 payload of {len(data)} bytes, expected {expected}.")
  matrix = np.frombuffer(data, dtype="<f8", offset=12).reshape(n, n)
  return matrix.astype(np.float64)


def write_metric(path: PathLike, metric: geometry.FiniteMetricSpace):
  """Writes FMS1 for `.fms` paths and CSV otherwise."""
  if os.fspath(path).endswith(".fms"):
    epath.Path(path).write_bytes(metric_to_bytes(metric))
  else:
    write_metric_csv(path, metric)


def read_metric(
    path: PathLike, validate: bool = True
) -> geometry.FiniteMetricSpace:
  """Reads FMS1 for `.fms` paths and CSV otherwise.

  Args:
    path: file to read.
    validate: whether to also check the triangle inequality.

  Returns:
    The metric space.
  """
  if os.fspath(path).endswith(".fms"):
    matrix = metric_from_bytes(epath.Path(path).read_bytes())
  else:
    matrix = read_metric_csv(path)
  if validate:
    return geometry.make_metric_space(matrix)
  return geometry.FiniteMetricSpace(matrix)


def complex_to_text(complex_: complexes.FlagComplex) -> str:
  lines = []
  for k, simplices in enumerate(complex_.simplices):
    lines.append(f"#dim {k}")
    lines.extend(" ".join(map(str, s)) for s in simplices.tolist())
  return "\n".join(lines) + "\n"


def complex_from_text(text: str) -> complexes.FlagComplex:
  """Parses the `#dim k` text format."""
  blocks: list[list[tuple[int, ...]]] = []
  for line_number, line in enumerate(text.splitlines(), start=1):
    line = line.strip()
    if not line:
      continue
    if line.startswith("#dim"):
      k = int(line.split()[1])
      if k != len(blocks):
        raise ValueError(
            f"Line {line_number}: expected #dim {len(blocks)}, got {k}."
        )
      blocks.append([])
      continue
    if not blocks:
      raise ValueError(f"Line {line_number}: simplex before any #dim header.")
    simplex = tuple(int(v) for v in line.split())
    if len(simplex) != len(blocks):
      raise ValueError(
          f"Line {line_number}: {len(simplex)} vertices in a block of dimension"
          f" {len(blocks) - 1}."
      )
    blocks[-1].append(simplex)
  if not blocks:
    raise ValueError("Complex text has no #dim blocks.")
  return complexes.FlagComplex(
      n_vertices=len(blocks[0]),
      max_dim=len(blocks) - 1,
      simplices=tuple(blocks),
  )


def write_complex(path: PathLike, complex_: complexes.FlagComplex):
  epath.Path(path).write_text(complex_to_text(complex_))


def read_complex(path: PathLike) -> complexes.FlagComplex:
  return complex_from_text(epath.Path(path).read_text())


def write_correspondence(path: PathLike, corr: invariants.Correspondence):
  _write_csv(path, corr.pairs, header="i,j", fmt="%d")


def read_correspondence(
    path: PathLike, m: int, n: int
) -> invariants.Correspondence:
  pairs = _read_csv(path, skip_header=True, dtype=np.int64)
  return invariants.Correspondence(m, n, pairs)


def write_table(
    path: PathLike, columns: Sequence[str], rows: Sequence[Sequence[Any]]
):
  """Writes a CSV table of `str` cells; cells may not contain commas."""
  table = np.asarray(rows, dtype=object).reshape(len(rows), len(columns))
  _write_csv(path, table, header=",".join(columns), fmt="%s")


def write_json(path: PathLike, data: Any):
  """Writes JSON with sorted keys so equal inputs give equal bytes."""
  epath.Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
