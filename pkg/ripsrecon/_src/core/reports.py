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

"""Machine-readable results of inequality checks."""

import dataclasses
import math
from typing import Any, Mapping


def _json_float(value: float) -> float | str:
  value = float(value)
  if math.isfinite(value):
    return value
  return str(value)


@dataclasses.dataclass(frozen=True)
class CheckReport:
  """Outcome of checking one inequality over all pairs of a finite instance.

  Attributes:
    quantity: name of the checked quantity, e.g. "monotonicity".
    value: the worst observed value (a violation, gap or ratio).
    bound: the value may not exceed `bound + tolerance`.
    witness_pair: indices of the pair attaining `value`, if any.
    tolerance: float tolerance added to the bound.
    passed: whether value <= bound + tolerance.
    details: extra named quantities.
  """

  quantity: str
  value: float
  bound: float
  witness_pair: tuple[int, int] | None
  tolerance: float
  passed: bool
  details: Mapping[str, Any] = dataclasses.field(default_factory=dict)

  @classmethod
  def upper_bound(
      cls,
      quantity: str,
      value: float,
      bound: float,
      witness_pair: tuple[int, int] | None,
      tolerance: float,
      **details,
  ) -> "CheckReport":
    """Builds a report that passes iff value <= bound + tolerance."""
    if witness_pair is not None:
      witness_pair = (int(witness_pair[0]), int(witness_pair[1]))
    return cls(
        quantity=quantity,
        value=float(value),
        bound=float(bound),
        witness_pair=witness_pair,
        tolerance=float(tolerance),
        passed=bool(value <= bound + tolerance),
        details=details,
    )

  def to_json(self) -> dict[str, Any]:
    return {
        "quantity": self.quantity,
        "value": _json_float(self.value),
        "bound": _json_float(self.bound),
        "witness_pair": list(self.witness_pair) if self.witness_pair else None,
        "tolerance": self.tolerance,
        "pass": self.passed,
        "details": {
            k: _json_float(v) if isinstance(v, float) else v
            for k, v in self.details.items()
        },
    }
