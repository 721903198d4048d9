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

"""Tests for rng."""

from absl.testing import absltest
from absl.testing import parameterized
import numpy as np
from ripsrecon._src.core import rng


class RngTest(parameterized.TestCase):

  def test_same_seed_same_draws(self):
    np.testing.assert_array_equal(
        rng.substream(42, rng.SAMPLING).random(8),
        rng.substream(42, rng.SAMPLING).random(8),
    )

  def test_substreams_are_independent(self):
    self.assertFalse(
        np.array_equal(
            rng.substream(42, rng.SAMPLING).random(8),
            rng.substream(42, rng.NOISE).random(8),
        )
    )

  def test_seeds_differ(self):
    self.assertFalse(
        np.array_equal(
            rng.substream(1, rng.PROBING).random(8),
            rng.substream(2, rng.PROBING).random(8),
        )
    )

  def test_high_bits_matter(self):
    self.assertFalse(
        np.array_equal(
            rng.substream(5, rng.SWEEP).random(8),
            rng.substream(5 + 2**32, rng.SWEEP).random(8),
        )
    )

  @parameterized.parameters(-1, 2**64)
  def test_out_of_range_seed_raises(self, seed):
    with self.assertRaisesRegex(ValueError, "must be in"):
      rng.base_key(seed)

  def test_largest_seed(self):
    self.assertLen(rng.substream(2**64 - 1, rng.NOISE).random(3), 3)


if __name__ == "__main__":
  absltest.main()
