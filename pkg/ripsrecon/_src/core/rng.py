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

"""Seeded randomness.

Every random draw in RipsRecon flows from a single integer seed (up to 64
bits). The seed is turned into a jax PRNG key, and independent named
substreams are derived from it with `jax.random.fold_in`. Numeric sampling
happens on a numpy Generator seeded from the substream key data.
"""

import hashlib

import jax
import numpy as np

JaxRng = jax.Array

SAMPLING = "sampling"
NOISE = "noise"
PROBING = "probing"
SWEEP = "sweep"

_UINT32_MASK = 0xFFFFFFFF


def _name_to_uint32(name: str) -> np.uint32:
  digest = hashlib.sha256(name.encode("utf-8")).digest()
  return np.uint32(int.from_bytes(digest[:4], "little") & 0x7FFFFFFF)


def base_key(seed: int) -> JaxRng:
  """Returns the root key for a seed of up to 64 bits."""
  if seed < 0 or seed >= 2**64:
    raise ValueError(f"Seed {seed} must be in [0, 2**64).")
  key = jax.random.key(0)
  key = jax.random.fold_in(key, np.uint32((seed >> 32) & _UINT32_MASK))
  return jax.random.fold_in(key, np.uint32(seed & _UINT32_MASK))


def substream_key(seed: int, name: str) -> JaxRng:
  """Returns the key of the named substream of `seed`."""
  return jax.random.fold_in(base_key(seed), _name_to_uint32(name))


def generator_from_key(key: JaxRng) -> np.random.Generator:
  """Returns a numpy Generator seeded deterministically from a jax key."""
  key_data = np.asarray(jax.random.key_data(key), dtype=np.uint32)
  return np.random.default_rng(key_data.ravel())


def substream(seed: int, name: str) -> np.random.Generator:
  """Returns a numpy Generator for the named substream of `seed`."""
  return generator_from_key(substream_key(seed, name))
