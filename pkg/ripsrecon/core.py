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

"""Import to top-level API."""

# pylint:disable=unused-import,g-importing-member

from ._src.core import circumradius
from ._src.core import complexes
from ._src.core import geometry
from ._src.core import homology
from ._src.core import invariants
from ._src.core import pathmetric
from ._src.core import reach
from ._src.core import reports
from ._src.core import rng
from ._src.core import serialization
from ._src.core import shapes

# Individual members and functions.
from ._src.core.circumradius import Ball
from ._src.core.circumradius import check_jung_euclidean
from ._src.core.circumradius import jung_bound
from ._src.core.circumradius import minimal_enclosing_ball
from ._src.core.complexes import barycentric_subdivision
from ._src.core.complexes import collapse_edges
from ._src.core.complexes import euler_characteristic
from ._src.core.complexes import flag_complex
from ._src.core.complexes import FlagComplex
from ._src.core.complexes import rips_complex
from ._src.core.geometry import delta_parameter
from ._src.core.geometry import euclidean_metric
from ._src.core.geometry import FiniteMetricSpace
from ._src.core.geometry import grid_cover_radius
from ._src.core.geometry import intrinsic_metric
from ._src.core.geometry import make_metric_space
from ._src.core.geometry import make_point_cloud
from ._src.core.geometry import perturb
from ._src.core.geometry import PointCloud
from ._src.core.geometry import sample_shape
from ._src.core.geometry import ShapeDescriptor
from ._src.core.homology import betti_numbers
from ._src.core.homology import BettiProfile
from ._src.core.homology import boundary_matrix
from ._src.core.homology import connected_components
from ._src.core.homology import rank_mod2
from ._src.core.invariants import check_eps_R_closeness
from ._src.core.invariants import Correspondence
from ._src.core.invariants import distortion
from ._src.core.invariants import gh_lower_bound
from ._src.core.invariants import gh_upper_bound
from ._src.core.invariants import global_distortion
from ._src.core.invariants import hausdorff_correspondence
from ._src.core.invariants import hausdorff_distance
from ._src.core.invariants import large_scale_distortion
from ._src.core.pathmetric import build_epsilon_graph
from ._src.core.pathmetric import check_comparison
from ._src.core.pathmetric import check_monotonicity
from ._src.core.pathmetric import check_stability
from ._src.core.pathmetric import convergence_sweep
from ._src.core.pathmetric import DisconnectedGraphError
from ._src.core.pathmetric import path_metric
from ._src.core.reach import critical_function_estimate
from ._src.core.reach import CriticalFunctionTable
from ._src.core.reach import gradient_norm
from ._src.core.reports import CheckReport
from ._src.core.shapes import get_shape
from ._src.core.shapes import SHAPES
