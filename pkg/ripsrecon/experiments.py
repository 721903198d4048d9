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

from ._src.experiments import cli
from ._src.experiments import config
from ._src.experiments import pipelines
from ._src.experiments import sweeps

# Individual members and functions.
from ._src.experiments.config import ExperimentConfig
from ._src.experiments.config import HypothesisError
from ._src.experiments.config import load_config
from ._src.experiments.config import SweepConfig
from ._src.experiments.pipelines import Report
from ._src.experiments.pipelines import run_closeness_check
from ._src.experiments.pipelines import run_latschev
from ._src.experiments.pipelines import run_pipeline
from ._src.experiments.pipelines import run_reconstruction
from ._src.experiments.pipelines import run_stability
from ._src.experiments.sweeps import run_sweeps
from ._src.experiments.sweeps import SweepTable
