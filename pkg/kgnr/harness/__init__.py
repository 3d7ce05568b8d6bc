# Copyright (C) 2021 Canonical Ltd
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License version 3 as
# published by the Free Software Foundation.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

"""Experiment configuration, execution and output."""

from .acceptance import CHECKS  # noqa: F401
from .acceptance import CheckResult  # noqa: F401
from .acceptance import run_acceptance  # noqa: F401
from .acceptance import verify  # noqa: F401
from .config import ExperimentConfig  # noqa: F401
from .config import ExperimentKind  # noqa: F401
from .config import load_config  # noqa: F401
from .config import parse_config  # noqa: F401
from .experiments import EXPERIMENTS  # noqa: F401
from .experiments import Experiment  # noqa: F401
from .experiments import fit_orders  # noqa: F401
from .experiments import get_experiment  # noqa: F401
from .experiments import run_experiment  # noqa: F401
from .results import ResultRow  # noqa: F401
from .results import ResultTable  # noqa: F401
from .results import emit_outputs  # noqa: F401
from .results import load_results  # noqa: F401
from .results import report_row  # noqa: F401
from .slopes import fit_slope  # noqa: F401
