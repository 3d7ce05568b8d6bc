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

"""Fixtures for acceptance sweeps."""
import pytest

from kgnr.harness import ExperimentConfig, ExperimentKind, run_experiment
from kgnr.model import InitialDataPreset


@pytest.fixture(scope="module")
def real_tau_sweep():
    return run_experiment(
        ExperimentConfig(
            experiment=ExperimentKind.TAU_CONVERGENCE,
            T=0.1,
            tau_list=(4e-3, 2e-3, 1e-3, 5e-4),
            initial_data=InitialDataPreset.REAL_MIXED,
            record_runtime=False,
        )
    )
