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

"""Fixtures for unit tests."""
import logging

import numpy as np
import pytest

from kgnr.model import InitialDataPreset, KGParams, preset_initial_data
from kgnr.spectral import Field, make_grid


@pytest.fixture()
def grid():
    return make_grid(16)


@pytest.fixture()
def complex_data(grid):
    return preset_initial_data(InitialDataPreset.COMPLEX_MIXED, grid=grid)


@pytest.fixture()
def real_data(grid):
    return preset_initial_data(InitialDataPreset.REAL_MIXED, grid=grid)


@pytest.fixture()
def cubic_params():
    return KGParams(c=8.0, lam=-1.0, p=1)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)


@pytest.fixture()
def random_field(grid, rng):
    """Smooth random fields with the Nyquist mode removed."""

    def _random_field():
        decay = np.exp(-0.5 * np.abs(grid.modes))
        coeffs = (
            rng.standard_normal(grid.num_points) + 1j * rng.standard_normal(grid.num_points)
        ) * decay
        coeffs[grid.index_of(-grid.num_modes)] = 0.0
        return Field(grid=grid, coeffs=coeffs)

    return _random_field


@pytest.fixture(autouse=True)
def restore_package_logger():
    """Undo handler and level changes made by the command line entry point."""
    package_logger = logging.getLogger("kgnr")
    handlers, level = list(package_logger.handlers), package_logger.level

    yield

    package_logger.handlers = handlers
    package_logger.setLevel(level)
