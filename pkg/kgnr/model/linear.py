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

"""Exact solution of the linear Klein-Gordon equation."""
import logging
from typing import Tuple

import numpy as np

from kgnr.errors import ParameterError, UnsupportedRegimeError
from kgnr.spectral import Field

from .initial_data import InitialData
from .params import KGParams

logger = logging.getLogger(__name__)


def _frequencies(data: InitialData, params: KGParams) -> Tuple[np.ndarray, np.ndarray]:
    if params.p != 0:
        raise UnsupportedRegimeError(
            reason=f"Exact solution requires the linear model (p=0), got p={params.p}"
        )

    modes = data.grid.modes.astype(float)
    radicand = modes ** 2 + params.c ** 2 - params.lam
    active = (data.phi.coeffs != 0) | (data.gamma.coeffs != 0)
    if np.any(radicand[active] <= 0):
        raise ParameterError(
            reason=(
                "Degenerate frequency: k^2 + c^2 - lambda <= 0 for an active mode "
                f"(c={params.c}, lambda={params.lam})"
            )
        )

    root = np.sqrt(np.where(radicand > 0, radicand, 1.0))
    return params.c * root, params.c / root


def exact_linear_solution(data: InitialData, params: KGParams, t: float) -> Field:
    """Solution z(t) of z_tt/c^2 - z_xx + c^2 z = lam z.

    Per mode a: phi_a cos(Omega t) + (c / sqrt(a^2+c^2-lam)) gamma_a sin(Omega t)
    with Omega = c sqrt(a^2 + c^2 - lam).

    :raises UnsupportedRegimeError: If p != 0.
    :raises ParameterError: On a degenerate frequency.
    """
    omega, amplitude = _frequencies(data, params)
    phase = omega * t
    coeffs = data.phi.coeffs * np.cos(phase) + amplitude * data.gamma.coeffs * np.sin(
        phase
    )
    return Field(grid=data.grid, coeffs=coeffs)


def exact_linear_velocity(data: InitialData, params: KGParams, t: float) -> Field:
    """Time derivative z_t(t) of ``exact_linear_solution``."""
    omega, _ = _frequencies(data, params)
    phase = omega * t
    coeffs = -omega * data.phi.coeffs * np.sin(phase) + params.c ** 2 * data.gamma.coeffs * np.cos(
        phase
    )
    return Field(grid=data.grid, coeffs=coeffs)
