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

"""Closed-form limit and correction terms of the linear model (p=0).

With nu_a = (a^2 - lam) / 2 every mode of u0 and v0 rotates as exp(i nu_a t).
The corrections solve i xi_t = (1/2) xi_xx + (lam/2) xi - (1/2) u0_tt, whose
forcing is resonant, so xi grows linearly in t.
"""
import numpy as np

from kgnr.model import InitialData
from kgnr.spectral import Field, apply_symbol, laplacian_symbol

from .correction import CorrectionState
from .nls import NLSPair, initial_nls_pair


def _rates(data: InitialData, lam: float) -> np.ndarray:
    return 0.5 * (data.grid.modes.astype(float) ** 2 - lam)


def linear_u0_exact(data: InitialData, lam: float, t: float) -> NLSPair:
    """Exact (u0, v0) at time t for initial data phi - i gamma and conj(phi + i gamma)."""
    start = initial_nls_pair(data)
    phase = np.exp(1j * _rates(data, lam) * t)
    grid = data.grid
    return NLSPair(
        u0=Field(grid=grid, coeffs=start.u0.coeffs * phase),
        v0=Field(grid=grid, coeffs=start.v0.coeffs * phase),
        t=t,
    )


def _resonant(initial: Field, driver: Field, rates: np.ndarray, t: float) -> Field:
    # xi_a(t) = exp(i nu t) (xi_a(0) - (i/2) nu^2 u0_a(0) t)
    coeffs = np.exp(1j * rates * t) * (
        initial.coeffs - 0.5j * rates ** 2 * driver.coeffs * t
    )
    return Field(grid=initial.grid, coeffs=coeffs)


def linear_xi1_exact(data: InitialData, lam: float, t: float) -> CorrectionState:
    """Exact corrections (xi1, eta1) of the linear model at time t.

    xi1(0) = (Laplacian u0(0) - (Laplacian + lam) conj(v0(0))) / 4 and
    eta1(0) = (Laplacian v0(0) - (Laplacian + lam) conj(u0(0))) / 4.
    """
    start = initial_nls_pair(data)
    laplacian = laplacian_symbol()
    u0, v0 = start.u0, start.v0

    xi_initial = 0.25 * (
        apply_symbol(u0, laplacian) - apply_symbol(v0.conj(), laplacian) - lam * v0.conj()
    )
    eta_initial = 0.25 * (
        apply_symbol(v0, laplacian) - apply_symbol(u0.conj(), laplacian) - lam * u0.conj()
    )

    rates = _rates(data, lam)
    return CorrectionState(
        xi1=_resonant(xi_initial, u0, rates, t),
        eta1=_resonant(eta_initial, v0, rates, t),
        t=t,
    )


def linear_correction_exact(data: InitialData, lam: float, c: float, t: float) -> Field:
    """Closed-form second term z1 of the linear expansion.

    Per mode a, with omega = c^2 + (a^2 - lam)/2 and d = a^2 - lam:

        phi_a (d^2 t / 8) sin(omega t)
        + gamma_a (-(d/2) sin(omega t) - (d^2 t / 8) cos(omega t))
    """
    shift = data.grid.modes.astype(float) ** 2 - lam
    omega_t = np.mod(c ** 2 * t, 2.0 * np.pi) + 0.5 * shift * t
    secular = shift ** 2 * t / 8.0
    coeffs = data.phi.coeffs * secular * np.sin(omega_t) + data.gamma.coeffs * (
        -0.5 * shift * np.sin(omega_t) - secular * np.cos(omega_t)
    )
    return Field(grid=data.grid, coeffs=coeffs)
