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

"""Pointwise 2x2 linear algebra for the correction potential step."""
from typing import Final, Tuple

import numpy as np

SERIES_THRESHOLD: Final[float] = 1e-12

Matrix = Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]


def potential_matrix(u0: np.ndarray, lam: float) -> Matrix:
    """Real form of xi -> -i ((3 lam / 4) |u0|^2 xi + (3 lam / 8) u0^2 conj(xi)).

    With xi = alpha + i beta and u0 = alpha0 + i beta0 the map acts on
    (alpha, beta) as (3 lam / 8) [[2 a0 b0, a0^2 + 3 b0^2], [-(b0^2 + 3 a0^2), -2 a0 b0]].

    :param u0: Grid values of u0.
    :param lam: Nonlinearity strength.

    :returns: Entries (m11, m12, m21, m22), one array each.
    """
    alpha0, beta0 = u0.real, u0.imag
    scale = 3.0 * lam / 8.0
    m11 = scale * 2.0 * alpha0 * beta0
    m12 = scale * (alpha0 ** 2 + 3.0 * beta0 ** 2)
    m21 = -scale * (beta0 ** 2 + 3.0 * alpha0 ** 2)
    return m11, m12, m21, -m11


def traceless_expm(m11: np.ndarray, m12: np.ndarray, m21: np.ndarray) -> Matrix:
    """Exponential of traceless 2x2 matrices [[m11, m12], [m21, -m11]].

    exp(M) = cosh(mu) I + sinh(mu)/mu M with mu^2 = -det M.  Near mu^2 = 0
    the Taylor series of both functions is used.
    """
    m11 = np.asarray(m11, dtype=float)
    mu_squared = m11 ** 2 + np.asarray(m12) * np.asarray(m21)
    mu = np.sqrt(mu_squared.astype(complex))
    small = np.abs(mu_squared) < SERIES_THRESHOLD
    safe_mu = np.where(small, 1.0, mu)

    cosh = np.where(small, 1.0 + mu_squared / 2.0 + mu_squared ** 2 / 24.0, np.cosh(mu).real)
    sinhc = np.where(
        small, 1.0 + mu_squared / 6.0 + mu_squared ** 2 / 120.0, (np.sinh(safe_mu) / safe_mu).real
    )
    return cosh + sinhc * m11, sinhc * m12, sinhc * m21, cosh - sinhc * m11
