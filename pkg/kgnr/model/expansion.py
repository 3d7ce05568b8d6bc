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

"""Large-c expansions of the relativistic symbols.

c sqrt(k^2 + c^2) = c^2 + k^2/2 + sum_{n>=1} alpha_{n+1} c^(-2n) k^(2n+2)
c / sqrt(k^2 + c^2) = 1 + sum_{n>=1} beta_n c^(-2n) k^(2n)

where alpha_n and beta_n are the binomial coefficients of sqrt(1+x) and
(1+x)^(-1/2).
"""
import enum
import logging
from typing import Union

import numpy as np
from scipy.special import binom

from kgnr.errors import ParameterError

logger = logging.getLogger(__name__)


class TaylorKind(enum.Enum):
    """Which expansion to take coefficients from."""

    ALPHA = "alpha"
    BETA = "beta"


_EXPONENTS = {TaylorKind.ALPHA: 0.5, TaylorKind.BETA: -0.5}


def taylor_coefficients(kind: TaylorKind, n: int) -> float:
    """Coefficient n of the sqrt(1+x) (alpha) or (1+x)^(-1/2) (beta) series.

    alpha_2 = -1/8 gives the -k^4/(8c^2) term of c sqrt(k^2+c^2) and
    beta_1 = -1/2 gives c <nabla>_c^-1 = 1 + Laplacian/(2c^2) + ...

    :raises ParameterError: If n < 1.
    """
    if n < 1:
        raise ParameterError(reason=f"Coefficient index must be >= 1, got {n}")
    return float(binom(_EXPONENTS[kind], n))


def dispersion_remainder(
    k: Union[float, np.ndarray], c: float, order: int
) -> Union[float, np.ndarray]:
    """Remainder of the order-N expansion of c sqrt(k^2 + c^2).

    Returns c sqrt(k^2+c^2) - c^2 - k^2/2 - sum_{n=1}^{N} alpha_{n+1} c^(-2n) k^(2n+2),
    evaluated without cancellation against the c^2 term.

    :param k: Mode(s).
    :param c: Speed of light.
    :param order: N >= 0.
    """
    if order < 0:
        raise ParameterError(reason=f"Expansion order must be >= 0, got {order}")
    k = np.asarray(k, dtype=float)
    # c sqrt(k^2+c^2) - c^2 - k^2/2 = -k^4 / (2 (c + sqrt(k^2+c^2))^2)
    remainder = -(k ** 4) / (2.0 * (c + np.sqrt(k ** 2 + c ** 2)) ** 2)
    for n in range(1, order + 1):
        remainder = remainder - taylor_coefficients(TaylorKind.ALPHA, n + 1) * c ** (
            -2 * n
        ) * k ** (2 * n + 2)
    return remainder


def remainder_constant(modes: np.ndarray, c: float, order: int) -> float:
    """Smallest C with |remainder| <= C c^(-2N-2) (1+|k|)^(2N+4) on the given modes."""
    modes = np.asarray(modes, dtype=float)
    scaled = (
        np.abs(dispersion_remainder(modes, c, order))
        * c ** (2 * order + 2)
        / (1.0 + np.abs(modes)) ** (2 * order + 4)
    )
    return float(np.max(scaled))
