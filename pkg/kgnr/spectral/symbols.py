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

"""Fourier multiplier operators."""
import logging
from typing import Callable, Final, Union

import numpy as np

from kgnr.errors import ParameterError

from .field import Field

logger = logging.getLogger(__name__)


class MultiplierSymbol:
    """Diagonal operator acting on Fourier coefficients.

    :param evaluate: Map from an integer mode array to multipliers.
    :param name: Label used in representations.
    """

    def __init__(self, *, evaluate: Callable[[np.ndarray], np.ndarray], name: str) -> None:
        self._evaluate = evaluate
        self.name: Final[str] = name

    def __call__(self, modes: Union[int, np.ndarray]) -> np.ndarray:
        return np.asarray(self._evaluate(np.asarray(modes, dtype=float)), dtype=complex)

    def __repr__(self) -> str:
        """Return representation."""
        return f"MultiplierSymbol(name={self.name!r})"


def apply_symbol(field: Field, symbol: MultiplierSymbol) -> Field:
    """Scale every coefficient of a field by its multiplier.

    :param field: Field to transform.
    :param symbol: Multiplier evaluated on ``field.grid.modes``.

    :returns: The transformed field.
    """
    return Field(grid=field.grid, coeffs=symbol(field.grid.modes) * field.coeffs)


def _check_speed(c: float) -> None:
    if not c > 0:
        raise ParameterError(reason=f"Speed of light must be positive, got {c}")


def bracket_symbol(c: float) -> MultiplierSymbol:
    """Symbol sqrt(k^2 + c^2) of the relativistic bracket operator."""
    _check_speed(c)
    return MultiplierSymbol(evaluate=lambda k: np.sqrt(k ** 2 + c ** 2), name=f"bracket(c={c})")


def scaled_inverse_bracket_symbol(c: float) -> MultiplierSymbol:
    """Symbol c / sqrt(k^2 + c^2), bounded by one for every mode."""
    _check_speed(c)
    return MultiplierSymbol(
        evaluate=lambda k: c / np.sqrt(k ** 2 + c ** 2),
        name=f"scaled_inverse_bracket(c={c})",
    )


def laplacian_symbol() -> MultiplierSymbol:
    """Symbol -k^2."""
    return MultiplierSymbol(evaluate=lambda k: -(k ** 2), name="laplacian")


def bilaplacian_symbol() -> MultiplierSymbol:
    """Symbol k^4."""
    return MultiplierSymbol(evaluate=lambda k: k ** 4, name="bilaplacian")


def kg_phase_symbol(k: Union[int, np.ndarray], c: float, t: float) -> np.ndarray:
    """Multiplier exp(i t c sqrt(k^2 + c^2)) of the linear relativistic flow.

    :param k: Mode or array of modes.
    :param c: Speed of light, positive.
    :param t: Time.

    :returns: Unit-modulus multiplier(s).
    """
    _check_speed(c)
    k = np.asarray(k, dtype=float)
    return np.exp(1j * t * c * np.sqrt(k ** 2 + c ** 2))


def kg_flow_symbol(c: float, t: float) -> MultiplierSymbol:
    """Linear relativistic flow exp(i t c <nabla>_c) as a symbol."""
    _check_speed(c)
    return MultiplierSymbol(
        evaluate=lambda k: kg_phase_symbol(k, c, t), name=f"kg_flow(c={c}, t={t})"
    )


def schroedinger_flow_symbol(t: float) -> MultiplierSymbol:
    """Exact flow over time t of i w_t = (1/2) w_xx, i.e. exp(i k^2 t / 2)."""
    return MultiplierSymbol(
        evaluate=lambda k: np.exp(0.5j * t * k ** 2), name=f"schroedinger_flow(t={t})"
    )
