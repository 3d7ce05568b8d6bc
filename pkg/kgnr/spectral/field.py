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

"""Periodic fields."""
import logging
import numbers
from typing import Callable, Final, Mapping, Optional, Union

import numpy as np

from kgnr.errors import ParameterError, ShapeError

from .grid import DOMAIN_LENGTH, SpectralGrid, forward, inverse

logger = logging.getLogger(__name__)

Scalar = Union[complex, float, int]


class Field:
    """Complex periodic function stored by its Fourier coefficients.

    Grid values are a derived view computed on first access.  Instances are
    immutable.

    :param grid: Grid the field is resolved on.
    :param coeffs: Coefficients in FFT ordering, one per grid point.
    """

    # Make numpy scalars defer to __rmul__.
    __array_ufunc__ = None

    def __init__(self, *, grid: SpectralGrid, coeffs: np.ndarray) -> None:
        coeffs = np.array(coeffs, dtype=complex)
        if coeffs.shape != (grid.num_points,):
            raise ShapeError(
                reason=f"Expected {grid.num_points} coefficients, got shape {coeffs.shape}"
            )
        coeffs.setflags(write=False)

        self.grid: Final[SpectralGrid] = grid
        self.coeffs: Final[np.ndarray] = coeffs
        self._values: Optional[np.ndarray] = None

    @classmethod
    def from_values(cls, grid: SpectralGrid, values: np.ndarray) -> "Field":
        """Create a field from samples at ``grid.points``."""
        return cls(grid=grid, coeffs=forward(values, grid=grid))

    @classmethod
    def from_function(
        cls, grid: SpectralGrid, func: Callable[[np.ndarray], np.ndarray]
    ) -> "Field":
        """Create a field by sampling ``func`` at the grid points."""
        values = np.broadcast_to(func(grid.points), (grid.num_points,))
        return cls.from_values(grid, values)

    @classmethod
    def from_modes(cls, grid: SpectralGrid, modes: Mapping[int, Scalar]) -> "Field":
        """Create a trigonometric polynomial from a mode -> coefficient table.

        :raises ShapeError: If a mode is not resolved by the grid.
        """
        coeffs = np.zeros(grid.num_points, dtype=complex)
        for mode, coeff in modes.items():
            coeffs[grid.index_of(int(mode))] += coeff
        return cls(grid=grid, coeffs=coeffs)

    @classmethod
    def zeros(cls, grid: SpectralGrid) -> "Field":
        """Create the zero field."""
        return cls(grid=grid, coeffs=np.zeros(grid.num_points, dtype=complex))

    @property
    def values(self) -> np.ndarray:
        """Samples at the grid points."""
        if self._values is None:
            values = inverse(self.coeffs, grid=self.grid)
            values.setflags(write=False)
            self._values = values
        return self._values

    def coefficient(self, mode: int) -> complex:
        """Coefficient of a single mode."""
        return complex(self.coeffs[self.grid.index_of(mode)])

    def conj(self) -> "Field":
        """Complex conjugate, computed in coefficient space."""
        # Coefficient k of conj(f) is conj(coefficient -k of f).
        return Field(grid=self.grid, coeffs=np.conj(np.roll(self.coeffs[::-1], 1)))

    def abs_squared(self) -> np.ndarray:
        """Pointwise squared modulus on the grid."""
        values = self.values
        return values.real ** 2 + values.imag ** 2

    def dealiased(self) -> "Field":
        """Apply the 2/3 rule if the grid asks for it."""
        if not self.grid.dealias:
            return self
        return Field(grid=self.grid, coeffs=np.where(self.grid.dealias_mask, self.coeffs, 0))

    def is_real(self, *, tolerance: float = 1e-12) -> bool:
        """Whether the grid values are real to a relative tolerance."""
        scale = max(1.0, float(np.max(np.abs(self.values), initial=0.0)))
        return bool(np.max(np.abs(self.values.imag), initial=0.0) <= tolerance * scale)

    def _check_compatible(self, other: "Field") -> None:
        if self.grid != other.grid:
            raise ShapeError(reason=f"Grid mismatch: {self.grid!r} != {other.grid!r}")

    def __add__(self, other: "Field") -> "Field":
        if not isinstance(other, Field):
            return NotImplemented
        self._check_compatible(other)
        return Field(grid=self.grid, coeffs=self.coeffs + other.coeffs)

    def __sub__(self, other: "Field") -> "Field":
        if not isinstance(other, Field):
            return NotImplemented
        self._check_compatible(other)
        return Field(grid=self.grid, coeffs=self.coeffs - other.coeffs)

    def __neg__(self) -> "Field":
        return Field(grid=self.grid, coeffs=-self.coeffs)

    def __mul__(self, other: Union["Field", Scalar]) -> "Field":
        if isinstance(other, Field):
            # Pointwise product, evaluated pseudo-spectrally.
            self._check_compatible(other)
            return Field.from_values(self.grid, self.values * other.values)
        if isinstance(other, numbers.Number):
            return Field(grid=self.grid, coeffs=self.coeffs * complex(other))  # type: ignore
        return NotImplemented

    def __rmul__(self, other: Scalar) -> "Field":
        if isinstance(other, numbers.Number):
            return Field(grid=self.grid, coeffs=self.coeffs * complex(other))  # type: ignore
        return NotImplemented

    def __truediv__(self, other: Scalar) -> "Field":
        if isinstance(other, numbers.Number):
            return Field(grid=self.grid, coeffs=self.coeffs / complex(other))  # type: ignore
        return NotImplemented

    def __repr__(self) -> str:
        """Return representation."""
        return f"Field(grid={self.grid!r}, l2={l2_norm(self):.6g})"


def sobolev_norm(field: Field, s: float) -> float:
    """H^s norm on coefficients, sqrt(sum (1+|k|)^(2s) |c_k|^2).

    For s=0 this is the coefficient l2 norm; the L2 integral norm is
    ``l2_norm``.

    :raises ParameterError: If s is negative.
    """
    if s < 0:
        raise ParameterError(reason=f"Sobolev index must be nonnegative, got {s}")
    weights = (1.0 + np.abs(field.grid.modes)) ** (2.0 * s)
    return float(np.sqrt(np.sum(weights * np.abs(field.coeffs) ** 2)))


def l2_norm(field: Field) -> float:
    """L2 norm over the torus, (integral of |f|^2)^(1/2)."""
    return float(np.sqrt(DOMAIN_LENGTH) * sobolev_norm(field, 0))


def gradient_energy(field: Field) -> float:
    """Integral of |f'|^2 over the torus, evaluated spectrally."""
    modes = field.grid.modes
    return float(DOMAIN_LENGTH * np.sum(modes ** 2 * np.abs(field.coeffs) ** 2))
