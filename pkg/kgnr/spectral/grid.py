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

"""Periodic grid and Fourier transforms."""
import logging
from typing import Final

import numpy as np

from kgnr.errors import ConfigurationError, ShapeError

logger = logging.getLogger(__name__)

DOMAIN_LENGTH: Final[float] = 2.0 * np.pi


def _read_only(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


class SpectralGrid:
    """Equispaced grid of 2K points on the torus [0, 2pi).

    Coefficient arrays use numpy's FFT ordering, so ``modes`` reads
    ``0, 1, ..., K-1, -K, ..., -1``.

    :param num_modes: K, half the number of grid points.
    :param dealias: Truncate nonlinear products to modes |k| <= 2K/3.
    """

    def __init__(self, *, num_modes: int, dealias: bool = False) -> None:
        self.num_modes: Final[int] = num_modes
        self.num_points: Final[int] = 2 * num_modes
        self.dealias: Final[bool] = dealias
        self.mesh: Final[float] = 1.0 / num_modes
        self.spacing: Final[float] = DOMAIN_LENGTH / self.num_points
        self.points: Final[np.ndarray] = _read_only(
            np.arange(self.num_points) * self.spacing
        )
        self.modes: Final[np.ndarray] = _read_only(
            np.rint(np.fft.fftfreq(self.num_points, d=1.0 / self.num_points)).astype(
                np.int64
            )
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpectralGrid):
            return NotImplemented
        return (self.num_modes, self.dealias) == (other.num_modes, other.dealias)

    def __hash__(self) -> int:
        return hash((self.num_modes, self.dealias))

    def __repr__(self) -> str:
        """Return representation."""
        return f"SpectralGrid(num_modes={self.num_modes}, dealias={self.dealias})"

    def index_of(self, mode: int) -> int:
        """Position of a mode in a coefficient array.

        :param mode: Integer frequency in [-K, K-1].

        :returns: Array index.

        :raises ShapeError: If the mode is not resolved by the grid.
        """
        if not -self.num_modes <= mode < self.num_modes:
            raise ShapeError(
                reason=f"Mode {mode} outside [-{self.num_modes}, {self.num_modes - 1}]"
            )
        return mode % self.num_points

    @property
    def dealias_mask(self) -> np.ndarray:
        """Boolean mask of modes kept by the 2/3 rule."""
        return 3 * np.abs(self.modes) <= 2 * self.num_modes


def make_grid(num_modes: int, *, dealias: bool = False) -> SpectralGrid:
    """Create a grid with 2K points on [0, 2pi).

    :param num_modes: K, a power of two no smaller than 2.
    :param dealias: Enable the 2/3 rule for nonlinear products.

    :returns: The grid.

    :raises ConfigurationError: If K is not a power of two >= 2.
    """
    if (
        not isinstance(num_modes, (int, np.integer))
        or isinstance(num_modes, bool)
        or num_modes < 2
        or num_modes & (num_modes - 1)
    ):
        raise ConfigurationError(
            reason=f"Number of modes must be a power of two >= 2, got {num_modes!r}"
        )

    logger.debug("Creating grid with %d points.", 2 * num_modes)
    return SpectralGrid(num_modes=int(num_modes), dealias=dealias)


def _check_length(array: np.ndarray, grid: SpectralGrid) -> np.ndarray:
    array = np.asarray(array, dtype=complex)
    if array.shape != (grid.num_points,):
        raise ShapeError(
            reason=f"Expected {grid.num_points} samples, got shape {array.shape}"
        )
    return array


def forward(values: np.ndarray, *, grid: SpectralGrid) -> np.ndarray:
    """Fourier coefficients of grid samples.

    Normalized so that the constant 1 maps to coefficient 1 at k=0.

    :param values: Samples at ``grid.points``.
    :param grid: Grid the samples live on.

    :returns: Coefficients in FFT ordering.

    :raises ShapeError: On length mismatch.
    """
    values = _check_length(values, grid)
    return np.fft.fft(values) / grid.num_points


def inverse(coeffs: np.ndarray, *, grid: SpectralGrid) -> np.ndarray:
    """Grid samples of a coefficient array.

    :param coeffs: Coefficients in FFT ordering.
    :param grid: Grid to sample on.

    :returns: Values at ``grid.points``.

    :raises ShapeError: On length mismatch.
    """
    coeffs = _check_length(coeffs, grid)
    return np.fft.ifft(coeffs) * grid.num_points


def torus_integral(values: np.ndarray) -> complex:
    """Trapezoidal quadrature over the torus.

    Exact for trigonometric polynomials of degree below the number of samples.

    :param values: Samples on an equispaced grid of [0, 2pi).

    :returns: Approximation of the integral.
    """
    values = np.asarray(values)
    return complex(DOMAIN_LENGTH / values.shape[-1] * np.sum(values, axis=-1))
