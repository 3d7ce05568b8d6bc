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

"""Initial data and built-in presets."""
import enum
import logging
from typing import Any, Dict, Final, Mapping, Tuple

import numpy as np

from kgnr.errors import ConfigurationError, ShapeError
from kgnr.spectral import Field, SpectralGrid, sobolev_norm

logger = logging.getLogger(__name__)

TABLE_KEYS: Final[Tuple[str, ...]] = ("phi", "gamma")


class InitialData:
    """Initial values z(0) = phi and z_t(0) = c^2 gamma.

    Both fields are independent of c.

    :param phi: Initial position.
    :param gamma: Initial velocity divided by c^2.
    """

    def __init__(self, *, phi: Field, gamma: Field) -> None:
        if phi.grid != gamma.grid:
            raise ShapeError(reason="phi and gamma must share a grid")

        self.phi: Final[Field] = phi
        self.gamma: Final[Field] = gamma

    @property
    def grid(self) -> SpectralGrid:
        """Grid of both fields."""
        return self.phi.grid

    def is_real(self, *, tolerance: float = 1e-12) -> bool:
        """Whether phi and gamma are both real valued."""
        return self.phi.is_real(tolerance=tolerance) and self.gamma.is_real(
            tolerance=tolerance
        )

    def normalized(self, *, s: float = 1.0) -> "InitialData":
        """Scale phi and gamma to unit H^s norm each.

        Zero fields are left untouched.
        """

        def _scale(field: Field) -> Field:
            norm = sobolev_norm(field, s)
            return field if norm == 0.0 else field / norm

        return InitialData(phi=_scale(self.phi), gamma=_scale(self.gamma))

    def __repr__(self) -> str:
        """Return representation."""
        return f"InitialData(phi={self.phi!r}, gamma={self.gamma!r})"


class InitialDataPreset(enum.Enum):
    """Built-in initial data."""

    COMPLEX_MIXED = "complex_mixed"
    REAL_MIXED = "real_mixed"
    SINGLE_MODE = "single_mode"


def preset_initial_data(preset: InitialDataPreset, *, grid: SpectralGrid) -> InitialData:
    """Sample a preset on a grid.

    - complex_mixed: phi = ((2+i)/sqrt 5) cos x, gamma = ((1+i)/sqrt 2) sin x + cos(x)/2
    - real_mixed: phi = cos x, gamma = sin(x)/4 + cos(x)/2
    - single_mode: phi = exp(ix), gamma = 0

    :param preset: Preset to build.
    :param grid: Grid to sample on.

    :returns: The initial data.
    """
    if preset == InitialDataPreset.COMPLEX_MIXED:
        phi = Field.from_function(grid, lambda x: (2 + 1j) / np.sqrt(5) * np.cos(x))
        gamma = Field.from_function(
            grid, lambda x: (1 + 1j) / np.sqrt(2) * np.sin(x) + 0.5 * np.cos(x)
        )
    elif preset == InitialDataPreset.REAL_MIXED:
        phi = Field.from_function(grid, np.cos)
        gamma = Field.from_function(grid, lambda x: 0.25 * np.sin(x) + 0.5 * np.cos(x))
    elif preset == InitialDataPreset.SINGLE_MODE:
        phi = Field.from_modes(grid, {1: 1.0})
        gamma = Field.zeros(grid)
    else:
        raise ConfigurationError(reason=f"Unknown initial data preset {preset!r}")

    return InitialData(phi=phi, gamma=gamma)


def _parse_coefficient(value: Any) -> complex:
    reason = f"Fourier coefficient must be a number or [re, im], got {value!r}"
    if isinstance(value, (list, tuple)) and len(value) == 2:
        try:
            return complex(float(value[0]), float(value[1]))
        except (TypeError, ValueError) as error:
            raise ConfigurationError(reason=reason) from error
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    raise ConfigurationError(reason=reason)


def _parse_modes(table: Any, *, name: str) -> Dict[int, complex]:
    if not isinstance(table, Mapping):
        raise ConfigurationError(
            reason=f"{name!r} must map modes to coefficients, got {table!r}"
        )

    modes: Dict[int, complex] = {}
    for key, value in table.items():
        try:
            mode = int(key)
        except (TypeError, ValueError) as error:
            raise ConfigurationError(
                reason=f"Invalid mode {key!r} in {name!r} table"
            ) from error
        modes[mode] = _parse_coefficient(value)
    return modes


def initial_data_from_table(
    table: Mapping[str, Mapping[Any, Any]], *, grid: SpectralGrid
) -> InitialData:
    """Build initial data from Fourier coefficient tables.

    Expected shape: ``{"phi": {"1": [0.5, 0.0], ...}, "gamma": {...}}``.

    :raises ConfigurationError: On malformed tables, unknown keys or unresolved modes.
    """
    unknown = sorted(str(key) for key in set(table) - set(TABLE_KEYS))
    if unknown:
        raise ConfigurationError(
            reason=f"Unknown initial data keys: {', '.join(unknown)}, expected phi and gamma"
        )

    fields = {}
    for name in TABLE_KEYS:
        modes = _parse_modes(table.get(name, {}), name=name)
        try:
            fields[name] = Field.from_modes(grid, modes)
        except ShapeError as error:
            raise ConfigurationError(reason=f"{name}: {error.reason}") from error

    logger.debug("Loaded custom initial data with %d modes.", len(table))
    return InitialData(phi=fields["phi"], gamma=fields["gamma"])
