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

"""First-order reformulation of the Klein-Gordon equation.

With u = z - i c^-1 <nabla>_c^-1 z_t and v = conj(z) - i c^-1 <nabla>_c^-1 conj(z_t)
the equation becomes i w_t = -c <nabla>_c w + c <nabla>_c^-1 F(w) for w = (u, v).
"""
import logging
from typing import Final, Tuple

import numpy as np

from kgnr.errors import ParameterError, ShapeError
from kgnr.spectral import (
    Field,
    apply_symbol,
    bracket_symbol,
    laplacian_symbol,
    scaled_inverse_bracket_symbol,
)

from .initial_data import InitialData

logger = logging.getLogger(__name__)


class FirstOrderState:
    """The pair w = (u, v) at time t.

    :param u: First component.
    :param v: Second component.
    :param t: Time.
    """

    def __init__(self, *, u: Field, v: Field, t: float = 0.0) -> None:
        if u.grid != v.grid:
            raise ShapeError(reason="u and v must share a grid")

        self.u: Final[Field] = u
        self.v: Final[Field] = v
        self.t: Final[float] = float(t)

    def __repr__(self) -> str:
        """Return representation."""
        return f"FirstOrderState(u={self.u!r}, v={self.v!r}, t={self.t})"


def to_first_order(z: Field, zt: Field, c: float, *, t: float = 0.0) -> FirstOrderState:
    """Map (z, z_t) to (u, v).

    :param z: Solution.
    :param zt: Its time derivative.
    :param c: Speed of light.
    :param t: Time stamp of the state.

    :returns: The first-order state.

    :raises ShapeError: If z and zt live on different grids.
    """
    if z.grid != zt.grid:
        raise ShapeError(reason="z and zt must share a grid")

    # c^-1 <nabla>_c^-1 = c^-2 (c <nabla>_c^-1)
    symbol = scaled_inverse_bracket_symbol(c)
    u = z - (1j / c ** 2) * apply_symbol(zt, symbol)
    v = z.conj() - (1j / c ** 2) * apply_symbol(zt.conj(), symbol)
    return FirstOrderState(u=u, v=v, t=t)


def from_first_order(state: FirstOrderState) -> Field:
    """Recover z = (u + conj(v)) / 2."""
    return 0.5 * (state.u + state.v.conj())


def velocity_from_first_order(state: FirstOrderState, c: float) -> Field:
    """Recover z_t = (i c / 2) <nabla>_c (u - conj(v))."""
    return (0.5j * c) * apply_symbol(state.u - state.v.conj(), bracket_symbol(c))


def initial_state(data: InitialData, c: float) -> FirstOrderState:
    """First-order initial value psi for z(0) = phi, z_t(0) = c^2 gamma."""
    return to_first_order(data.phi, c ** 2 * data.gamma, c)


def nonlinear_values(values: np.ndarray, lam: float, p: int) -> np.ndarray:
    """Pointwise lam |z|^(2p) z on raw samples."""
    if p == 0:
        return lam * values
    modulus_squared = values.real ** 2 + values.imag ** 2
    return lam * modulus_squared ** p * values


def nonlinearity_f(z: Field, lam: float, p: int) -> Field:
    """Evaluate f(z) = lam |z|^(2p) z on the grid.

    :raises ParameterError: If p is negative.
    """
    if p < 0:
        raise ParameterError(reason=f"Nonlinearity degree must be nonnegative, got {p}")
    return Field.from_values(z.grid, nonlinear_values(z.values, lam, p)).dealiased()


def f_vector(state: FirstOrderState, lam: float, p: int) -> Tuple[Field, Field]:
    """F(w) = (f((u + conj v)/2), f((conj u + v)/2)).

    Since f is real, the second component is the conjugate of the first.
    """
    z_values = 0.5 * (state.u.values + np.conj(state.v.values))
    f_values = nonlinear_values(z_values, lam, p)
    grid = state.u.grid
    return (
        Field.from_values(grid, f_values).dealiased(),
        Field.from_values(grid, np.conj(f_values)).dealiased(),
    )


def psi_expansion_term(n: int, data: InitialData) -> Tuple[Field, Field]:
    """Term n of the c^-2 expansion of the first-order initial value.

    psi_0 = (phi - i gamma, conj(phi) - i conj(gamma)) and
    psi_1 = -(i/2) Laplacian (gamma, conj(gamma)).

    :param n: Expansion order, 0 or 1.
    :param data: Initial data.

    :returns: Both components of the term.

    :raises ParameterError: For n outside {0, 1}.
    """
    if n == 0:
        return data.phi - 1j * data.gamma, data.phi.conj() - 1j * data.gamma.conj()
    if n == 1:
        laplacian = laplacian_symbol()
        return (
            -0.5j * apply_symbol(data.gamma, laplacian),
            -0.5j * apply_symbol(data.gamma.conj(), laplacian),
        )
    raise ParameterError(reason=f"Expansion term {n} is not constructed, use 0 or 1")
