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

"""Charge, energy and their large-c expansion leaders."""
import enum
import logging
from typing import Final, Tuple, Union

import numpy as np

from kgnr.errors import ParameterError, QuantityError, ShapeError
from kgnr.limit import NLSPair
from kgnr.model import FirstOrderState, KGParams
from kgnr.reconstruction import oscillatory_phase
from kgnr.spectral import (
    Field,
    apply_symbol,
    bracket_symbol,
    gradient_energy,
    l2_norm,
    torus_integral,
)

logger = logging.getLogger(__name__)

IMAGINARY_TOLERANCE: Final[float] = 1e-11


class QuantityName(enum.Enum):
    """Diagnostic quantities."""

    Q = "Q"
    E = "E"
    Q0 = "Q0"
    E0 = "E0"
    EREST = "Erest"


class QuantityReport:
    """Value of a diagnostic quantity at time t.

    Complex values are accepted when the imaginary part is quadrature residue.

    :param name: Quantity.
    :param value: Its value.
    :param t: Time.
    :param params: Model parameters it was evaluated with.

    :raises QuantityError: If the imaginary part exceeds 1e-11 relative.
    """

    def __init__(
        self,
        *,
        name: QuantityName,
        value: Union[float, complex],
        t: float,
        params: KGParams,
    ) -> None:
        self.name: Final[QuantityName] = name
        self.value: Final[float] = _real(complex(value), name=name.value)
        self.t: Final[float] = float(t)
        self.params: Final[KGParams] = params

    def __repr__(self) -> str:
        """Return representation."""
        return (
            f"QuantityReport(name={self.name.value}, value={self.value!r}, "
            f"t={self.t}, params={self.params!r})"
        )


def _real(value: complex, *, name: str) -> float:
    if abs(value.imag) > IMAGINARY_TOLERANCE * max(1.0, abs(value.real)):
        raise QuantityError(
            reason=f"{name} has imaginary residue {value.imag:.3g} (real part {value.real:.17g})"
        )
    return float(value.real)


def _check_grids(first: Field, second: Field) -> None:
    if first.grid != second.grid:
        raise ShapeError(reason="Fields must share a grid")


def _potential_integral(z_values: np.ndarray, lam: float, p: int) -> float:
    modulus = z_values.real ** 2 + z_values.imag ** 2
    return lam / (p + 1) * _real(torus_integral(modulus ** (p + 1)), name="potential")


def charge_z(z: Field, zt: Field, c: float) -> float:
    """Charge Q = integral of Re(-(i/c^2) z_t conj(z))."""
    _check_grids(z, zt)
    integrand = (-1j / c ** 2 * zt.values * np.conj(z.values)).real
    return _real(torus_integral(integrand), name="Q")


def energy_z(z: Field, zt: Field, params: KGParams) -> float:
    """Energy E = integral of |z_t/c|^2 + |z_x|^2 + c^2 |z|^2 - lam/(p+1) |z|^(2p+2)."""
    _check_grids(z, zt)
    c = params.c
    kinetic = _real(torus_integral(np.abs(zt.values) ** 2), name="E") / c ** 2
    mass = c ** 2 * _real(torus_integral(np.abs(z.values) ** 2), name="E")
    return kinetic + gradient_energy(z) + mass - _potential_integral(z.values, params.lam, params.p)


def charge_uv(state: FirstOrderState, c: float) -> float:
    """Charge in first-order variables.

    (1/4) integral of Re((<nabla>_c/c)(u - conj v) conj(u + conj v))
    """
    u, v_bar = state.u, state.v.conj()
    difference = apply_symbol(u - v_bar, bracket_symbol(c)) / c
    integrand = (difference.values * np.conj((u + v_bar).values)).real
    return 0.25 * _real(torus_integral(integrand), name="Q")


def energy_uv(state: FirstOrderState, params: KGParams) -> float:
    """Energy in first-order variables using the exact substitutions.

    z = (u + conj v)/2 and z_t = (i c/2) <nabla>_c (u - conj v); the quadratic part
    is evaluated in Fourier space with the full symbol.
    """
    c = params.c
    u, v_bar = state.u, state.v.conj()
    z = 0.5 * (u + v_bar)
    difference = 0.5 * (u - v_bar)
    modes = u.grid.modes.astype(float)
    weight = 2.0 * np.pi * (modes ** 2 + c ** 2)
    # |z_t/c|^2 + |z_x|^2 + c^2|z|^2 = (k^2 + c^2)(|d_k|^2 + |z_k|^2) per mode
    quadratic = float(
        np.sum(weight * (np.abs(difference.coeffs) ** 2 + np.abs(z.coeffs) ** 2))
    )
    return quadratic - _potential_integral(z.values, params.lam, params.p)


def charge_uv_expansion(state: FirstOrderState, c: float, order: int) -> float:
    """Truncated charge (1/4)(|u|^2 - |v|^2) + order (|u_x|^2 - |v_x|^2) / (8 c^2).

    :raises ParameterError: For order outside {0, 1}.
    """
    q_u, q_v = _split_charges(state, c, order)
    return q_u + q_v


def charge0(w: NLSPair) -> float:
    """Leading charge Q0 = (|u0|^2 - |v0|^2) / 4."""
    norm_u, norm_v = w.norms()
    return 0.25 * (norm_u ** 2 - norm_v ** 2)


def energy_leading(w: NLSPair) -> float:
    """Coefficient of c^2 in the energy, (|u0|^2 + |v0|^2) / 2."""
    norm_u, norm_v = w.norms()
    return 0.5 * (norm_u ** 2 + norm_v ** 2)


def energy0(w: NLSPair, t: float, c: float, params: KGParams) -> float:
    """Leading reduced energy.

    (1/4)(|u0_x|^2 + |v0_x|^2) - lam/(p+1) |(u0 + conj(v0) e^{-2ic^2t})/2|^(2p+2)
    """
    phase = oscillatory_phase(c, t, -2)
    z_values = 0.5 * (w.u0.values + np.conj(w.v0.values) * phase)
    gradients = 0.25 * (gradient_energy(w.u0) + gradient_energy(w.v0))
    return gradients - _potential_integral(z_values, params.lam, params.p)


def _split_charges(state: FirstOrderState, c: float, order: int) -> Tuple[float, float]:
    if order not in (0, 1):
        raise ParameterError(reason=f"Truncation order must be 0 or 1, got {order}")

    def _charge(field: Field) -> float:
        return 0.25 * (l2_norm(field) ** 2 + order * gradient_energy(field) / (2.0 * c ** 2))

    return _charge(state.u), -_charge(state.v)


def rest_energy_split(state: FirstOrderState, c: float, order: int) -> Tuple[float, float, float]:
    """Particle and antiparticle charges and the rest energy.

    Q^u(u) = (1/4) integral of |u|^2 + order |u_x|^2 / (2 c^2), Q^v(v) = -Q^u(v),
    so Q^u + Q^v is the truncated charge and E_rest = 2 c^2 (Q^u - Q^v).

    :param state: First-order state.
    :param c: Speed of light.
    :param order: Truncation order, 0 or 1.

    :returns: (Q^u, Q^v, E_rest).

    :raises ParameterError: For order outside {0, 1}.
    """
    q_u, q_v = _split_charges(state, c, order)
    return q_u, q_v, 2.0 * c ** 2 * (q_u - q_v)


def reduced_energy(state: FirstOrderState, params: KGParams, order: int = 1) -> float:
    """Energy with the rest energy removed, E - E_rest."""
    _, _, rest = rest_energy_split(state, params.c, order)
    return energy_uv(state, params) - rest
