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

"""Reconstruction of z from limit-system states."""
import enum
import logging
from typing import Final

import numpy as np

from kgnr.errors import SchedulingError, UnsupportedRegimeError
from kgnr.limit import CorrectionState, NLSPair
from kgnr.model import FirstOrderState
from kgnr.spectral import Field

logger = logging.getLogger(__name__)


class ApproximationOrder(enum.Enum):
    """Accuracy in c of a reconstruction."""

    FIRST = "first"
    SECOND = "second"


class Approximation:
    """Approximation of z(t).

    :param z: The reconstructed field.
    :param order: FIRST is O(c^-2) accurate, SECOND O(c^-4).
    :param t: Time.
    :param c: Speed of light used in the phases.
    """

    def __init__(self, *, z: Field, order: ApproximationOrder, t: float, c: float) -> None:
        self.z: Final[Field] = z
        self.order: Final[ApproximationOrder] = order
        self.t: Final[float] = float(t)
        self.c: Final[float] = float(c)

    def __repr__(self) -> str:
        """Return representation."""
        return (
            f"Approximation(order={self.order.value}, t={self.t}, c={self.c}, z={self.z!r})"
        )


def oscillatory_phase(c: float, t: float, multiple: int = 1) -> complex:
    """exp(i multiple c^2 t), with c^2 t reduced modulo 2 pi first."""
    return complex(np.exp(1j * multiple * np.mod(c ** 2 * t, 2.0 * np.pi)))


def _check_times(w: NLSPair, corr: CorrectionState) -> None:
    if abs(w.t - corr.t) > 1e-9 * max(1.0, abs(w.t)):
        raise SchedulingError(
            reason=f"Limit state at t={w.t!r} paired with correction at t={corr.t!r}"
        )


def _first_order_field(w: NLSPair, c: float) -> Field:
    phase = oscillatory_phase(c, w.t)
    return 0.5 * (phase * w.u0 + phase.conjugate() * w.v0.conj())


def reconstruct_z0(w: NLSPair, c: float) -> Approximation:
    """First-order approximation z0 = (u0 e^{ic^2 t} + conj(v0) e^{-ic^2 t}) / 2."""
    return Approximation(z=_first_order_field(w, c), order=ApproximationOrder.FIRST, t=w.t, c=c)


def reconstruct_z1_linear(w: NLSPair, corr: CorrectionState, c: float, lam: float) -> Field:
    """Second term z1 of the linear model.

    (lam/8)(u0 e^{ic^2t} + conj(v0) e^{-ic^2t}) + (xi1 e^{ic^2t} + conj(eta1) e^{-ic^2t}) / 2
    """
    _check_times(w, corr)
    phase = oscillatory_phase(c, w.t)
    limit_part = phase * w.u0 + phase.conjugate() * w.v0.conj()
    correction_part = phase * corr.xi1 + phase.conjugate() * corr.eta1.conj()
    return (lam / 8.0) * limit_part + 0.5 * correction_part


def reconstruct_second_order_linear(
    w: NLSPair, corr: CorrectionState, c: float, lam: float
) -> Approximation:
    """z0 + c^-2 z1 for the linear model."""
    z = _first_order_field(w, c) + reconstruct_z1_linear(w, corr, c, lam) / c ** 2
    return Approximation(z=z, order=ApproximationOrder.SECOND, t=w.t, c=c)


def reconstruct_second_order_cubic(
    w: NLSPair, xi1: Field, c: float, lam: float
) -> Approximation:
    """z0 + c^-2 z1 for the cubic model with real data.

    (1/2)(1 + (3 lam / 16) |u0|^2 / c^2)(u0 e^{ic^2t} + c.c.)
    - lam / (64 c^2) (u0^3 e^{3ic^2t} + c.c.) + (xi1 e^{ic^2t} + c.c.) / (2 c^2)

    :param w: Limit state with u0 = v0.
    :param xi1: Correction at time w.t.
    :param c: Speed of light.
    :param lam: Nonlinearity strength.

    :raises UnsupportedRegimeError: If u0 != v0 (complex initial data).
    """
    if not w.is_real_regime():
        raise UnsupportedRegimeError(
            reason="Second-order cubic reconstruction needs u0 = v0 (real initial data)"
        )

    u0 = w.u0.values
    xi = xi1.values
    phase = oscillatory_phase(c, w.t)
    phase3 = oscillatory_phase(c, w.t, 3)
    modulus = u0.real ** 2 + u0.imag ** 2
    leading = u0 * phase
    cubic = u0 ** 3 * phase3
    values = (
        0.5 * (1.0 + 3.0 * lam / 16.0 * modulus / c ** 2) * 2.0 * leading.real
        - lam / (64.0 * c ** 2) * 2.0 * cubic.real
        + (xi * phase).real / c ** 2
    )
    return Approximation(
        z=Field.from_values(w.u0.grid, values.astype(complex)),
        order=ApproximationOrder.SECOND,
        t=w.t,
        c=c,
    )


def lift_to_first_order(w: NLSPair, c: float) -> FirstOrderState:
    """First-order variables (u0 e^{ic^2t}, v0 e^{ic^2t}) carried by a limit state."""
    phase = oscillatory_phase(c, w.t)
    return FirstOrderState(u=phase * w.u0, v=phase * w.v0, t=w.t)
