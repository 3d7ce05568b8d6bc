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

"""First correction of the cubic limit system.

For real initial data (u0 = v0) the correction xi1 solves

    i xi_t = (1/2) xi_xx + (3 lam / 4) |u0|^2 xi + (3 lam / 8) u0^2 conj(xi) + g0

which is advanced by Strang splitting: exact Fourier flow for the kinetic part
and an exponential trapezoidal rule for the pointwise linear potential part.
"""
import enum
import logging
from typing import Final, List, Optional

import numpy as np

from kgnr.errors import SchedulingError, ShapeError, UnsupportedRegimeError
from kgnr.model import InitialData, Trajectory, step_count
from kgnr.spectral import (
    Field,
    apply_symbol,
    bilaplacian_symbol,
    laplacian_symbol,
    schroedinger_flow_symbol,
)

from .nls import NLSPair, SplittingConfig
from .potential import potential_matrix, traceless_expm

logger = logging.getLogger(__name__)


class CorrectionState:
    """Correction unknowns (xi1, eta1) at time t.

    In the cubic real case eta1 is xi1.

    :param xi1: Correction driven by u0.
    :param eta1: Correction driven by v0; defaults to xi1.
    :param t: Time.
    """

    def __init__(self, *, xi1: Field, eta1: Optional[Field] = None, t: float = 0.0) -> None:
        if eta1 is None:
            eta1 = xi1
        if xi1.grid != eta1.grid:
            raise ShapeError(reason="xi1 and eta1 must share a grid")

        self.xi1: Final[Field] = xi1
        self.eta1: Final[Field] = eta1
        self.t: Final[float] = float(t)

    def __repr__(self) -> str:
        """Return representation."""
        return f"CorrectionState(xi1={self.xi1!r}, eta1={self.eta1!r}, t={self.t})"


class G0Variant(enum.Enum):
    """Coefficient of lam Laplacian(|u0|^2 u0) in the correction forcing."""

    DERIVED_3_16 = "derived_3_16"
    ALTERNATE_3_32 = "alternate_3_32"

    @property
    def coefficient(self) -> float:
        """Numeric value of the coefficient."""
        return 3.0 / 16.0 if self == G0Variant.DERIVED_3_16 else 3.0 / 32.0


def _forcing_values(u0: np.ndarray, grid, lam: float, variant: G0Variant) -> np.ndarray:
    u0_field = Field.from_values(grid, u0)
    modulus = u0.real ** 2 + u0.imag ** 2
    cubic = Field.from_values(grid, modulus * u0).dealiased()
    quintic = modulus ** 2 * u0
    smooth = apply_symbol(u0_field, bilaplacian_symbol()) / 8.0 + (
        variant.coefficient * lam
    ) * apply_symbol(cubic, laplacian_symbol())
    return smooth.values + lam ** 2 * 51.0 / 256.0 * quintic


def xi1_forcing_g0(
    u0: Field, lam: float, *, variant: G0Variant = G0Variant.DERIVED_3_16
) -> Field:
    """Forcing g0 = (1/8) u0_xxxx + lam^2 (51/256) |u0|^4 u0 + k lam (|u0|^2 u0)_xx.

    k is 3/16 by default, 3/32 for the alternate variant.  Derivatives are
    spectral and products pointwise.
    """
    return Field.from_values(u0.grid, _forcing_values(u0.values, u0.grid, lam, variant))


def xi1_initial_value(u0: Field, lam: float) -> Field:
    """Initial correction.

    xi1(0) = (lam/16) u0^3 - (lam/32) conj(u0)^3 - (3 lam/16) |u0|^2 conj(u0)
    + (u0 - conj(u0))_xx / 4
    """
    values = u0.values
    conj = np.conj(values)
    modulus = values.real ** 2 + values.imag ** 2
    algebraic = Field.from_values(
        u0.grid,
        lam / 16.0 * values ** 3 - lam / 32.0 * conj ** 3 - 3.0 * lam / 16.0 * modulus * conj,
    )
    return algebraic + 0.25 * apply_symbol(u0 - u0.conj(), laplacian_symbol())


def exp_trapezoidal_potential_step(
    xi: Field,
    u0_start: Field,
    u0_end: Field,
    lam: float,
    tau: float,
    *,
    variant: G0Variant = G0Variant.DERIVED_3_16,
) -> Field:
    """Advance i xi_t = (3 lam/4)|u0|^2 xi + (3 lam/8) u0^2 conj(xi) + g0 over one step.

    Pointwise in (alpha, beta) = (Re xi, Im xi):

        y1 = exp(tau/2 (A1 + A0)) (y0 + tau/2 b0) + tau/2 b1,  b = (Im g0, -Re g0)

    with A0, A1 the potential matrices at the step endpoints.

    :param xi: Correction at t_n.
    :param u0_start: u0 at t_n.
    :param u0_end: u0 at t_n + tau.
    :param lam: Nonlinearity strength.
    :param tau: Step.
    :param variant: Forcing coefficient variant.

    :returns: Correction at t_n + tau.
    """
    grid = xi.grid
    start, end = u0_start.values, u0_end.values
    a0 = potential_matrix(start, lam)
    a1 = potential_matrix(end, lam)
    e11, e12, e21, e22 = traceless_expm(
        0.5 * tau * (a0[0] + a1[0]), 0.5 * tau * (a0[1] + a1[1]), 0.5 * tau * (a0[2] + a1[2])
    )

    g_start = _forcing_values(start, grid, lam, variant)
    g_end = _forcing_values(end, grid, lam, variant)

    alpha = xi.values.real + 0.5 * tau * g_start.imag
    beta = xi.values.imag - 0.5 * tau * g_start.real
    alpha_next = e11 * alpha + e12 * beta + 0.5 * tau * g_end.imag
    beta_next = e21 * alpha + e22 * beta - 0.5 * tau * g_end.real
    return Field.from_values(grid, alpha_next + 1j * beta_next)


def _kinetic(xi: Field, duration: float) -> Field:
    return apply_symbol(xi, schroedinger_flow_symbol(duration))


def solve_xi1_cubic(
    u0_trajectory: Trajectory[NLSPair],
    data: InitialData,
    lam: float,
    config: SplittingConfig,
    T: float,
    *,
    variant: G0Variant = G0Variant.DERIVED_3_16,
) -> Trajectory[CorrectionState]:
    """Strang-split correction xi1 on [0, T] for the cubic real case.

    Each step is a half kinetic flow, one exponential trapezoidal potential
    step using u0 at both step endpoints, and another half kinetic flow.  The
    u0 samples are taken from ``u0_trajectory`` without interpolation.

    :param u0_trajectory: Limit trajectory holding u0 at every t_n = n tau.
    :param data: Real initial data.
    :param lam: Nonlinearity strength.
    :param config: Splitting configuration (same tau as the u0 trajectory).
    :param T: Final time.
    :param variant: Forcing coefficient variant.

    :returns: Snapshots of the correction at every t_n.

    :raises UnsupportedRegimeError: For complex initial data.
    :raises SchedulingError: If u0 is missing at a step endpoint.
    """
    if not data.is_real():
        raise UnsupportedRegimeError(
            reason="The cubic correction is implemented for real initial data only"
        )

    steps, tau = step_count(T, config.tau)
    if variant != G0Variant.DERIVED_3_16:
        logger.warning("Using alternate correction forcing variant %r.", variant.value)

    u0_initial = u0_trajectory.at(0.0).u0
    xi = xi1_initial_value(u0_initial, lam)
    times: List[float] = [0.0]
    states: List[CorrectionState] = [CorrectionState(xi1=xi, t=0.0)]

    u0_start = u0_initial
    for n in range(1, steps + 1):
        t = n * tau
        try:
            u0_end = u0_trajectory.at(t).u0
        except SchedulingError as error:
            raise SchedulingError(
                reason=f"Correction step {n} needs u0 at t={t!r}: {error.reason}"
            ) from error

        xi = _kinetic(xi, 0.5 * tau)
        xi = exp_trapezoidal_potential_step(xi, u0_start, u0_end, lam, tau, variant=variant)
        xi = _kinetic(xi, 0.5 * tau)

        times.append(t)
        states.append(CorrectionState(xi1=xi, t=t))
        u0_start = u0_end

    logger.debug("Correction solved with %d steps of %g.", steps, tau)
    return Trajectory(times=times, states=states, step=tau)
