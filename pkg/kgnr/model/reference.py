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

"""Resolved reference integrator for the first-order system."""
import logging
from typing import Final, List, Optional, Tuple

import numpy as np

from kgnr.errors import GuardViolationError, ParameterError
from kgnr.spectral import Field, kg_phase_symbol

from .first_order import FirstOrderState, nonlinear_values
from .params import KGParams
from .trajectory import Trajectory, step_count

logger = logging.getLogger(__name__)

MAX_PHASE_STEP: Final[float] = 0.1


def check_reference_guard(c: float, tau_ref: float) -> None:
    """Refuse reference steps that under-resolve the exp(i t c <nabla>_c) phase.

    :raises GuardViolationError: If tau_ref * c^2 > 0.1.
    """
    if tau_ref * c ** 2 > MAX_PHASE_STEP * (1.0 + 1e-12):
        raise GuardViolationError(
            reason=(
                f"Reference step tau_ref={tau_ref:g} too large for c={c:g}: "
                f"tau_ref*c^2={tau_ref * c ** 2:g} exceeds {MAX_PHASE_STEP}"
            )
        )


class LawsonReference:
    """Lawson fourth-order Runge-Kutta integrator for i w_t = -c<nabla>_c w + c<nabla>_c^-1 F(w).

    The diagonal linear flow is applied exactly in Fourier space; the classical
    RK4 stages act on the twisted variable exp(-i t c <nabla>_c) w.

    :param params: Model parameters.
    :param tau_ref: Time step, subject to ``check_reference_guard``.
    :param modes: Mode array of the grid the states live on.
    :param dealias_mask: Modes kept in the nonlinearity, all if None.
    """

    def __init__(
        self,
        *,
        params: KGParams,
        tau_ref: float,
        modes: np.ndarray,
        dealias_mask: Optional[np.ndarray] = None,
    ) -> None:
        check_reference_guard(params.c, tau_ref)

        self.params: Final[KGParams] = params
        self.tau_ref: Final[float] = tau_ref

        c = params.c
        self._num_points = modes.shape[0]
        self._coupling = -1j * c / np.sqrt(modes.astype(float) ** 2 + c ** 2)
        if dealias_mask is not None:
            self._coupling = np.where(dealias_mask, self._coupling, 0.0)
        self._half = kg_phase_symbol(modes, c, 0.5 * tau_ref)
        self._full = kg_phase_symbol(modes, c, tau_ref)

    def _rhs(self, u_hat: np.ndarray, v_hat: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        n = self._num_points
        u = np.fft.ifft(u_hat) * n
        v = np.fft.ifft(v_hat) * n
        f_values = nonlinear_values(0.5 * (u + np.conj(v)), self.params.lam, self.params.p)
        return (
            self._coupling * np.fft.fft(f_values) / n,
            self._coupling * np.fft.fft(np.conj(f_values)) / n,
        )

    def step(self, u_hat: np.ndarray, v_hat: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Advance coefficient arrays by one step."""
        h = self.tau_ref
        half, full = self._half, self._full

        a_u, a_v = self._rhs(u_hat, v_hat)
        b_u, b_v = self._rhs(half * (u_hat + 0.5 * h * a_u), half * (v_hat + 0.5 * h * a_v))
        c_u, c_v = self._rhs(half * u_hat + 0.5 * h * b_u, half * v_hat + 0.5 * h * b_v)
        d_u, d_v = self._rhs(full * u_hat + h * half * c_u, full * v_hat + h * half * c_v)

        u_next = full * u_hat + h / 6.0 * (full * a_u + 2.0 * half * (b_u + c_u) + d_u)
        v_next = full * v_hat + h / 6.0 * (full * a_v + 2.0 * half * (b_v + c_v) + d_v)
        return u_next, v_next


def reference_integrate(
    psi: FirstOrderState,
    params: KGParams,
    *,
    tau_ref: float,
    T: float,
    snapshot_every: Optional[int] = None,
) -> Trajectory[FirstOrderState]:
    """Integrate the first-order system from psi to time psi.t + T.

    :param psi: Initial state.
    :param params: Model parameters.
    :param tau_ref: Requested step; T/tau_ref is rounded to an integer.
    :param T: Duration, positive.
    :param snapshot_every: Store every n-th step; only the endpoints if None.

    :returns: Trajectory of first-order states.

    :raises GuardViolationError: If tau_ref * c^2 > 0.1, before any work.
    """
    check_reference_guard(params.c, tau_ref)
    if snapshot_every is not None and snapshot_every < 1:
        raise ParameterError(reason=f"snapshot_every must be >= 1, got {snapshot_every}")

    steps, tau = step_count(T, tau_ref)
    if abs(tau - tau_ref) > 1e-12 * tau_ref:
        logger.warning("Reference step snapped from %g to %g.", tau_ref, tau)

    grid = psi.u.grid
    integrator = LawsonReference(
        params=params,
        tau_ref=tau,
        modes=grid.modes,
        dealias_mask=grid.dealias_mask if grid.dealias else None,
    )
    logger.debug("Reference integration: %d steps of %g at c=%g.", steps, tau, params.c)

    u_hat, v_hat = np.array(psi.u.coeffs), np.array(psi.v.coeffs)
    times: List[float] = [psi.t]
    states: List[FirstOrderState] = [psi]
    for n in range(1, steps + 1):
        u_hat, v_hat = integrator.step(u_hat, v_hat)
        if n == steps or (snapshot_every is not None and n % snapshot_every == 0):
            t = psi.t + n * tau
            times.append(t)
            states.append(
                FirstOrderState(
                    u=Field(grid=grid, coeffs=u_hat), v=Field(grid=grid, coeffs=v_hat), t=t
                )
            )

    return Trajectory(times=times, states=states, step=tau)
