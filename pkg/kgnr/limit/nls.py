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

"""Coupled Schroedinger limit system and its Strang splitting.

The limit unknowns w0 = (u0, v0) solve i w0_t = (1/2) w0_xx + <F>(w0) where
<F> averages f((u0 + exp(-2i theta) conj(v0)) / 2) over theta.
"""
import enum
import logging
from typing import Final, List, Optional, Tuple

import numpy as np

from kgnr.errors import ConfigurationError, ParameterError, ShapeError
from kgnr.model import InitialData, KGParams, Trajectory, psi_expansion_term, step_count
from kgnr.model.first_order import nonlinear_values
from kgnr.spectral import Field, apply_symbol, l2_norm, schroedinger_flow_symbol

logger = logging.getLogger(__name__)


class NLSPair:
    """Limit-system unknowns (u0, v0) at time t.

    :param u0: First component.
    :param v0: Second component.
    :param t: Time.
    """

    def __init__(self, *, u0: Field, v0: Field, t: float = 0.0) -> None:
        if u0.grid != v0.grid:
            raise ShapeError(reason="u0 and v0 must share a grid")

        self.u0: Final[Field] = u0
        self.v0: Final[Field] = v0
        self.t: Final[float] = float(t)

    def is_real_regime(self, *, tolerance: float = 1e-10) -> bool:
        """Whether u0 = v0, the situation produced by real initial data."""
        scale = max(l2_norm(self.u0), l2_norm(self.v0), 1e-300)
        return l2_norm(self.u0 - self.v0) <= tolerance * scale

    def norms(self) -> Tuple[float, float]:
        """L2 norms of u0 and v0."""
        return l2_norm(self.u0), l2_norm(self.v0)

    def __repr__(self) -> str:
        """Return representation."""
        return f"NLSPair(u0={self.u0!r}, v0={self.v0!r}, t={self.t})"


def initial_nls_pair(data: InitialData) -> NLSPair:
    """Limit initial value psi_0 = (phi - i gamma, conj(phi + i gamma))."""
    u0, v0 = psi_expansion_term(0, data)
    return NLSPair(u0=u0, v0=v0, t=0.0)


class SplittingScheme(enum.Enum):
    """Supported splittings."""

    STRANG = "strang"


class SplittingConfig:
    """Time stepping of the limit systems.

    :param tau: Time step, positive.
    :param scheme: Splitting scheme.
    :param quadrature_nodes: theta nodes for the averaged nonlinearity;
        defaults to 2p+2.
    """

    def __init__(
        self,
        *,
        tau: float,
        scheme: SplittingScheme = SplittingScheme.STRANG,
        quadrature_nodes: Optional[int] = None,
    ) -> None:
        if not tau > 0:
            raise ConfigurationError(reason=f"Time step must be positive, got {tau}")
        if quadrature_nodes is not None and quadrature_nodes < 1:
            raise ConfigurationError(
                reason=f"Quadrature nodes must be positive, got {quadrature_nodes}"
            )

        self.tau: Final[float] = float(tau)
        self.scheme: Final[SplittingScheme] = scheme
        self.quadrature_nodes: Final[Optional[int]] = quadrature_nodes

    def nodes_for(self, p: int) -> int:
        """Quadrature nodes to use for degree p.

        :raises ConfigurationError: If fewer than 2p+2 nodes were requested.
        """
        return check_quadrature_nodes(
            2 * p + 2 if self.quadrature_nodes is None else self.quadrature_nodes, p
        )

    def __repr__(self) -> str:
        """Return representation."""
        return (
            f"SplittingConfig(tau={self.tau}, scheme={self.scheme.value}, "
            f"quadrature_nodes={self.quadrature_nodes})"
        )


def check_quadrature_nodes(nodes: int, p: int) -> int:
    """Validate the number of theta nodes for degree p.

    :raises ConfigurationError: If nodes < 2p+2.
    """
    if nodes < 2 * p + 2:
        raise ConfigurationError(
            reason=f"Averaging degree p={p} needs at least {2 * p + 2} nodes, got {nodes}"
        )
    return nodes


def _theta_rotations(nodes: int) -> np.ndarray:
    # The integrand is pi-periodic in theta: sample exp(-2i theta) over one period.
    theta = np.pi * np.arange(nodes) / nodes
    return np.exp(-2j * theta)


def _average(first: np.ndarray, second: np.ndarray, lam: float, p: int, nodes: int) -> np.ndarray:
    rotations = _theta_rotations(nodes)[:, np.newaxis]
    samples = nonlinear_values(0.5 * (first[np.newaxis, :] + rotations * np.conj(second)), lam, p)
    return np.mean(samples, axis=0)


def averaged_nonlinearity(
    w: NLSPair, lam: float, p: int, nodes: int
) -> Tuple[Field, Field]:
    """Equispaced theta quadrature of the averaged nonlinearity.

    The first component averages f((u0 + exp(-2i theta) conj(v0)) / 2), the second
    f((v0 + exp(-2i theta) conj(u0)) / 2).  For p=1 this gives
    (lam/8)(|u0|^2 + 2|v0|^2) u0.

    :param w: Limit state.
    :param lam: Nonlinearity strength.
    :param p: Nonlinearity degree.
    :param nodes: Number of theta nodes M, at least 2p+2.

    :raises ConfigurationError: If M < 2p+2.
    """
    check_quadrature_nodes(nodes, p)
    u, v = w.u0.values, w.v0.values
    grid = w.u0.grid
    return (
        Field.from_values(grid, _average(u, v, lam, p, nodes)),
        Field.from_values(grid, _average(v, u, lam, p, nodes)),
    )


def _potential_rates(
    u: np.ndarray, v: np.ndarray, lam: float, p: int, nodes: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Real rates R with <F> = (R_u u, R_v v); they depend on |u0| and |v0| only."""
    mod_u = u.real ** 2 + u.imag ** 2
    mod_v = v.real ** 2 + v.imag ** 2
    if p == 0:
        rate = np.full(u.shape, 0.5 * lam)
        return rate, rate
    if p == 1:
        return lam / 8.0 * (mod_u + 2.0 * mod_v), lam / 8.0 * (mod_v + 2.0 * mod_u)

    def _rate(values: np.ndarray, modulus: np.ndarray, average: np.ndarray) -> np.ndarray:
        safe = modulus > 1e-300
        projected = (np.conj(values) * average).real
        return np.divide(projected, modulus, out=np.zeros_like(modulus), where=safe)

    return (
        _rate(u, mod_u, _average(u, v, lam, p, nodes)),
        _rate(v, mod_v, _average(v, u, lam, p, nodes)),
    )


def potential_flow(w: NLSPair, lam: float, p: int, duration: float, *, nodes: int) -> NLSPair:
    """Exact flow of i w0_t = <F>(w0) over ``duration``.

    The flow keeps |u0| and |v0| fixed pointwise, so it is a phase rotation with
    frozen rates.
    """
    u, v = w.u0.values, w.v0.values
    rate_u, rate_v = _potential_rates(u, v, lam, p, nodes)
    grid = w.u0.grid
    return NLSPair(
        u0=Field.from_values(grid, u * np.exp(-1j * duration * rate_u)),
        v0=Field.from_values(grid, v * np.exp(-1j * duration * rate_v)),
        t=w.t + duration,
    )


def kinetic_flow(w: NLSPair, duration: float) -> NLSPair:
    """Exact Fourier flow of i w0_t = (1/2) w0_xx over ``duration``."""
    symbol = schroedinger_flow_symbol(duration)
    return NLSPair(
        u0=apply_symbol(w.u0, symbol), v0=apply_symbol(w.v0, symbol), t=w.t + duration
    )


def strang_step_nls(
    w: NLSPair, params: KGParams, tau: float, *, nodes: Optional[int] = None
) -> NLSPair:
    """One Strang step: half potential, full kinetic, half potential.

    Negative tau steps backwards; both substeps are exactly invertible.

    :param w: Current state.
    :param params: Model parameters (c is not used).
    :param tau: Step.
    :param nodes: theta nodes for p >= 2, defaults to 2p+2.
    """
    nodes = check_quadrature_nodes(2 * params.p + 2 if nodes is None else nodes, params.p)
    half = potential_flow(w, params.lam, params.p, 0.5 * tau, nodes=nodes)
    full = kinetic_flow(half, tau)
    stepped = potential_flow(full, params.lam, params.p, 0.5 * tau, nodes=nodes)
    # Keep the time stamp on the n * tau lattice.
    return NLSPair(u0=stepped.u0, v0=stepped.v0, t=w.t + tau)


def solve_nls(
    psi0: NLSPair,
    params: KGParams,
    config: SplittingConfig,
    T: float,
    *,
    snapshot_every: int = 1,
) -> Trajectory[NLSPair]:
    """Strang-split solution of the limit system on [0, T].

    T/tau is rounded to the nearest integer; the effective step is reported
    when it differs from the requested one.

    :param psi0: Initial value, usually ``initial_nls_pair(data)``.
    :param params: Model parameters.
    :param config: Splitting configuration.
    :param T: Final time, positive.
    :param snapshot_every: Keep every n-th step (the final step is always kept).

    :returns: Snapshots at t_n = n * tau.
    """
    if snapshot_every < 1:
        raise ParameterError(reason=f"snapshot_every must be >= 1, got {snapshot_every}")

    steps, tau = step_count(T, config.tau)
    if abs(tau - config.tau) > 1e-12 * config.tau:
        logger.warning(
            "T/tau=%g is not an integer; using %d steps with effective tau=%.17g.",
            T / config.tau,
            steps,
            tau,
        )
    nodes = config.nodes_for(params.p)
    logger.debug("Strang splitting: %d steps of %g with %d theta nodes.", steps, tau, nodes)

    w = psi0
    times: List[float] = [psi0.t]
    states: List[NLSPair] = [psi0]
    for n in range(1, steps + 1):
        w = strang_step_nls(w, params, tau, nodes=nodes)
        t = psi0.t + n * tau
        w = NLSPair(u0=w.u0, v0=w.v0, t=t)
        if n % snapshot_every == 0 or n == steps:
            times.append(t)
            states.append(w)

    return Trajectory(times=times, states=states, step=tau)
