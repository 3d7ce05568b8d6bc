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

import numpy as np
import pytest
from numpy.testing import assert_allclose

from kgnr.errors import SchedulingError, UnsupportedRegimeError
from kgnr.limit import (
    CorrectionState,
    NLSPair,
    SplittingConfig,
    initial_nls_pair,
    linear_u0_exact,
    linear_xi1_exact,
    solve_nls,
    solve_xi1_cubic,
    xi1_initial_value,
)
from kgnr.model import KGParams, initial_state
from kgnr.reconstruction import (
    ApproximationOrder,
    lift_to_first_order,
    oscillatory_phase,
    reconstruct_second_order_cubic,
    reconstruct_second_order_linear,
    reconstruct_z0,
    reconstruct_z1_linear,
)
from kgnr.spectral import l2_norm


def test_oscillatory_phase():
    c = 3.0
    assert oscillatory_phase(c, 2 * np.pi / 9) == pytest.approx(1.0)
    assert oscillatory_phase(c, 0.1) == pytest.approx(np.exp(0.9j))
    assert oscillatory_phase(c, 0.1, -2) == pytest.approx(np.exp(-1.8j))


def test_oscillatory_phase_large_argument():
    c, t = 1000.0, 1.0

    reduced = 1e6 - 159154 * 2 * np.pi
    assert oscillatory_phase(c, t) == pytest.approx(np.exp(1j * reduced), abs=1e-9)


def test_z0_at_initial_time(complex_data):
    approximation = reconstruct_z0(initial_nls_pair(complex_data), 7.0)

    assert approximation.order == ApproximationOrder.FIRST
    assert approximation.t == 0.0
    assert_allclose(approximation.z.values, complex_data.phi.values, atol=1e-14)


def test_z0_of_lifted_state(complex_data):
    w = linear_u0_exact(complex_data, -1.0, 0.3)
    lifted = lift_to_first_order(w, 5.0)

    expected = 0.5 * (lifted.u + lifted.v.conj())
    assert lifted.t == 0.3
    assert_allclose(reconstruct_z0(w, 5.0).z.values, expected.values, atol=1e-14)


def test_lift_approximates_initial_state(complex_data):
    pair = initial_nls_pair(complex_data)

    def _distance(c):
        lifted = lift_to_first_order(pair, c)
        state = initial_state(complex_data, c)
        return l2_norm(lifted.u - state.u) + l2_norm(lifted.v - state.v)

    assert _distance(20.0) / _distance(40.0) == pytest.approx(4.0, rel=5e-2)


def test_linear_second_order_at_initial_time(complex_data):
    lam, c = -1.0, 4.0
    w = linear_u0_exact(complex_data, lam, 0.0)
    correction = linear_xi1_exact(complex_data, lam, 0.0)

    approximation = reconstruct_second_order_linear(w, correction, c, lam)

    assert approximation.order == ApproximationOrder.SECOND
    assert_allclose(approximation.z.values, complex_data.phi.values, atol=1e-13)


def test_linear_time_mismatch(complex_data):
    w = linear_u0_exact(complex_data, -1.0, 0.5)
    correction = linear_xi1_exact(complex_data, -1.0, 0.0)

    with pytest.raises(SchedulingError) as exc_info:
        reconstruct_z1_linear(w, correction, 4.0, -1.0)

    assert "t=0.5" in exc_info.value.reason


@pytest.mark.parametrize("c", [2.0, 8.0, 32.0])
def test_cubic_second_order_at_initial_time(real_data, c):
    lam = -1.0
    pair = initial_nls_pair(real_data)

    approximation = reconstruct_second_order_cubic(pair, xi1_initial_value(pair.u0, lam), c, lam)

    assert_allclose(approximation.z.values, real_data.phi.values, atol=1e-13)


def test_cubic_second_order_rejects_complex_data(complex_data):
    pair = initial_nls_pair(complex_data)

    with pytest.raises(UnsupportedRegimeError):
        reconstruct_second_order_cubic(pair, xi1_initial_value(pair.u0, -1.0), 8.0, -1.0)


def _harmonics(samples):
    """Discrete Fourier coefficients over equispaced samples of one period."""
    return np.fft.fft(np.stack(samples), axis=0) / len(samples)


@pytest.mark.parametrize("c", [2.0, 8.0])
def test_reconstructions_depend_on_time_through_phases(real_data, c):
    lam = -1.0
    start = initial_nls_pair(real_data)
    correction = linear_xi1_exact(real_data, lam, 0.0)
    xi1 = xi1_initial_value(start.u0, lam)
    period = 2 * np.pi / c ** 2

    first, linear, cubic = [], [], []
    for j in range(8):
        t = 0.25 + j * period / 8
        w = NLSPair(u0=start.u0, v0=start.v0, t=t)
        frozen = CorrectionState(xi1=correction.xi1, eta1=correction.eta1, t=t)
        first.append(reconstruct_z0(w, c).z.values)
        linear.append(reconstruct_second_order_linear(w, frozen, c, lam).z.values)
        cubic.append(reconstruct_second_order_cubic(w, xi1, c, lam).z.values)

    # Harmonic m of the samples carries exp(i m c^2 t), m taken mod 8.
    for samples, allowed in ((first, {1, 7}), (linear, {1, 7}), (cubic, {1, 3, 5, 7})):
        harmonics = _harmonics(samples)
        scale = np.max(np.abs(harmonics))
        for m in sorted(set(range(8)) - allowed):
            assert np.max(np.abs(harmonics[m])) < 1e-12 * scale


def test_cubic_reconstructions_real_for_real_data(real_data):
    c, lam, T = 4.0, -1.0, 0.05
    splitting = SplittingConfig(tau=0.01)
    limit = solve_nls(initial_nls_pair(real_data), KGParams(c=c, lam=lam, p=1), splitting, T)
    corrections = solve_xi1_cubic(limit, real_data, lam, splitting, T)

    for t, w in limit:
        second = reconstruct_second_order_cubic(w, corrections.at(t).xi1, c, lam)
        assert np.max(np.abs(reconstruct_z0(w, c).z.values.imag)) < 1e-12
        assert np.max(np.abs(second.z.values.imag)) < 1e-12


@pytest.mark.parametrize("t", [0.0, 0.3, 1.0])
def test_linear_reconstructions_real_for_real_data(real_data, t):
    c, lam = 4.0, -1.0
    w = linear_u0_exact(real_data, lam, t)

    second = reconstruct_second_order_linear(w, linear_xi1_exact(real_data, lam, t), c, lam)

    assert np.max(np.abs(reconstruct_z0(w, c).z.values.imag)) < 1e-12
    assert np.max(np.abs(second.z.values.imag)) < 1e-12
