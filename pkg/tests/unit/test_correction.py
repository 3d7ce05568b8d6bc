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
import scipy.linalg
from numpy.testing import assert_allclose

from kgnr.errors import SchedulingError, UnsupportedRegimeError
from kgnr.limit import (
    G0Variant,
    SplittingConfig,
    exp_trapezoidal_potential_step,
    initial_nls_pair,
    linear_correction_exact,
    linear_u0_exact,
    linear_xi1_exact,
    potential_matrix,
    solve_nls,
    solve_xi1_cubic,
    traceless_expm,
    xi1_forcing_g0,
    xi1_initial_value,
)
from kgnr.reconstruction import reconstruct_z1_linear
from kgnr.spectral import Field, apply_symbol, bilaplacian_symbol, laplacian_symbol


def test_traceless_expm_matches_scaling_and_squaring(rng):
    entries = rng.uniform(-2.0, 2.0, size=(1000, 3))

    closed = traceless_expm(entries[:, 0], entries[:, 1], entries[:, 2])

    for index, (m11, m12, m21) in enumerate(entries):
        oracle = scipy.linalg.expm(np.array([[m11, m12], [m21, -m11]]))
        result = np.array([entry[index] for entry in closed]).reshape(2, 2)
        assert_allclose(result, oracle, rtol=1e-12, atol=1e-12 * np.max(np.abs(oracle)))


@pytest.mark.parametrize(
    "m11,m12,m21",
    [(0.0, 0.0, 0.0), (1e-8, 0.0, 0.0), (0.0, 1.0, 0.0), (1e-7, 2e-7, -3e-7), (0.5, 1.0, -0.25)],
)
def test_traceless_expm_near_degenerate(m11, m12, m21):
    closed = np.array(traceless_expm(np.array([m11]), np.array([m12]), np.array([m21])))

    oracle = scipy.linalg.expm(np.array([[m11, m12], [m21, -m11]]))
    assert_allclose(closed.reshape(2, 2), oracle, atol=1e-14)


def test_potential_matrix_is_real_form_of_linearization(random_field, rng):
    lam = -1.3
    u0 = random_field().values
    xi = rng.standard_normal(u0.shape) + 1j * rng.standard_normal(u0.shape)

    m11, m12, m21, m22 = potential_matrix(u0, lam)
    expected = -1j * (0.75 * lam * np.abs(u0) ** 2 * xi + 0.375 * lam * u0 ** 2 * np.conj(xi))

    assert_allclose(m11 + m22, 0.0)
    assert_allclose(m11 * xi.real + m12 * xi.imag, expected.real, atol=1e-13)
    assert_allclose(m21 * xi.real + m22 * xi.imag, expected.imag, atol=1e-13)


def test_g0_variant_coefficients():
    assert G0Variant.DERIVED_3_16.coefficient == 3 / 16
    assert G0Variant.ALTERNATE_3_32.coefficient == 3 / 32


def test_forcing_without_nonlinearity(grid):
    u0 = Field.from_function(grid, lambda x: np.cos(2 * x))

    forcing = xi1_forcing_g0(u0, 0.0)

    assert_allclose(forcing.values, 2.0 * np.cos(2 * grid.points), atol=1e-12)


def test_forcing_variants_differ_by_laplacian_term(random_field):
    u0 = random_field()
    lam = -1.0

    derived = xi1_forcing_g0(u0, lam)
    alternate = xi1_forcing_g0(u0, lam, variant=G0Variant.ALTERNATE_3_32)

    cubic = Field.from_values(u0.grid, np.abs(u0.values) ** 2 * u0.values)
    expected = (3 / 32) * lam * apply_symbol(cubic, laplacian_symbol())
    assert_allclose((derived - alternate).values, expected.values, atol=1e-11)


def test_initial_value(random_field):
    u0 = random_field()
    lam = 2.0
    values = u0.values

    xi = xi1_initial_value(u0, lam)

    laplacian = apply_symbol(u0 - u0.conj(), laplacian_symbol()).values
    expected = (
        lam / 16 * values ** 3
        - lam / 32 * np.conj(values) ** 3
        - 3 * lam / 16 * np.abs(values) ** 2 * np.conj(values)
        + laplacian / 4
    )
    assert_allclose(xi.values, expected, atol=1e-12)


def test_trapezoidal_step_without_potential(grid, random_field):
    u_start, u_end, xi = random_field(), random_field(), random_field()
    tau = 0.01

    stepped = exp_trapezoidal_potential_step(xi, u_start, u_end, 0.0, tau)

    forcing = (
        apply_symbol(u_start, bilaplacian_symbol()) + apply_symbol(u_end, bilaplacian_symbol())
    ) / 8
    assert_allclose(stepped.values, (xi - 0.5j * tau * forcing).values, atol=1e-12)


def test_trapezoidal_step_constant_background(grid):
    a = 0.7
    u0 = Field.from_function(grid, lambda x: a + 0 * x)
    xi = Field.from_function(grid, lambda x: 0.2 + 0.1j + 0 * x)
    lam, tau = -1.0, 0.05

    stepped = exp_trapezoidal_potential_step(xi, u0, u0, lam, tau)

    m11, m12, m21, _ = potential_matrix(np.array([a + 0j]), lam)
    propagator = scipy.linalg.expm(tau * np.array([[m11[0], m12[0]], [m21[0], -m11[0]]]))
    g = lam ** 2 * 51 / 256 * a ** 5
    forcing = np.array([0.0, -g])
    expected = propagator @ (np.array([0.2, 0.1]) + 0.5 * tau * forcing) + 0.5 * tau * forcing
    assert_allclose(stepped.values, expected[0] + 1j * expected[1], atol=1e-14)


def test_solve_xi1_needs_real_data(complex_data, cubic_params):
    limit = solve_nls(initial_nls_pair(complex_data), cubic_params, SplittingConfig(tau=0.01), 0.05)

    with pytest.raises(UnsupportedRegimeError):
        solve_xi1_cubic(limit, complex_data, -1.0, SplittingConfig(tau=0.01), 0.05)


def test_solve_xi1_needs_every_sample(real_data, cubic_params):
    limit = solve_nls(
        initial_nls_pair(real_data), cubic_params, SplittingConfig(tau=0.01), 0.05, snapshot_every=2
    )

    with pytest.raises(SchedulingError) as exc_info:
        solve_xi1_cubic(limit, real_data, -1.0, SplittingConfig(tau=0.01), 0.05)

    assert exc_info.value.reason.startswith("Correction step 1 needs u0")


def test_solve_xi1_trajectory(real_data, cubic_params, caplog):
    config = SplittingConfig(tau=0.01)
    limit = solve_nls(initial_nls_pair(real_data), cubic_params, config, 0.05)

    corrections = solve_xi1_cubic(
        limit, real_data, -1.0, config, 0.05, variant=G0Variant.ALTERNATE_3_32
    )

    assert len(corrections) == 6
    initial = xi1_initial_value(limit.initial.u0, -1.0)
    assert_allclose(corrections.initial.xi1.values, initial.values)
    assert corrections.final.t == pytest.approx(0.05)
    assert "alternate correction forcing" in caplog.text


@pytest.mark.parametrize("t", [0.0, 0.3, 1.0])
def test_linear_correction_closed_forms_agree(complex_data, t):
    lam, c = -1.0, 5.0
    w = linear_u0_exact(complex_data, lam, t)
    correction = linear_xi1_exact(complex_data, lam, t)

    z1 = reconstruct_z1_linear(w, correction, c, lam)

    assert_allclose(z1.coeffs, linear_correction_exact(complex_data, lam, c, t).coeffs, atol=1e-12)
