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

from kgnr.errors import ConfigurationError, ParameterError, ShapeError
from kgnr.spectral import (
    Field,
    apply_symbol,
    bracket_symbol,
    forward,
    gradient_energy,
    inverse,
    kg_flow_symbol,
    kg_phase_symbol,
    l2_norm,
    laplacian_symbol,
    make_grid,
    scaled_inverse_bracket_symbol,
    schroedinger_flow_symbol,
    sobolev_norm,
    torus_integral,
)


@pytest.mark.parametrize("num_modes", [0, 1, 3, 12, 2.0, True])
def test_make_grid_rejects_invalid_sizes(num_modes):
    with pytest.raises(ConfigurationError) as exc_info:
        make_grid(num_modes)

    assert "power of two" in exc_info.value.reason


def test_grid_layout():
    grid = make_grid(8)

    assert grid.num_points == 16
    assert grid.mesh == 1 / 8
    assert grid.spacing == pytest.approx(np.pi / 8)
    assert grid.points[-1] == pytest.approx(2 * np.pi - np.pi / 8)
    assert list(grid.modes[:3]) == [0, 1, 2]
    assert grid.modes[8] == -8
    assert grid.index_of(-1) == 15


def test_grid_points_are_read_only(grid):
    with pytest.raises(ValueError):
        grid.points[0] = 1.0


def test_index_of_unresolved_mode(grid):
    with pytest.raises(ShapeError):
        grid.index_of(16)


def test_dealias_mask():
    grid = make_grid(8, dealias=True)

    kept = sorted(int(k) for k in grid.modes[grid.dealias_mask])

    assert kept == list(range(-5, 6))


def test_forward_of_cosine(grid):
    coeffs = forward(np.cos(grid.points), grid=grid)

    expected = np.zeros(grid.num_points, dtype=complex)
    expected[grid.index_of(1)] = 0.5
    expected[grid.index_of(-1)] = 0.5
    assert_allclose(coeffs, expected, atol=1e-15)


def test_inverse_undoes_forward(grid, rng):
    values = rng.standard_normal(grid.num_points) + 1j * rng.standard_normal(grid.num_points)

    assert_allclose(inverse(forward(values, grid=grid), grid=grid), values, atol=1e-13)


def test_forward_shape_mismatch(grid):
    with pytest.raises(ShapeError) as exc_info:
        forward(np.zeros(7), grid=grid)

    assert exc_info.value.reason == "Expected 32 samples, got shape (7,)"


def test_torus_integral(grid):
    assert torus_integral(np.ones(grid.num_points)) == pytest.approx(2 * np.pi)
    assert abs(torus_integral(np.sin(3 * grid.points))) < 1e-14
    assert torus_integral(np.cos(grid.points) ** 2).real == pytest.approx(np.pi)


def test_parseval(grid, rng):
    values = rng.standard_normal(grid.num_points) + 1j * rng.standard_normal(grid.num_points)

    coeffs = forward(values, grid=grid)

    # Coefficients are normalized by the number of points, the integral by 2 pi.
    assert torus_integral(np.abs(values) ** 2).real == pytest.approx(
        2 * np.pi * np.sum(np.abs(coeffs) ** 2), rel=1e-12
    )


def test_field_from_modes_matches_function(grid):
    from_modes = Field.from_modes(grid, {1: 0.5, -1: 0.5})
    from_function = Field.from_function(grid, np.cos)

    assert_allclose(from_modes.values, from_function.values, atol=1e-14)
    assert from_modes.coefficient(1) == pytest.approx(0.5)


def test_field_conj_matches_values(random_field):
    field = random_field()

    assert_allclose(field.conj().values, np.conj(field.values), atol=1e-13)


def test_field_arithmetic(grid):
    cosine = Field.from_function(grid, np.cos)
    sine = Field.from_function(grid, np.sin)

    product = cosine * sine
    combined = 2.0 * product - sine / 2

    assert_allclose(product.values, 0.5 * np.sin(2 * grid.points), atol=1e-14)
    assert_allclose(
        combined.values, np.sin(2 * grid.points) - 0.5 * np.sin(grid.points), atol=1e-14
    )
    assert_allclose((-cosine).values, -np.cos(grid.points), atol=1e-14)


def test_field_numpy_scalar_multiplication(grid):
    cosine = Field.from_function(grid, np.cos)

    scaled = np.float64(3.0) * cosine

    assert isinstance(scaled, Field)
    assert scaled.coefficient(1) == pytest.approx(1.5)


def test_field_grid_mismatch():
    with pytest.raises(ShapeError):
        Field.zeros(make_grid(8)) + Field.zeros(make_grid(16))


def test_field_is_real(grid):
    assert Field.from_function(grid, np.cos).is_real()
    assert not Field.from_modes(grid, {1: 1.0}).is_real()


def test_field_dealiased():
    grid = make_grid(8, dealias=True)
    field = Field.from_modes(grid, {1: 1.0, 7: 1.0})

    dealiased = field.dealiased()

    assert dealiased.coefficient(1) == 1.0
    assert dealiased.coefficient(7) == 0.0


def test_norms(grid):
    cosine = Field.from_function(grid, np.cos)
    sine = Field.from_function(grid, np.sin)

    assert l2_norm(cosine) == pytest.approx(np.sqrt(np.pi))
    assert gradient_energy(sine) == pytest.approx(np.pi)
    assert sobolev_norm(cosine, 0) == pytest.approx(np.sqrt(0.5))
    assert sobolev_norm(cosine, 1) == pytest.approx(np.sqrt(0.5) * 2)


def test_sobolev_norm_negative_index(grid):
    with pytest.raises(ParameterError):
        sobolev_norm(Field.zeros(grid), -1)


def test_laplacian_of_cosine(grid):
    field = Field.from_function(grid, lambda x: np.cos(2 * x))

    result = apply_symbol(field, laplacian_symbol())

    assert_allclose(result.values, -4 * np.cos(2 * grid.points), atol=1e-13)


def test_bracket_and_inverse_compose_to_identity(random_field):
    field = random_field()
    c = 5.0

    scaled = apply_symbol(field, bracket_symbol(c))
    roundtrip = apply_symbol(scaled, scaled_inverse_bracket_symbol(c))

    assert_allclose(roundtrip.coeffs, c * field.coeffs, atol=1e-13)


def test_kg_phase_symbol_has_unit_modulus():
    modes = np.arange(-16, 16)

    assert_allclose(np.abs(kg_phase_symbol(modes, 32.0, 0.37)), 1.0)
    assert complex(kg_phase_symbol(0, 2.0, 0.25)) == pytest.approx(np.exp(1j))


def test_kg_flow_is_a_group(random_field):
    field = random_field()

    twice = apply_symbol(apply_symbol(field, kg_flow_symbol(3.0, 0.1)), kg_flow_symbol(3.0, 0.2))
    once = apply_symbol(field, kg_flow_symbol(3.0, 0.3))

    assert_allclose(twice.coeffs, once.coeffs, atol=1e-13)


def test_schroedinger_flow_of_single_mode(grid):
    field = Field.from_modes(grid, {3: 1.0})

    flowed = apply_symbol(field, schroedinger_flow_symbol(0.2))

    assert flowed.coefficient(3) == pytest.approx(np.exp(0.5j * 9 * 0.2))


@pytest.mark.parametrize("c", [0.0, -1.0])
def test_symbols_reject_nonpositive_speed(c):
    with pytest.raises(ParameterError) as exc_info:
        bracket_symbol(c)

    assert "positive" in exc_info.value.reason
