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

from kgnr.errors import GuardViolationError, ParameterError
from kgnr.model import (
    KGParams,
    LawsonReference,
    check_reference_guard,
    exact_linear_solution,
    from_first_order,
    initial_state,
    reference_integrate,
)


@pytest.mark.parametrize("c,tau_ref", [(10.0, 1e-3), (32.0, 1e-5), (2.0, 0.025)])
def test_guard_accepts_resolved_steps(c, tau_ref):
    check_reference_guard(c, tau_ref)


def test_guard_rejects_large_steps():
    with pytest.raises(GuardViolationError) as exc_info:
        check_reference_guard(64.0, 1e-4)

    assert "tau_ref*c^2=0.4096 exceeds 0.1" in exc_info.value.reason


def test_integrate_checks_guard_before_work(complex_data, monkeypatch):
    calls = []
    monkeypatch.setattr(LawsonReference, "step", lambda self, u, v: calls.append(1))

    with pytest.raises(GuardViolationError):
        reference_integrate(
            initial_state(complex_data, 16.0),
            KGParams(c=16.0, lam=-1.0, p=1),
            tau_ref=1e-3,
            T=0.1,
        )

    assert calls == []


def test_linear_reference_matches_exact_solution(complex_data):
    params = KGParams(c=2.0, lam=-1.0, p=0)

    trajectory = reference_integrate(
        initial_state(complex_data, params.c), params, tau_ref=1e-3, T=0.2
    )

    exact = exact_linear_solution(complex_data, params, 0.2)
    assert trajectory.times[-1] == pytest.approx(0.2)
    assert np.max(np.abs(from_first_order(trajectory.final).coeffs - exact.coeffs)) < 1e-10


def test_snapshots(complex_data, cubic_params):
    trajectory = reference_integrate(
        initial_state(complex_data, 2.0),
        cubic_params.with_c(2.0),
        tau_ref=1e-3,
        T=0.01,
        snapshot_every=4,
    )

    assert_allclose(trajectory.times, [0.0, 0.004, 0.008, 0.01])


def test_endpoints_only_by_default(complex_data, cubic_params):
    trajectory = reference_integrate(
        initial_state(complex_data, 2.0), cubic_params.with_c(2.0), tau_ref=1e-3, T=0.01
    )

    assert len(trajectory) == 2


def test_invalid_snapshot_interval(complex_data, cubic_params):
    with pytest.raises(ParameterError):
        reference_integrate(
            initial_state(complex_data, 2.0),
            cubic_params.with_c(2.0),
            tau_ref=1e-3,
            T=0.01,
            snapshot_every=0,
        )


def test_real_data_keeps_equal_components(real_data, cubic_params):
    params = cubic_params.with_c(3.0)

    trajectory = reference_integrate(initial_state(real_data, 3.0), params, tau_ref=1e-3, T=0.05)

    assert_allclose(trajectory.final.u.coeffs, trajectory.final.v.coeffs, atol=1e-14)


def test_snapped_step_is_reported(complex_data, cubic_params, caplog):
    reference_integrate(
        initial_state(complex_data, 2.0), cubic_params.with_c(2.0), tau_ref=3e-3, T=0.01
    )

    assert "Reference step snapped" in caplog.text
