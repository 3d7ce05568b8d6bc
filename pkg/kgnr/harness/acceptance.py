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

"""Desk-scale acceptance suite behind ``kgnr verify``."""
import logging
import time
from typing import Callable, Dict, Final, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from kgnr.diagnostics import charge_uv, charge_z, energy_uv, energy_z
from kgnr.errors import AcceptanceError, KGNRError
from kgnr.limit import G0Variant, NLSPair, averaged_nonlinearity, traceless_expm
from kgnr.model import (
    InitialDataPreset,
    KGParams,
    TaylorKind,
    remainder_constant,
    taylor_coefficients,
    to_first_order,
)
from kgnr.spectral import Field, SpectralGrid, l2_norm, make_grid

from .config import ExperimentConfig, ExperimentKind
from .experiments import run_experiment
from .results import ResultTable

logger = logging.getLogger(__name__)

SEED: Final[int] = 20210401


class CheckResult:
    """Outcome of one acceptance criterion.

    :param name: Criterion identifier.
    :param passed: Whether it holds.
    :param detail: Measured values, human readable.
    :param runtime_s: Wall-clock time spent.
    """

    def __init__(self, *, name: str, passed: bool, detail: str, runtime_s: float = 0.0) -> None:
        self.name: Final[str] = name
        self.passed: Final[bool] = passed
        self.detail: Final[str] = detail
        self.runtime_s: Final[float] = float(runtime_s)

    def __repr__(self) -> str:
        """Return representation."""
        status = "PASS" if self.passed else "FAIL"
        return f"CheckResult(name={self.name!r}, {status}, detail={self.detail!r})"


def _within(value: Optional[float], window: Tuple[float, float]) -> bool:
    return value is not None and window[0] <= value <= window[1]


def _order_detail(label: str, value: Optional[float], window: Tuple[float, float]) -> str:
    shown = "n/a" if value is None else f"{value:.3f}"
    return f"{label} order {shown} in [{window[0]}, {window[1]}]"


def _values(table: ResultTable, quantity: str) -> Dict[float, float]:
    return {
        row.c: row.value
        for row in table.select(quantity)
        if row.c is not None and row.value is not None
    }


def check_linear_in_c() -> CheckResult:
    """Linear c-sweep against the exact solution: orders 2 and 4."""
    table = run_experiment(
        ExperimentConfig(
            experiment=ExperimentKind.LINEAR_CONVERGENCE_IN_C,
            c_list=(4, 8, 16, 32, 64),
            T=1.0,
            lam=-1.0,
            initial_data=InitialDataPreset.COMPLEX_MIXED,
        )
    )
    first, second = table.slope_of("z0"), table.slope_of("z0+z1")
    passed = _within(first, (1.8, 2.2)) and _within(second, (3.6, 4.4))
    detail = "; ".join(
        [_order_detail("z0", first, (1.8, 2.2)), _order_detail("z0+z1", second, (3.6, 4.4))]
    )
    return CheckResult(name="linear_in_c", passed=passed, detail=detail)


def check_cubic_first_order() -> CheckResult:
    """Cubic z0 c-sweep against the Lawson reference: order 2."""
    table = run_experiment(
        ExperimentConfig(
            experiment=ExperimentKind.CUBIC_FIRST_ORDER_IN_C,
            tau=1e-2,
            T=0.1,
            tau_ref=1e-5,
            initial_data=InitialDataPreset.COMPLEX_MIXED,
        )
    )
    order = table.slope_of("z0")
    return CheckResult(
        name="cubic_first_order_in_c",
        passed=_within(order, (1.7, 2.3)),
        detail=_order_detail("z0", order, (1.7, 2.3)),
    )


def _second_order_table(variant: G0Variant) -> ResultTable:
    return run_experiment(
        ExperimentConfig(
            experiment=ExperimentKind.CUBIC_SECOND_ORDER_IN_C,
            tau=1e-3,
            T=0.1,
            tau_ref=1e-5,
            initial_data=InitialDataPreset.REAL_MIXED,
            g0_variant=variant,
        )
    )


def check_cubic_second_order() -> CheckResult:
    """Cubic real-data c-sweep: orders 2 and 4, retrying with the alternate forcing."""
    details: List[str] = []
    for variant in G0Variant:
        table = _second_order_table(variant)
        first, second = table.slope_of("z0"), table.slope_of("z0+z1")
        passed = _within(first, (1.7, 2.3)) and _within(second, (3.4, 4.6))
        details.append(
            f"{variant.value}: "
            + "; ".join(
                [
                    _order_detail("z0", first, (1.7, 2.3)),
                    _order_detail("z0+z1", second, (3.4, 4.6)),
                ]
            )
        )
        if passed:
            details.append(f"matched with {variant.value}")
            return CheckResult(
                name="cubic_second_order_in_c", passed=True, detail=" | ".join(details)
            )
        logger.warning("Second-order sweep missed with %s.", variant.value)

    return CheckResult(name="cubic_second_order_in_c", passed=False, detail=" | ".join(details))


def check_strang_order() -> CheckResult:
    """Strang splitting of the cubic limit system: order 2 in tau."""
    table = run_experiment(
        ExperimentConfig(
            experiment=ExperimentKind.TAU_CONVERGENCE,
            T=0.1,
            tau_list=(4e-3, 2e-3, 1e-3, 5e-4),
            initial_data=InitialDataPreset.COMPLEX_MIXED,
        )
    )
    order = table.slope_of("w0")
    return CheckResult(
        name="tau_convergence",
        passed=_within(order, (1.8, 2.2)),
        detail=_order_detail("w0", order, (1.8, 2.2)),
    )


def check_conservation() -> CheckResult:
    """Invariants of the Strang solution, of z0 and of the reference.

    Initial data are normalized to unit H^1 norm.  Q0 and the limit norms must
    hold to 1e-11 absolute, the reference Q and E drifts to 1e-6 relative to
    their initial scale.
    """
    sweep = run_experiment(
        ExperimentConfig(
            experiment=ExperimentKind.CONSERVATION_STUDY,
            T=1.0,
            tau=1e-3,
            initial_data=InitialDataPreset.COMPLEX_MIXED,
            normalize_h1=True,
            reference_conservation=False,
        )
    )
    reference = run_experiment(
        ExperimentConfig(
            experiment=ExperimentKind.CONSERVATION_STUDY,
            T=0.1,
            tau=1e-3,
            c_list=(8,),
            initial_data=InitialDataPreset.COMPLEX_MIXED,
            normalize_h1=True,
            reference_conservation=True,
        )
    )

    def _single(table: ResultTable, quantity: str) -> float:
        return max(row.value for row in table.select(quantity) if row.value is not None)

    failures: List[str] = []
    measured: List[str] = []

    def _expect(label: str, value: Optional[float], ok: bool) -> None:
        measured.append(f"{label}={value if value is None else format(value, '.3g')}")
        if not ok:
            failures.append(label)

    q0 = _single(sweep, "Q0_drift")
    _expect("Q0_drift", q0, q0 <= 1e-11)
    for quantity in ("u0_norm_drift", "v0_norm_drift"):
        drift = _single(sweep, quantity)
        _expect(quantity, drift, drift <= 1e-11)
    for quantity in ("Q_ref_drift", "E_ref_drift"):
        drift = _single(reference, quantity)
        _expect(quantity, drift, drift <= 1e-6)

    charge_order = sweep.slope_of("Q_z0_deviation")
    _expect("Q_z0_order", charge_order, charge_order is not None and charge_order >= 1.7)

    reduced = _values(sweep, "E0_deviation")
    raw = _values(sweep, "E_z0_max")
    reduced_ratio = reduced[32.0] / reduced[4.0]
    raw_ratio = raw[32.0] / raw[4.0]
    _expect("E0_ratio", reduced_ratio, reduced_ratio <= 3.0)
    _expect("E_ratio", raw_ratio, raw_ratio >= 20.0)

    detail = ", ".join(measured)
    if failures:
        detail += "; failed: " + ", ".join(failures)
    return CheckResult(name="conservation", passed=not failures, detail=detail)


def check_expansion_remainder(
    orders: Sequence[int] = (0, 1, 2),
    speeds: Sequence[float] = (32.0, 64.0, 128.0),
    max_mode: int = 16,
) -> CheckResult:
    """Per-mode dispersion remainder bounded by a c-independent constant."""
    modes = np.arange(-max_mode, max_mode + 1)
    failures: List[str] = []
    measured: List[str] = []
    for order in orders:
        bound = abs(taylor_coefficients(TaylorKind.ALPHA, order + 2))
        constants = [remainder_constant(modes, c, order) for c in speeds]
        measured.append(
            f"N={order}: " + ", ".join(f"{constant:.4g}" for constant in constants)
            + f" <= {bound:.4g}"
        )
        if max(constants) > bound * (1.0 + 1e-12):
            failures.append(f"N={order} exceeds |alpha_{order + 2}|")
        if max(constants) > 1.5 * min(constants):
            failures.append(f"N={order} constants vary with c")

    detail = "; ".join(measured + failures)
    return CheckResult(name="expansion_remainder", passed=not failures, detail=detail)


def _random_field(grid: SpectralGrid, rng: np.random.Generator) -> Field:
    modes = grid.modes.astype(float)
    decay = np.exp(-0.5 * np.abs(modes))
    coeffs = (
        rng.standard_normal(grid.num_points) + 1j * rng.standard_normal(grid.num_points)
    ) * decay
    # Nyquist mode removed.
    coeffs[grid.index_of(-grid.num_modes)] = 0.0
    return Field(grid=grid, coeffs=coeffs)


def _relative(first: float, second: float) -> float:
    return abs(first - second) / max(abs(first), abs(second), 1e-300)


def check_oracles(samples: int = 100, matrices: int = 1000) -> CheckResult:
    """Invariants in both variable sets, theta quadrature, and the 2x2 exponential."""
    rng = np.random.default_rng(SEED)
    grid = make_grid(16)
    failures: List[str] = []

    worst_invariant = 0.0
    for _ in range(samples):
        c = float(rng.uniform(1.0, 32.0))
        # lam < 0: every energy term is positive.
        params = KGParams(c=c, lam=float(rng.uniform(-2.0, -0.1)), p=int(rng.integers(0, 3)))
        z, zt = _random_field(grid, rng), c * _random_field(grid, rng)
        state = to_first_order(z, zt, c)
        charge_scale = l2_norm(z) * l2_norm(zt) / c ** 2
        worst_invariant = max(
            worst_invariant,
            abs(charge_uv(state, c) - charge_z(z, zt, c)) / charge_scale,
            _relative(energy_uv(state, params), energy_z(z, zt, params)),
        )
    if worst_invariant > 1e-11:
        failures.append("invariants")

    w = NLSPair(u0=_random_field(grid, rng), v0=_random_field(grid, rng))
    coarse = averaged_nonlinearity(w, -1.0, 1, 4)
    fine = averaged_nonlinearity(w, -1.0, 1, 32)
    quadrature = max(
        float(np.max(np.abs(coarse[index].values - fine[index].values))) for index in (0, 1)
    )
    if quadrature > 1e-13:
        failures.append("quadrature")

    worst_expm = 0.0
    for _ in range(matrices):
        m11, m12, m21 = rng.uniform(-2.0, 2.0, size=3)
        closed = np.array(traceless_expm(m11, m12, m21), dtype=float).reshape(2, 2)
        oracle = scipy.linalg.expm(np.array([[m11, m12], [m21, -m11]]))
        error = float(np.max(np.abs(closed - oracle)) / np.max(np.abs(oracle)))
        worst_expm = max(worst_expm, error)
    if worst_expm > 1e-12:
        failures.append("matrix exponential")

    detail = (
        f"invariants {worst_invariant:.2g}, quadrature {quadrature:.2g}, expm {worst_expm:.2g}"
    )
    if failures:
        detail += "; failed: " + ", ".join(failures)
    return CheckResult(name="oracles", passed=not failures, detail=detail)


CHECKS: Final[Dict[str, Callable[[], CheckResult]]] = {
    "linear_in_c": check_linear_in_c,
    "cubic_first_order_in_c": check_cubic_first_order,
    "cubic_second_order_in_c": check_cubic_second_order,
    "tau_convergence": check_strang_order,
    "conservation": check_conservation,
    "expansion_remainder": check_expansion_remainder,
    "oracles": check_oracles,
}


def run_acceptance(names: Optional[Iterable[str]] = None) -> List[CheckResult]:
    """Run acceptance criteria in declaration order.

    Errors raised by a check are reported as failures of that check.

    :param names: Subset of ``CHECKS`` to run, all by default.

    :raises AcceptanceError: On an unknown check name.
    """
    selected = list(CHECKS) if names is None else list(names)
    unknown = [name for name in selected if name not in CHECKS]
    if unknown:
        raise AcceptanceError(reason=f"Unknown acceptance checks: {', '.join(unknown)}")

    results: List[CheckResult] = []
    for name in selected:
        start = time.perf_counter()
        try:
            result = CHECKS[name]()
        except KGNRError as error:
            result = CheckResult(name=name, passed=False, detail=f"raised {error!r}")
        elapsed = time.perf_counter() - start
        result = CheckResult(
            name=result.name, passed=result.passed, detail=result.detail, runtime_s=elapsed
        )
        logger.info(
            "%s %s (%.1fs): %s", "PASS" if result.passed else "FAIL", name, elapsed, result.detail
        )
        results.append(result)
    return results


def verify(results: Sequence[CheckResult]) -> None:
    """Raise if any criterion failed.

    :raises AcceptanceError: Naming the failed criteria.
    """
    failed = [result.name for result in results if not result.passed]
    if failed:
        raise AcceptanceError(reason=f"Acceptance failed: {', '.join(failed)}")
