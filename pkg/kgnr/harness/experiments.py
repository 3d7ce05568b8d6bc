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

"""Convergence and conservation experiments."""
import logging
import time
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, ClassVar, Dict, Final, List, Optional, Sequence, Tuple, Type, TypeVar

from kgnr.diagnostics import (
    QuantityName,
    QuantityReport,
    charge0,
    charge_uv,
    energy0,
    energy_uv,
    rest_energy_split,
)
from kgnr.errors import ParameterError, SchedulingError, UnsupportedRegimeError
from kgnr.limit import (
    NLSPair,
    SplittingConfig,
    initial_nls_pair,
    linear_u0_exact,
    linear_xi1_exact,
    solve_nls,
    solve_xi1_cubic,
)
from kgnr.model import (
    FirstOrderState,
    InitialData,
    Trajectory,
    exact_linear_solution,
    from_first_order,
    initial_state,
    reference_integrate,
    step_count,
)
from kgnr.reconstruction import (
    lift_to_first_order,
    reconstruct_second_order_cubic,
    reconstruct_second_order_linear,
    reconstruct_z0,
)
from kgnr.spectral import Field, l2_norm
from kgnr.util.threads import thread_limit

from .config import ExperimentConfig, ExperimentKind
from .results import ResultRow, ResultTable, report_row
from .slopes import fit_slope

logger = logging.getLogger(__name__)

SELF_REFERENCE_RATIO: Final[int] = 64

PointT = TypeVar("PointT")

# Error samples as (final-time error, max over shared snapshots).
ErrorPair = Tuple[float, float]


def _error_pair(errors: Sequence[float]) -> ErrorPair:
    return errors[-1], max(errors)


def _pair_error(first: NLSPair, second: NLSPair) -> float:
    return float((l2_norm(first.u0 - second.u0) ** 2 + l2_norm(first.v0 - second.v0) ** 2) ** 0.5)


class Experiment(ABC):
    """One sweep described by an ExperimentConfig.

    :param config: Validated configuration.
    """

    kind: ClassVar[ExperimentKind]

    def __init__(self, *, config: ExperimentConfig) -> None:
        self.config: Final[ExperimentConfig] = config
        self.data: Final[InitialData] = config.build_initial_data()
        self.h: Final[float] = self.data.grid.spacing

    @classmethod
    def describe(cls) -> str:
        """One-line description."""
        return (cls.__doc__ or "").strip().splitlines()[0]

    def check_supported(self) -> None:
        """Refuse (experiment, p, data) combinations that are not implemented.

        :raises UnsupportedRegimeError: If unsupported.
        """

    @abstractmethod
    def run(self) -> ResultTable:
        """Run the sweep."""
        ...

    def _splitting(self, tau: Optional[float] = None) -> SplittingConfig:
        return SplittingConfig(
            tau=self.config.tau if tau is None else tau,
            quadrature_nodes=self.config.quadrature_nodes,
        )

    def _row(
        self,
        quantity: str,
        *,
        c: Optional[float] = None,
        tau: Optional[float] = None,
        errors: Optional[ErrorPair] = None,
        value: Optional[float] = None,
        runtime_s: float = 0.0,
    ) -> ResultRow:
        if errors is not None:
            final, worst = errors
            error_l2: Optional[float] = final
            value = worst
        else:
            error_l2 = None
        return ResultRow(
            experiment=self.kind.value,
            quantity=quantity,
            K=self.config.K,
            T=self.config.T,
            h=self.h,
            c=c,
            tau=tau,
            error_l2=error_l2,
            value=value,
            runtime_s=runtime_s if self.config.record_runtime else 0.0,
        )

    def _sweep(
        self, points: Sequence[PointT], measure: Callable[[PointT], List[ResultRow]]
    ) -> List[ResultRow]:
        """Measure every point concurrently, keeping the order of ``points``."""
        workers = max(1, min(thread_limit(), len(points)))
        logger.debug("Sweeping %d points on %d threads.", len(points), workers)
        with ThreadPoolExecutor(max_workers=workers) as executor:
            batches = list(executor.map(self._timed(measure), points))
        return [row for batch in batches for row in batch]

    def _timed(
        self, measure: Callable[[PointT], List[ResultRow]]
    ) -> Callable[[PointT], List[ResultRow]]:
        def _run(point: PointT) -> List[ResultRow]:
            start = time.perf_counter()
            rows = measure(point)
            elapsed = time.perf_counter() - start
            logger.info("Finished %s point %r in %.3fs.", self.kind.value, point, elapsed)
            if not self.config.record_runtime:
                return rows
            fields = [row.to_dict() for row in rows]
            for field in fields:
                field["runtime_s"] = elapsed
            return [ResultRow.from_dict(field) for field in fields]

        return _run

    def _table(self, rows: List[ResultRow]) -> ResultTable:
        return ResultTable(experiment=self.kind.value, rows=fit_orders(rows))


def _abscissa(row: ResultRow) -> Optional[float]:
    return row.c if row.c is not None else row.tau


def _ordinate(row: ResultRow) -> Optional[float]:
    # Error rows hold the max over snapshots in value.
    return row.value if row.value is not None else row.error_l2


def fit_orders(rows: Sequence[ResultRow]) -> List[ResultRow]:
    """Attach the fitted convergence order of each quantity to its rows.

    Orders are fitted on the max over snapshots, so they do not depend on the
    phase of the final snapshot.  They are decay rates in c for c-sweeps
    (error ~ c^-order) and growth rates in tau for tau-sweeps (error ~ tau^order).
    Quantities with fewer than three positive points get no order.
    """
    orders: Dict[str, Optional[float]] = {}
    for quantity in dict.fromkeys(row.quantity for row in rows):
        selected = [row for row in rows if row.quantity == quantity]
        points = [
            (x, y)
            for x, y in ((_abscissa(row), _ordinate(row)) for row in selected)
            if x is not None and y is not None
        ]
        try:
            slope = fit_slope(points)
        except ParameterError as error:
            logger.debug("No order for %s: %s", quantity, error.reason)
            orders[quantity] = None
            continue

        in_c = all(row.c is not None for row in selected)
        orders[quantity] = -slope if in_c else slope
        _check_monotone(quantity, selected)

    return [row.with_slope(orders[row.quantity]) for row in rows]


def _check_monotone(quantity: str, rows: Sequence[ResultRow]) -> None:
    # Error rows only; value holds their max over snapshots.
    sweep = [
        (row.c, row.value)
        for row in rows
        if row.c is not None and row.error_l2 is not None and row.value is not None
    ]
    if len(sweep) < 3:
        return

    inversions = [
        index for index in range(1, len(sweep)) if sweep[index][1] > sweep[index - 1][1]
    ]
    if not inversions:
        return
    if inversions == [len(sweep) - 1]:
        logger.info(
            "%s error increases at the largest c=%g; reference error competes there.",
            quantity,
            sweep[-1][0],
        )
        return
    logger.warning(
        "%s error is not non-increasing in c at c=%s.",
        quantity,
        ", ".join(f"{sweep[index][0]:g}" for index in inversions),
    )


def _against_reference(
    reference: Trajectory[FirstOrderState],
    limit: Trajectory[NLSPair],
    approximate: Callable[[float, NLSPair], Field],
) -> ErrorPair:
    """Errors of an approximation at every reference snapshot the limit also holds."""
    errors: List[float] = []
    for t, state in reference:
        try:
            w = limit.at(t)
        except SchedulingError:
            continue
        errors.append(l2_norm(from_first_order(state) - approximate(t, w)))

    if not errors:
        raise SchedulingError(reason="Reference and limit trajectories share no snapshot")
    # The final reference snapshot is always shared.
    return _error_pair(errors)


class LinearConvergenceInC(Experiment):
    """Linear model: z0 and z0 + z1/c^2 against the exact solution."""

    kind = ExperimentKind.LINEAR_CONVERGENCE_IN_C

    def check_supported(self) -> None:
        if self.config.p != 0:
            raise UnsupportedRegimeError(
                reason=f"{self.kind.value} needs the linear model (p=0), got p={self.config.p}"
            )

    def _measure(self, c: float) -> List[ResultRow]:
        params = self.config.params(c)
        lam = params.lam
        steps, tau = step_count(self.config.T, self.config.tau)

        first: List[float] = []
        second: List[float] = []
        for n in range(steps + 1):
            t = n * tau
            z = exact_linear_solution(self.data, params, t)
            w = linear_u0_exact(self.data, lam, t)
            correction = linear_xi1_exact(self.data, lam, t)
            first.append(l2_norm(z - reconstruct_z0(w, c).z))
            second.append(l2_norm(z - reconstruct_second_order_linear(w, correction, c, lam).z))

        return [
            self._row("z0", c=c, tau=tau, errors=_error_pair(first)),
            self._row("z0+z1", c=c, tau=tau, errors=_error_pair(second)),
        ]

    def run(self) -> ResultTable:
        return self._table(self._sweep(self.config.c_list, self._measure))


class _CubicInC(Experiment):
    """Shared machinery of the nonlinear c-sweeps."""

    def check_supported(self) -> None:
        if self.config.p < 1:
            raise UnsupportedRegimeError(
                reason=f"{self.kind.value} needs a nonlinear model (p>=1), got p={self.config.p}"
            )

    def _limit(self) -> Trajectory[NLSPair]:
        params = self.config.params(self.config.c_list[0])
        return solve_nls(initial_nls_pair(self.data), params, self._splitting(), self.config.T)

    def _reference(self, c: float, limit: Trajectory[NLSPair]) -> Trajectory[FirstOrderState]:
        every = max(1, int(round(limit.step / self.config.tau_ref)))
        return reference_integrate(
            initial_state(self.data, c),
            self.config.params(c),
            tau_ref=self.config.tau_ref,
            T=self.config.T,
            snapshot_every=every,
        )


class CubicFirstOrderInC(_CubicInC):
    """Nonlinear model: Strang-split z0 against the Lawson reference."""

    kind = ExperimentKind.CUBIC_FIRST_ORDER_IN_C

    def run(self) -> ResultTable:
        limit = self._limit()

        def _measure(c: float) -> List[ResultRow]:
            reference = self._reference(c, limit)
            errors = _against_reference(reference, limit, lambda t, w: reconstruct_z0(w, c).z)
            return [self._row("z0", c=c, tau=limit.step, errors=errors)]

        return self._table(self._sweep(self.config.c_list, _measure))


class CubicSecondOrderInC(_CubicInC):
    """Cubic model with real data: z0 and z0 + z1/c^2 against the Lawson reference."""

    kind = ExperimentKind.CUBIC_SECOND_ORDER_IN_C

    def check_supported(self) -> None:
        if self.config.p != 1:
            raise UnsupportedRegimeError(
                reason=f"{self.kind.value} needs the cubic model (p=1), got p={self.config.p}"
            )
        if not self.data.is_real():
            raise UnsupportedRegimeError(
                reason=f"{self.kind.value} needs real initial data"
            )

    def run(self) -> ResultTable:
        limit = self._limit()
        corrections = solve_xi1_cubic(
            limit,
            self.data,
            self.config.lam,
            self._splitting(),
            self.config.T,
            variant=self.config.g0_variant,
        )
        lam = self.config.lam

        def _measure(c: float) -> List[ResultRow]:
            reference = self._reference(c, limit)
            first = _against_reference(reference, limit, lambda t, w: reconstruct_z0(w, c).z)
            second = _against_reference(
                reference,
                limit,
                lambda t, w: reconstruct_second_order_cubic(
                    w, corrections.at(t).xi1, c, lam
                ).z,
            )
            return [
                self._row("z0", c=c, tau=limit.step, errors=first),
                self._row("z0+z1", c=c, tau=limit.step, errors=second),
            ]

        return self._table(self._sweep(self.config.c_list, _measure))


class TauConvergence(Experiment):
    """Strang splitting order in tau against a tau/64 self-reference."""

    kind = ExperimentKind.TAU_CONVERGENCE

    @property
    def _with_correction(self) -> bool:
        return self.config.p == 1 and self.data.is_real()

    def run(self) -> ResultTable:
        params = self.config.params(self.config.c_list[0])
        psi0 = initial_nls_pair(self.data)
        fine = min(self.config.tau_list) / SELF_REFERENCE_RATIO
        logger.info("Self-reference with tau=%g.", fine)
        reference = solve_nls(psi0, params, self._splitting(fine), self.config.T)
        reference_corrections = None
        if self._with_correction:
            reference_corrections = solve_xi1_cubic(
                reference,
                self.data,
                self.config.lam,
                self._splitting(fine),
                self.config.T,
                variant=self.config.g0_variant,
            )

        def _measure(tau: float) -> List[ResultRow]:
            limit = solve_nls(psi0, params, self._splitting(tau), self.config.T)
            errors: List[float] = []
            shared: List[float] = []
            for t, w in limit:
                try:
                    errors.append(_pair_error(w, reference.at(t)))
                except SchedulingError:
                    continue
                shared.append(t)
            rows = [self._row("w0", tau=limit.step, errors=_error_pair(errors))]

            if reference_corrections is not None:
                corrections = solve_xi1_cubic(
                    limit,
                    self.data,
                    self.config.lam,
                    self._splitting(tau),
                    self.config.T,
                    variant=self.config.g0_variant,
                )
                xi_errors = [
                    l2_norm(corrections.at(t).xi1 - reference_corrections.at(t).xi1)
                    for t in shared
                ]
                rows.append(self._row("xi1", tau=limit.step, errors=_error_pair(xi_errors)))
            return rows

        return self._table(self._sweep(self.config.tau_list, _measure))


def _deviation(reports: Sequence[QuantityReport]) -> float:
    start = reports[0].value
    return max(abs(report.value - start) for report in reports)


class ConservationStudy(Experiment):
    """Drift of Q0, the limit norms, Q and reduced energy of z0, and the reference invariants."""

    kind = ExperimentKind.CONSERVATION_STUDY

    def _limit_rows(self, limit: Trajectory[NLSPair]) -> List[ResultRow]:
        start = limit.initial
        norm_u, norm_v = start.norms()
        charge_start = charge0(start)
        charge_drift = norm_u_drift = norm_v_drift = 0.0
        for _, w in limit:
            u, v = w.norms()
            charge_drift = max(charge_drift, abs(charge0(w) - charge_start))
            norm_u_drift = max(norm_u_drift, abs(u - norm_u))
            norm_v_drift = max(norm_v_drift, abs(v - norm_v))

        tau = limit.step
        return [
            self._row("Q0_drift", tau=tau, value=charge_drift),
            self._row("u0_norm_drift", tau=tau, value=norm_u_drift),
            self._row("v0_norm_drift", tau=tau, value=norm_v_drift),
        ]

    def _report_row(self, report: QuantityReport, *, tau: float) -> ResultRow:
        return report_row(report, experiment=self.kind.value, K=self.config.K, h=self.h, tau=tau)

    def _z0_rows(self, c: float, limit: Trajectory[NLSPair]) -> List[ResultRow]:
        """Invariants of the lifted Strang solution, with its final-time reports."""
        params = self.config.params(c)
        charges: List[QuantityReport] = []
        energies: List[QuantityReport] = []
        reduced: List[QuantityReport] = []
        for t, w in limit:
            lifted = lift_to_first_order(w, c)
            charges.append(
                QuantityReport(name=QuantityName.Q, value=charge_uv(lifted, c), t=t, params=params)
            )
            energies.append(
                QuantityReport(
                    name=QuantityName.E, value=energy_uv(lifted, params), t=t, params=params
                )
            )
            reduced.append(
                QuantityReport(
                    name=QuantityName.E0, value=energy0(w, t, c, params), t=t, params=params
                )
            )

        final = limit.final
        _, _, rest = rest_energy_split(lift_to_first_order(final, c), c, 1)
        rest_energy = QuantityReport(name=QuantityName.EREST, value=rest, t=final.t, params=params)

        tau = limit.step
        return [
            self._row("Q_z0_deviation", c=c, tau=tau, value=_deviation(charges)),
            self._row("E0_deviation", c=c, tau=tau, value=_deviation(reduced)),
            self._row("E_z0_max", c=c, tau=tau, value=max(abs(e.value) for e in energies)),
        ] + [
            self._report_row(report, tau=tau)
            for report in (charges[-1], energies[-1], reduced[-1], rest_energy)
        ]

    def _reference_rows(self, c: float, limit: Trajectory[NLSPair]) -> List[ResultRow]:
        config = self.config
        params = config.params(c)
        every = max(1, int(round(limit.step / config.tau_ref)))
        reference = reference_integrate(
            initial_state(self.data, c),
            params,
            tau_ref=config.tau_ref,
            T=config.T,
            snapshot_every=every,
        )

        charges = [
            QuantityReport(name=QuantityName.Q, value=charge_uv(state, c), t=t, params=params)
            for t, state in reference
        ]
        energies = [
            QuantityReport(name=QuantityName.E, value=energy_uv(state, params), t=t, params=params)
            for t, state in reference
        ]
        q_u, q_v, _ = rest_energy_split(reference.initial, c, 0)
        charge_scale = max(abs(charges[0].value), q_u - q_v)
        energy_scale = max(abs(energies[0].value), 1e-300)

        return [
            self._row(
                "Q_ref_drift",
                c=c,
                tau=config.tau_ref,
                value=_deviation(charges) / charge_scale,
            ),
            self._row(
                "E_ref_drift",
                c=c,
                tau=config.tau_ref,
                value=_deviation(energies) / energy_scale,
            ),
        ]

    def run(self) -> ResultTable:
        config = self.config
        limit = solve_nls(
            initial_nls_pair(self.data),
            config.params(config.c_list[0]),
            self._splitting(),
            config.T,
        )
        rows = self._limit_rows(limit)

        def _measure(c: float) -> List[ResultRow]:
            measured = self._z0_rows(c, limit)
            if config.reference_conservation:
                measured.extend(self._reference_rows(c, limit))
            return measured

        rows.extend(self._sweep(config.c_list, _measure))
        return self._table(rows)


EXPERIMENTS: Final[Dict[ExperimentKind, Type[Experiment]]] = {
    experiment.kind: experiment
    for experiment in (
        LinearConvergenceInC,
        CubicFirstOrderInC,
        CubicSecondOrderInC,
        TauConvergence,
        ConservationStudy,
    )
}


def get_experiment(config: ExperimentConfig) -> Experiment:
    """Instantiate the experiment named by ``config``.

    :raises GuardViolationError: If the reference step is too large, before any work.
    :raises UnsupportedRegimeError: If the (experiment, p, data) combination is unsupported.
    """
    config.check_guard()
    experiment = EXPERIMENTS[config.experiment](config=config)
    experiment.check_supported()
    return experiment


def run_experiment(config: ExperimentConfig) -> ResultTable:
    """Run the sweep described by ``config``.

    :returns: Rows in configuration order with fitted orders attached.
    """
    experiment = get_experiment(config)
    logger.info("Running %s over %s.", config.experiment.value, _sweep_label(config))
    return experiment.run()


def _sweep_label(config: ExperimentConfig) -> str:
    if config.experiment == ExperimentKind.TAU_CONVERGENCE:
        return "tau=" + ", ".join(f"{tau:g}" for tau in config.tau_list)
    return "c=" + ", ".join(f"{c:g}" for c in config.c_list)
