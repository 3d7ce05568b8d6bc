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

"""Result tables and their CSV, JSON and gnuplot outputs."""
import csv
import io
import json
import logging
import pathlib
from typing import Any, Dict, Final, Iterator, List, Mapping, Optional, Sequence, Tuple

from kgnr.diagnostics import QuantityReport
from kgnr.errors import ConfigurationError

from .config import ExperimentConfig

logger = logging.getLogger(__name__)

CSV_COLUMNS: Final[Tuple[str, ...]] = (
    "experiment",
    "c",
    "tau",
    "h",
    "K",
    "T",
    "error_l2",
    "slope",
    "quantity",
    "value",
    "runtime_s",
)

CSV_NAME: Final[str] = "results.csv"
JSON_NAME: Final[str] = "results.json"
PLOT_NAME: Final[str] = "plot.gp"


class ResultRow:
    """One measurement of a sweep.

    Error rows carry the final-time L2 error in ``error_l2`` and the maximum over
    stored snapshots in ``value``; quantity rows only fill ``value``.  ``slope``
    is the convergence order fitted on ``value`` over all rows of the same
    quantity.
    """

    def __init__(
        self,
        *,
        experiment: str,
        quantity: str,
        K: int,
        T: float,
        h: float,
        c: Optional[float] = None,
        tau: Optional[float] = None,
        error_l2: Optional[float] = None,
        slope: Optional[float] = None,
        value: Optional[float] = None,
        runtime_s: float = 0.0,
    ) -> None:
        if error_l2 is not None and not error_l2 >= 0:
            raise ConfigurationError(reason=f"Errors must be nonnegative, got {error_l2!r}")

        self.experiment: Final[str] = experiment
        self.c: Final[Optional[float]] = c
        self.tau: Final[Optional[float]] = tau
        self.h: Final[float] = float(h)
        self.K: Final[int] = int(K)
        self.T: Final[float] = float(T)
        self.error_l2: Final[Optional[float]] = error_l2
        self.slope: Final[Optional[float]] = slope
        self.quantity: Final[str] = quantity
        self.value: Final[Optional[float]] = value
        self.runtime_s: Final[float] = float(runtime_s)

    def with_slope(self, slope: Optional[float]) -> "ResultRow":
        """Copy of the row with ``slope`` set."""
        fields = self.to_dict()
        fields["slope"] = slope
        return ResultRow(**fields)

    def to_dict(self) -> Dict[str, Any]:
        """Mapping of column name to value."""
        return {column: getattr(self, column) for column in CSV_COLUMNS}

    @classmethod
    def from_dict(cls, fields: Mapping[str, Any]) -> "ResultRow":
        """Inverse of ``to_dict``.

        :raises ConfigurationError: On missing or unknown columns.
        """
        if set(fields) != set(CSV_COLUMNS):
            raise ConfigurationError(
                reason=f"Result rows need exactly the columns {', '.join(CSV_COLUMNS)}"
            )
        return cls(**dict(fields))

    def __eq__(self, other: object) -> bool:
        """Rows are equal when all columns are."""
        if not isinstance(other, ResultRow):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self) -> str:
        """Return representation."""
        return f"ResultRow({self.to_dict()!r})"


class ResultTable:
    """Ordered rows of one experiment run."""

    def __init__(self, *, experiment: str, rows: Sequence[ResultRow] = ()) -> None:
        self.experiment: Final[str] = experiment
        self.rows: Final[List[ResultRow]] = list(rows)

    def __len__(self) -> int:
        """Number of rows."""
        return len(self.rows)

    def __iter__(self) -> Iterator[ResultRow]:
        """Iterate rows in emission order."""
        return iter(self.rows)

    def __eq__(self, other: object) -> bool:
        """Tables are equal when their rows are."""
        if not isinstance(other, ResultTable):
            return NotImplemented
        return self.experiment == other.experiment and self.rows == other.rows

    def quantities(self) -> List[str]:
        """Quantity names in order of first appearance."""
        seen: Dict[str, None] = {}
        for row in self.rows:
            seen.setdefault(row.quantity, None)
        return list(seen)

    def select(self, quantity: str) -> List[ResultRow]:
        """Rows of one quantity."""
        return [row for row in self.rows if row.quantity == quantity]

    def slope_of(self, quantity: str) -> Optional[float]:
        """Fitted order recorded for ``quantity``, if any."""
        for row in self.select(quantity):
            if row.slope is not None:
                return row.slope
        return None

    def to_json(self) -> Dict[str, Any]:
        """JSON-compatible mapping."""
        return {"experiment": self.experiment, "rows": [row.to_dict() for row in self.rows]}

    @classmethod
    def from_json(cls, document: Mapping[str, Any]) -> "ResultTable":
        """Inverse of ``to_json``."""
        return cls(
            experiment=document["experiment"],
            rows=[ResultRow.from_dict(row) for row in document["rows"]],
        )

    def __repr__(self) -> str:
        """Return representation."""
        return f"ResultTable(experiment={self.experiment!r}, rows={len(self.rows)})"


def report_row(
    report: QuantityReport, *, experiment: str, K: int, h: float, tau: Optional[float] = None
) -> ResultRow:
    """Row holding a diagnostic quantity; ``T`` is the time it was evaluated at."""
    return ResultRow(
        experiment=experiment,
        quantity=report.name.value,
        K=K,
        T=report.t,
        h=h,
        c=report.params.c,
        tau=tau,
        value=report.value,
    )


def format_number(value: Any) -> str:
    """Serialize a cell: 17 significant digits, empty for missing values."""
    if value is None:
        return ""
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return format(value, ".17g")


def render_csv(table: ResultTable) -> str:
    """CSV text of the table, header first."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in table:
        writer.writerow([format_number(getattr(row, column)) for column in CSV_COLUMNS])
    return buffer.getvalue()


def render_json(table: ResultTable) -> str:
    """JSON text of the table with stable key order."""
    return json.dumps(table.to_json(), indent=2, sort_keys=True) + "\n"


def _abscissa(table: ResultTable) -> Tuple[str, int]:
    if any(row.c is not None for row in table):
        return "c", CSV_COLUMNS.index("c") + 1
    return "tau", CSV_COLUMNS.index("tau") + 1


def _anchor(rows: Sequence[ResultRow], axis: str) -> Optional[Tuple[float, float]]:
    for row in rows:
        x = row.c if axis == "c" else row.tau
        y = row.value
        if x is not None and y is not None and x > 0 and y > 0:
            return x, y
    return None


def render_plot_script(table: ResultTable) -> str:
    """Gnuplot script drawing every quantity on log-log axes from results.csv.

    Error quantities are drawn by their max over snapshots, the values the
    orders are fitted on.  Each plotted quantity gets a dashed reference line
    through its first point with the fitted order rounded to an integer.
    """
    axis, x_column = _abscissa(table)
    value_column = CSV_COLUMNS.index("value") + 1
    quantity_column = CSV_COLUMNS.index("quantity") + 1

    lines = [
        f"# {table.experiment}",
        "set datafile separator ','",
        "set logscale xy",
        "set key outside right",
        f"set xlabel '{axis}'",
        "set ylabel 'error'",
        "set format y '%.0e'",
    ]

    plots: List[str] = []
    for index, quantity in enumerate(table.quantities(), start=1):
        rows = [
            row
            for row in table.select(quantity)
            if (row.c if axis == "c" else row.tau) is not None
        ]
        if len(rows) < 2:
            continue
        plots.append(
            f"'{CSV_NAME}' using {x_column}:(strcol({quantity_column}) eq '{quantity}' "
            f"? ${value_column} : 1/0) with linespoints title '{quantity}'"
        )
        slope = table.slope_of(quantity)
        anchor = _anchor(rows, axis)
        if slope is None or anchor is None or round(slope) == 0:
            continue
        order = round(slope)
        # c-sweep orders are decay rates, tau-sweep orders growth rates.
        exponent = -order if axis == "c" else order
        x0, y0 = anchor
        lines.append(
            f"ref{index}(x) = {format_number(y0)} * (x / {format_number(x0)})**({exponent})"
        )
        plots.append(f"ref{index}(x) with lines dashtype 2 title 'order {order}'")

    if plots:
        lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"


def _write(path: pathlib.Path, text: str) -> None:
    try:
        path.write_text(text)
    except OSError as error:
        raise ConfigurationError(reason=f"Cannot write {str(path)!r}: {error}") from error


def emit_outputs(
    table: ResultTable,
    config: ExperimentConfig,
    *,
    output_dir: Optional[pathlib.Path] = None,
) -> List[pathlib.Path]:
    """Write results.csv, results.json and plot.gp.

    :param table: Nonempty result table.
    :param config: Configuration the table was produced with.
    :param output_dir: Overrides ``config.output_dir``; created if missing.

    :returns: Paths written.

    :raises ConfigurationError: If the table is empty or the directory is unwritable.
    """
    if output_dir is None:
        output_dir = config.output_dir
    if not table.rows:
        raise ConfigurationError(reason="Refusing to emit an empty result table")

    try:
        output_dir.mkdir(parents=True, exist_ok=True)
    except OSError as error:
        raise ConfigurationError(
            reason=f"Cannot create output directory {str(output_dir)!r}: {error}"
        ) from error

    outputs = [
        (output_dir / CSV_NAME, render_csv(table)),
        (output_dir / JSON_NAME, render_json(table)),
        (output_dir / PLOT_NAME, render_plot_script(table)),
    ]
    for path, text in outputs:
        _write(path, text)
        logger.info("Wrote %s.", path)

    return [path for path, _ in outputs]


def load_results(path: pathlib.Path) -> ResultTable:
    """Read a results.json written by ``emit_outputs``.

    :raises ConfigurationError: If the file cannot be read or parsed.
    """
    try:
        document = json.loads(path.read_text())
    except (OSError, ValueError) as error:
        raise ConfigurationError(
            reason=f"Cannot load results from {str(path)!r}: {error}"
        ) from error
    return ResultTable.from_json(document)
