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

import csv
import io
import json

import pytest

from kgnr.diagnostics import QuantityName, QuantityReport
from kgnr.errors import ConfigurationError
from kgnr.harness import (
    ExperimentConfig,
    ExperimentKind,
    ResultRow,
    ResultTable,
    emit_outputs,
    load_results,
    report_row,
)
from kgnr.model import KGParams
from kgnr.harness.results import CSV_COLUMNS, format_number, render_csv, render_plot_script


@pytest.fixture()
def config(tmp_path):
    return ExperimentConfig(
        experiment=ExperimentKind.LINEAR_CONVERGENCE_IN_C, output_dir=tmp_path / "out"
    )


@pytest.fixture()
def table():
    rows = [
        ResultRow(
            experiment="linear_convergence_in_c",
            quantity="z0",
            c=c,
            tau=None,
            K=32,
            T=1.0,
            h=0.19634954084936207,
            error_l2=0.3 / c ** 2,
            value=0.4 / c ** 2,
            slope=2.0,
            runtime_s=0.0,
        )
        for c in (4.0, 8.0, 16.0)
    ]
    rows += [
        ResultRow(
            experiment="linear_convergence_in_c",
            quantity="z0+z1",
            c=c,
            K=32,
            T=1.0,
            h=0.19634954084936207,
            error_l2=0.1 / c ** 4,
            value=0.1 / c ** 4,
            slope=4.0,
        )
        for c in (4.0, 8.0)
    ]
    return ResultTable(experiment="linear_convergence_in_c", rows=rows)


def test_format_number():
    assert format_number(None) == ""
    assert format_number(32) == "32"
    assert format_number(0.1) == "0.10000000000000001"
    assert format_number("z0") == "z0"


def test_negative_error():
    with pytest.raises(ConfigurationError):
        ResultRow(experiment="x", quantity="z0", K=16, T=1.0, h=0.1, error_l2=-1.0)


def test_table_queries(table):
    assert len(table) == 5
    assert table.quantities() == ["z0", "z0+z1"]
    assert [row.c for row in table.select("z0+z1")] == [4.0, 8.0]
    assert table.slope_of("z0") == 2.0
    assert table.slope_of("E0") is None


def test_with_slope(table):
    row = table.rows[0].with_slope(1.5)

    assert row.slope == 1.5
    assert row.c == table.rows[0].c


def test_csv(table):
    text = render_csv(table)

    lines = text.splitlines()
    assert len(lines) == 6
    assert lines[0] == ",".join(CSV_COLUMNS)

    records = list(csv.DictReader(io.StringIO(text)))
    assert records[0]["tau"] == ""
    assert float(records[0]["error_l2"]) == 0.3 / 16.0
    assert records[4]["quantity"] == "z0+z1"


def test_row_from_dict_requires_all_columns(table):
    fields = table.rows[0].to_dict()
    del fields["slope"]

    with pytest.raises(ConfigurationError):
        ResultRow.from_dict(fields)


def test_report_row():
    report = QuantityReport(
        name=QuantityName.E, value=12.5 + 1e-15j, t=0.75, params=KGParams(c=8.0, lam=-1.0, p=1)
    )

    row = report_row(report, experiment="conservation_study", K=16, h=0.2, tau=0.01)

    assert row.quantity == "E"
    assert (row.c, row.tau, row.T, row.value) == (8.0, 0.01, 0.75, 12.5)
    assert row.error_l2 is None
    lines = render_csv(ResultTable(experiment="conservation_study", rows=[row])).splitlines()
    assert lines[1] == "conservation_study,8,0.01,0.20000000000000001,16,0.75,,,E,12.5,0"


def test_plot_script(table):
    script = render_plot_script(table)

    assert "set logscale xy" in script
    assert "'results.csv' using 2:(strcol(9) eq 'z0' ? $10 : 1/0)" in script
    assert "ref1(x) = 0.025000000000000001 * (x / 4)**(-2)" in script
    assert "ref2(x) with lines dashtype 2 title 'order 4'" in script


def test_emit_outputs(table, config):
    paths = emit_outputs(table, config)

    assert [path.name for path in paths] == ["results.csv", "results.json", "plot.gp"]
    assert all(path.parent == config.output_dir for path in paths)
    assert json.loads(paths[1].read_text())["experiment"] == "linear_convergence_in_c"
    assert load_results(paths[1]) == table


def test_emit_outputs_override(table, config, tmp_path):
    paths = emit_outputs(table, config, output_dir=tmp_path / "elsewhere")

    assert paths[0] == tmp_path / "elsewhere" / "results.csv"
    assert not config.output_dir.exists()


def test_emit_outputs_is_deterministic(table, config, tmp_path):
    first = [path.read_text() for path in emit_outputs(table, config)]
    second = [
        path.read_text() for path in emit_outputs(table, config, output_dir=tmp_path / "again")
    ]

    assert first == second


def test_emit_empty_table(config):
    with pytest.raises(ConfigurationError) as exc_info:
        emit_outputs(ResultTable(experiment="linear_convergence_in_c"), config)

    assert exc_info.value.reason == "Refusing to emit an empty result table"


def test_emit_unwritable_directory(table, config, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")

    with pytest.raises(ConfigurationError) as exc_info:
        emit_outputs(table, config, output_dir=blocker / "out")

    assert exc_info.value.reason.startswith("Cannot create output directory")


def test_load_results_missing(tmp_path):
    with pytest.raises(ConfigurationError):
        load_results(tmp_path / "results.json")
