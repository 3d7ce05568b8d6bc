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

import json

import pytest

from kgnr import __version__
from kgnr.cli import main
from kgnr.harness import CHECKS, CheckResult


@pytest.fixture()
def linear_config(tmp_path):
    path = tmp_path / "linear.json"
    path.write_text(
        json.dumps(
            {
                "experiment": "linear_convergence_in_c",
                "K": 16,
                "T": 0.1,
                "tau": 0.05,
                "c_list": [4, 8, 16],
                "record_runtime": False,
                "output_dir": str(tmp_path / "results"),
            }
        )
    )
    return path


def test_version(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["--version"])

    assert exc_info.value.code == 0
    assert capsys.readouterr().out.strip() == f"kgnr {__version__}"


def test_list_experiments(capsys):
    assert main(["list-experiments"]) == 0

    lines = capsys.readouterr().out.splitlines()
    assert [line.split(":")[0] for line in lines] == [
        "linear_convergence_in_c",
        "cubic_first_order_in_c",
        "cubic_second_order_in_c",
        "tau_convergence",
        "conservation_study",
    ]


def test_run(linear_config, tmp_path, capsys):
    assert main(["-q", "run", str(linear_config)]) == 0

    output = capsys.readouterr().out
    assert "z0: order" in output
    assert "z0+z1: order" in output
    for name in ("results.csv", "results.json", "plot.gp"):
        assert (tmp_path / "results" / name).exists()


def test_run_output_dir_override(linear_config, tmp_path):
    assert main(["-q", "run", str(linear_config), "--output-dir", str(tmp_path / "other")]) == 0

    assert (tmp_path / "other" / "results.csv").exists()
    assert not (tmp_path / "results").exists()


def test_run_missing_config(tmp_path, capsys):
    assert main(["run", str(tmp_path / "missing.json")]) == 1

    assert "Cannot read" in capsys.readouterr().err


def test_run_unsupported_regime(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"experiment": "linear_convergence_in_c", "K": 16, "p": 1}))

    assert main(["run", str(path)]) == 1


@pytest.mark.parametrize(
    "document",
    [
        {"experiment": "tau_convergence", "K": "abc"},
        {"experiment": "tau_convergence", "K": None},
        {"experiment": "tau_convergence", "p": "x"},
        {"experiment": "tau_convergence", "initial_data": {"phi": [1, 2]}},
        {"experiment": "tau_convergence", "initial_data": {"psi": {"1": 1.0}}},
    ],
)
def test_run_malformed_config(tmp_path, capsys, document):
    path = tmp_path / "malformed.json"
    path.write_text(json.dumps(document))

    assert main(["run", str(path)]) == 1

    assert capsys.readouterr().err


def test_run_guard_violation(tmp_path, capsys):
    path = tmp_path / "guard.json"
    path.write_text(
        json.dumps(
            {
                "experiment": "cubic_first_order_in_c",
                "K": 16,
                "c_list": [8, 16, 32],
                "tau_ref": 1e-3,
                "output_dir": str(tmp_path / "results"),
            }
        )
    )

    assert main(["run", str(path)]) == 2

    assert "exceeds 0.1" in capsys.readouterr().err
    assert not (tmp_path / "results").exists()


@pytest.mark.parametrize("passed,code", [(True, 0), (False, 3)])
def test_verify_exit_codes(monkeypatch, capsys, passed, code):
    monkeypatch.setitem(
        CHECKS, "oracles", lambda: CheckResult(name="oracles", passed=passed, detail="stub")
    )

    assert main(["verify", "--check", "oracles"]) == code

    status = "PASS" if passed else "FAIL"
    assert capsys.readouterr().out.startswith(f"{status} oracles")


def test_verify_rejects_unknown_check():
    with pytest.raises(SystemExit) as exc_info:
        main(["verify", "--check", "warp_drive"])

    assert exc_info.value.code == 2
