#  Copyright (C) 2026 The lattice-isoperimetry authors.
#  This program is free software: you can redistribute it and/or modify
#  it under the terms of the GNU Affero General Public License as
#  published by the Free Software Foundation, either version 3 of the
#  License, or (at your option) any later version.
#  This program is distributed in the hope that it will be useful,
#  but WITHOUT ANY WARRANTY; without even the implied warranty of
#  MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
#  GNU Affero General Public License for more details.
#  You should have received a copy of the GNU Affero General Public License
#  along with this program. If not, see <https://www.gnu.org/licenses/>.

import json
from io import StringIO
from pathlib import Path
from typing import List, Tuple
from unittest.mock import patch

from pytest import CaptureFixture, mark, raises

from lattice_isoperimetry.cli import build_parser, main


def _run(argv: List[str]) -> Tuple[int, str]:
    out = StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_eval_human() -> None:
    code, text = _run(["eval", "--rho", "1,1,1,1,1,1"])
    assert code == 0
    assert "5.314740" in text
    assert "0.753" in text
    assert text.count("\n  ") == 14


def test_eval_json() -> None:
    code, text = _run(["eval", "--rho", "1,1,1,0,0,0", "--json"])
    assert code == 0
    report = json.loads(text)
    assert list(report) == ["rho", "det", "F_closed", "F_geometric", "Q", "faces", "volume"]
    assert report["F_closed"] == 6.0
    assert report["det"] == 1.0
    assert len(report["faces"]) == 14
    assert json.dumps(report, indent=2, ensure_ascii=False) + "\n" == text


@mark.parametrize(
    "rho, exit_code",
    [
        ("1,0,0,0,0,0", 3),
        ("1,1,1,1,1", 2),
        ("a,b,c,d,e,f", 2),
        ("1,1,1,1,1,-1", 2),
    ],
)
def test_eval_errors(rho: str, exit_code: int, capsys: CaptureFixture) -> None:
    code, text = _run(["eval", "--rho", rho])
    assert code == exit_code
    assert text == ""
    assert "error: " in capsys.readouterr().err


def test_missing_arguments() -> None:
    with raises(SystemExit) as exc:
        main(["eval"], out=StringIO())
    assert exc.value.code == 2
    with raises(SystemExit):
        build_parser().parse_args([])


@mark.parametrize(
    "rho, classification, stratum",
    [
        ("1,1,1,1,1,1", "interior_strict_min", "interior"),
        ("0,1,1,1,1,0", "saddle", "rhombic-dodecahedra"),
        ("1,1,1,0,0,0", "non_stationary", "boxes"),
    ],
)
def test_analyze(rho: str, classification: str, stratum: str) -> None:
    code, text = _run(["analyze", "--rho", rho, "--json"])
    assert code == 0
    report = json.loads(text)
    assert report["classification"] == classification
    assert len(report["hessian"]) == 6
    assert report["stratum"] == stratum


def test_analyze_human() -> None:
    code, text = _run(["analyze", "--rho", "0,1,1,1,1,0"])
    assert code == 0
    assert "one-sided Hessian" in text
    assert "stratum           rhombic-dodecahedra" in text
    assert text.rstrip().endswith("saddle")


def test_analyze_stratum() -> None:
    code, text = _run(["analyze", "--stratum", "boxes", "--json"])
    assert code == 0
    report = json.loads(text)
    assert report["stratum"] == "boxes"
    assert report["is_strict_min"] is True


def test_table() -> None:
    code, text = _run(["table"])
    assert code == 0
    lines = text.splitlines()
    assert len(lines) == 4
    for line, q in zip(lines[1:], ("0.5236", "0.7405", "0.7534")):
        assert f" {q} " in line


def test_table_json() -> None:
    code, text = _run(["table", "--json"])
    assert code == 0
    rows = json.loads(text)
    assert [row["Q"] for row in rows] == [0.5236, 0.7405, 0.7534]
    assert [row["structure"] for row in rows] == ["SC", "FCC", "BCC"]
    for row in rows:
        assert list(row) == ["structure", "F_exact", "F", "Q", "Q_tessellations"]


def test_orbits() -> None:
    code, text = _run(["orbits", "--json"])
    assert code == 0
    assert [orbit["orbit_size"] for orbit in json.loads(text)] == [6, 3, 12, 4, 4, 12]


def test_family(tmp_path: Path) -> None:
    path = tmp_path / "opposite.csv"
    code, text = _run(["family", "--class", "O", "--steps", "500", "--out", str(path)])
    assert code == 0
    assert text == ""
    lines = path.read_text().splitlines()
    assert lines[0] == "u,H,psi,tildeF,F_check"
    assert len(lines) == 502
    rows = [[float(value) for value in line.split(",")] for line in lines[1:]]
    assert min(rows, key=lambda row: row[3])[0] == 1.0


def test_family_stdout() -> None:
    code, text = _run(["family", "--class", "C", "--u-max", "2", "--steps", "4"])
    assert code == 0
    assert text.splitlines()[0] == "u,F"


def test_family_io_error(tmp_path: Path) -> None:
    code, _ = _run(["family", "--steps", "10", "--out", str(tmp_path / "missing" / "f.csv")])
    assert code == 4


def test_minimize_start() -> None:
    code, text = _run(["minimize", "--start", "1.1,0.9,1.05,0.95,1.02,0.98", "--json"])
    assert code == 0
    result = json.loads(text)
    assert result["converged"] is True
    assert result["method"] == "projected_gradient"
    assert abs(result["F_value"] - 5.31474) < 1e-5


def test_minimize_not_converged() -> None:
    code, text = _run(["minimize", "--start", "1.1,0.9,1.05,0.95,1.02,0.98", "--max-iter", "1"])
    assert code == 1
    assert "converged   False" in text


def test_minimize_random() -> None:
    code, text = _run(["minimize", "--random", "2", "--seed", "3", "--json"])
    assert code == 0
    summary = json.loads(text)
    assert summary["evidence"] == "empirical"
    assert summary["seed"] == 3
    assert len(summary["F_values"]) == 2


def test_export(tmp_path: Path) -> None:
    code, text = _run(["export", "--rho", "1,1,1,1,1,1"])
    assert code == 0
    lines = text.splitlines()
    assert sum(line.startswith("v ") for line in lines) == 24
    assert sum(line.startswith("f ") for line in lines) == 14

    path = tmp_path / "bcc.obj"
    code, _ = _run(["export", "--rho", "1,1,1,1,1,1", "--out", str(path)])
    assert code == 0
    assert path.read_text() == text


def test_verify() -> None:
    code, text = _run(["verify", "--json"])
    assert code == 0
    checks = json.loads(text)
    assert [check["name"] for check in checks] == [
        "exact_values",
        "cell_geometry",
        "table",
        "classification",
        "orbits",
        "opposite_family",
        "restricted_strata",
    ]
    assert all(check["passed"] for check in checks)


@mark.parametrize("option", ["--h-grad", "--h-hess"])
def test_analyze_zero_step(option: str, capsys: CaptureFixture) -> None:
    code, _ = _run(["analyze", "--rho", "1,1,1,1,1,1", option, "0"])
    assert code == 2
    assert "positive" in capsys.readouterr().err


def test_verify_cell_geometry_failure() -> None:
    with patch("lattice_isoperimetry.cli.check_vertex_table", return_value=[(1, 0, 2)]):
        code, text = _run(["verify", "--json"])
    assert code == 1
    checks = {check["name"]: check for check in json.loads(text)}
    assert not checks["cell_geometry"]["passed"]
    assert "(1, 0, 2)" in checks["cell_geometry"]["detail"]
    assert checks["exact_values"]["passed"]
