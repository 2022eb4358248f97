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

from pytest import mark, raises

from lattice_isoperimetry.core import config
from lattice_isoperimetry.core.exceptions import DegenerateCell, InvalidSellingParameters
from lattice_isoperimetry.helpers.families import enumerate_two_value_orbits
from lattice_isoperimetry.helpers.calculus import classify_point
from lattice_isoperimetry.helpers.quotient import evaluate, reference_table
from lattice_isoperimetry.helpers.selling import RHO_BCC, RHO_FCC
from lattice_isoperimetry.models.marshmallow import (
    EvalReportSchema,
    OrbitClassSchema,
    ReferenceRowSchema,
    StationaryReportSchema,
    round_significant,
    validate_selling_params,
)
from lattice_isoperimetry.models.selling import SellingParams
from tests.fixtures.core import config_set


@mark.parametrize(
    "value, expected",
    [
        ("1,1,1,1,1,1", SellingParams(1, 1, 1, 1, 1, 1)),
        (" 0, 1,1,1 ,1,0", SellingParams(0, 1, 1, 1, 1, 0)),
        ("1e-3,2,3,4,5,6", SellingParams(0.001, 2, 3, 4, 5, 6)),
        ([1, 1, 1, 0, 0, 0], SellingParams(1, 1, 1, 0, 0, 0)),
    ],
)
def test_validate_selling_params(value: object, expected: SellingParams) -> None:
    assert validate_selling_params(value) == expected


@mark.parametrize(
    "value", ["1,1,1,1,1", "1,1,1,1,1,1,1", "a,b,c,d,e,f", "1,1,1,1,1,-1", "1,1,1,nan,1,1", ""]
)
def test_validate_selling_params_invalid(value: str) -> None:
    with raises(InvalidSellingParameters):
        validate_selling_params(value)


def test_validate_selling_params_degenerate() -> None:
    with raises(DegenerateCell):
        validate_selling_params("1,0,0,0,0,0")


def test_round_significant() -> None:
    assert round_significant(5.3147397978112345) == 5.31473979781
    with config_set("JSON_SIGNIFICANT_DIGITS", 3):
        assert round_significant(5.3147397978112345) == 5.31


def test_eval_report_schema() -> None:
    dumped = EvalReportSchema().dump(evaluate(RHO_BCC))
    assert list(dumped) == ["rho", "det", "F_closed", "F_geometric", "Q", "faces", "volume"]
    assert dumped["rho"] == [1.0] * 6
    assert dumped["det"] == 16.0
    assert dumped["volume"] == 4.0
    assert len(dumped["faces"]) == 14
    assert list(dumped["faces"][0]) == ["name", "area"]
    assert dumped["faces"][0]["name"] == "F12"
    assert dumped["faces"][0]["area"] == 0.5


def test_orbit_class_schema() -> None:
    dumped = OrbitClassSchema().dump(enumerate_two_value_orbits(), many=True)
    assert [orbit["name"] for orbit in dumped] == ["C", "O", "A", "S", "T", "P"]
    assert dumped[1] == dict(
        name="O", representative="(p,q,q,q,q,p)", pattern=[1, 0, 0, 0, 0, 1], orbit_size=3
    )
    assert config.JSON_SIGNIFICANT_DIGITS == 12


def test_reference_row_schema() -> None:
    rows = ReferenceRowSchema().dump(reference_table(), many=True)
    for row in rows:
        assert list(row) == ["structure", "F_exact", "F", "Q", "Q_tessellations"]
    assert rows[1]["structure"] == "FCC"
    assert rows[1]["F_exact"] == "3·2^(5/6)"
    assert rows[1]["Q"] == 0.7405


def test_stationary_report_schema_stratum() -> None:
    dumped = StationaryReportSchema().dump(classify_point(RHO_FCC))
    assert dumped["stratum"] == "rhombic-dodecahedra"
    assert list(dumped).index("stratum") == list(dumped).index("active_set") + 1
