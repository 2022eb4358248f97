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

from typing import Any, Optional, Sequence, Union

from marshmallow import Schema, ValidationError
from marshmallow.fields import Boolean, Field, Function, Integer, List, Nested, String

from lattice_isoperimetry.core import config
from lattice_isoperimetry.core.exceptions import InvalidSellingParameters
from lattice_isoperimetry.models.selling import SellingParams


def round_significant(value: Any) -> float:
    return float(f"{float(value):.{config.JSON_SIGNIFICANT_DIGITS}g}")


class Significant(Field):
    """
    Serialize a real number rounded to JSON_SIGNIFICANT_DIGITS significant digits.
    """

    def _serialize(self, value: Any, attr: str, obj: Any, **kwargs: Any) -> Optional[float]:
        return None if value is None else round_significant(value)


class SellingParamsField(Field):
    """
    Validate six comma-separated non-negative reals (or a sequence of six reals) to be
    Selling parameters. Degenerate parameters raise DegenerateCell, not a validation error.
    """

    def _serialize(self, value: Any, attr: str, obj: Any, **kwargs: Any) -> Optional[list]:
        return None if value is None else [round_significant(component) for component in value]

    def _deserialize(
        self, value: Union[str, Sequence[float]], attr: Any, data: Any, **kwargs: Any
    ) -> SellingParams:
        try:
            components = (
                [float(token) for token in value.split(",")]
                if isinstance(value, str)
                else [float(component) for component in value]
            )
            return SellingParams.from_sequence(components)
        except (TypeError, ValueError, InvalidSellingParameters) as error:
            raise ValidationError(f"Invalid Selling parameters: {value!r} ({error}).") from error


def validate_selling_params(value: Union[str, Sequence[float]]) -> SellingParams:
    """
    Validate the given value to be Selling parameters, and return them.

    :param value: the value to validate, e.g., "1,1,1,1,1,1".
    :return: the validated parameters.
    :raises: InvalidSellingParameters on malformed input; DegenerateCell if det A <= 0.
    """
    schema = Schema.from_dict(dict(rho=SellingParamsField(required=True)))
    try:
        # pylint: disable=no-member
        return schema().load(dict(rho=value))["rho"]
    except ValidationError as exc:
        raise InvalidSellingParameters(str(exc.messages)) from exc


class _OrderedSchema(Schema):
    class Meta:
        ordered = True


class FaceAreaSchema(_OrderedSchema):
    name = Function(lambda face: face[0])
    area = Function(lambda face: round_significant(face[1]))


class EvalReportSchema(_OrderedSchema):
    rho = SellingParamsField(attribute="params")
    det = Significant()
    f_closed = Significant(data_key="F_closed")
    f_geometric = Significant(data_key="F_geometric")
    q = Significant(data_key="Q")
    faces = List(Nested(FaceAreaSchema))
    volume = Significant()


class StationaryReportSchema(_OrderedSchema):
    rho = SellingParamsField(attribute="point")
    gradient = List(Significant())
    hessian = List(List(Significant()))
    full_spectrum = List(Significant())
    tangent_spectrum = List(Significant())
    critical_spectrum = List(Significant())
    active_set = List(Integer())
    stratum = String()
    classification = Function(lambda report: report.classification.value)
    one_sided = Boolean()
    euler_residual = Significant()


class OrbitClassSchema(_OrderedSchema):
    name = Function(lambda orbit: orbit.name.value)
    representative = String()
    pattern = List(Integer())
    orbit_size = Integer()


class OptimizationResultSchema(_OrderedSchema):
    start = SellingParamsField()
    minimizer = SellingParamsField()
    f_value = Significant(data_key="F_value")
    iterations = Integer()
    converged = Boolean()
    method = Function(lambda result: result.method.value)
    trace = List(List(Significant()), allow_none=True)


class SurveySummarySchema(_OrderedSchema):
    evidence = String()
    n_starts = Integer()
    seed = Integer()
    best_f = Significant(data_key="best_F")
    best_minimizer = SellingParamsField()
    converged_fraction = Significant()
    bcc_fraction = Significant()
    counterexample_candidates = List(Nested(OptimizationResultSchema))
    f_values = List(Significant(), data_key="F_values")


class MonotonicityReportSchema(_OrderedSchema):
    u_max = Significant()
    step = Significant()
    n_samples = Integer()
    psi_at_zero = Significant()
    psi_at_one = Significant()
    psi_prime_at_one = Significant()
    psi_second_min = Significant()
    psi_second_bound = Significant()
    psi_second_discrepancy = Significant()
    argmin_u = Significant()
    min_tilde_f = Significant()


class RestrictedStratumReportSchema(_OrderedSchema):
    stratum = String()
    point = List(Significant())
    value = Significant()
    gradient = List(Significant())
    hessian = List(List(Significant()))
    spectrum = List(Significant())
    tangent_spectrum = List(Significant())
    is_strict_min = Boolean()


class VerificationCheckSchema(_OrderedSchema):
    name = String()
    passed = Boolean()
    detail = String()


class ReferenceRowSchema(_OrderedSchema):
    """
    A row of the table of quotients: (structure, exact F, F, Q, Q on tessellations).
    """

    structure = Function(lambda row: row[0])
    f_exact = Function(lambda row: row[1], data_key="F_exact")
    f_value = Function(lambda row: round(row[2], 6), data_key="F")
    q = Function(lambda row: round(row[3], 4), data_key="Q")
    q_tessellations = Function(lambda row: row[4], data_key="Q_tessellations")
