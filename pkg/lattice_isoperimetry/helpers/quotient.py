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

import math
from typing import List, Tuple

import numpy as np

from lattice_isoperimetry.core.exceptions import DegenerateCell
from lattice_isoperimetry.helpers.cell_geometry import build_cell
from lattice_isoperimetry.helpers.selling import RhoLike, as_array, det_closed
from lattice_isoperimetry.models.reports import AreaDecomposition, EvalReport
from lattice_isoperimetry.models.selling import SellingParams


def _checked_det(rho: RhoLike) -> float:
    if (det := det_closed(rho)) <= 0:
        raise DegenerateCell(det)
    return det


def area_decomposition(rho: RhoLike) -> AreaDecomposition:
    """
    The seven Q_* = (scalar prefactor)^2 (u^T A u) of the representative faces.

    :param rho: the parameters.
    :return: the decomposition, with the corresponding square roots.
    """
    a, b, c, d, e, f = as_array(rho)
    prefactors = (
        c * d,
        b * e,
        a * f,
        b * c + b * f + c * f,
        a * c + a * e + c * e,
        a * b + a * d + b * d,
        d * e + d * f + e * f,
    )
    forms = (
        a + b + e + f,
        a + c + d + f,
        b + c + d + e,
        a + d + e,
        b + d + f,
        c + e + f,
        a + b + c,
    )
    q_values = [prefactor ** 2 * form for prefactor, form in zip(prefactors, forms)]
    sqrt_terms = tuple(
        float(prefactor * math.sqrt(max(form, 0.0))) for prefactor, form in zip(prefactors, forms)
    )
    return AreaDecomposition(*(float(value) for value in q_values), sqrt_terms=sqrt_terms)


def f_closed(rho: RhoLike) -> float:
    """
    The isoperimetric quotient F = A_T / V^(2/3) from its closed formula
    F = 2 (det A)^(-5/6) sum_* sqrt(Q_*). Valid on the whole closed cone.

    :param rho: the parameters.
    :return: the value of F.
    :raises: DegenerateCell if det A <= 0.
    """
    det = _checked_det(rho)
    return 2.0 * math.exp(-5.0 / 6.0 * math.log(det)) * math.fsum(
        area_decomposition(rho).sqrt_terms
    )


def f_geometric(rho: RhoLike) -> float:
    """
    The isoperimetric quotient from the constructed cell: total area / (det A)^(1/3).

    :param rho: the parameters.
    :return: the value of F.
    :raises: DegenerateCell if det A <= 0.
    """
    det = _checked_det(rho)
    return build_cell(rho).total_area * math.exp(-math.log(det) / 3.0)


def q_from_f(value: float) -> float:
    """
    The sphere-normalised quotient Q = 36 pi V^2 / A^3 = 36 pi / F^3.

    :param value: the value of F.
    :return: the value of Q, equal to 1 for a ball.
    """
    return 36.0 * np.pi / value ** 3


def evaluate(rho: RhoLike) -> EvalReport:
    """
    Evaluate the lattice: det A, F by the closed formula and from the constructed cell,
    the quotient Q, the 14 face areas and the volume.

    :param rho: the parameters.
    :return: the report.
    :raises: DegenerateCell if det A <= 0.
    """
    params = rho if isinstance(rho, SellingParams) else SellingParams.from_sequence(as_array(rho))
    cell = build_cell(params)
    det = det_closed(params)
    value = f_closed(params)
    return EvalReport(
        params=params,
        det=det,
        f_closed=value,
        f_geometric=cell.total_area * math.exp(-math.log(det) / 3.0),
        q=q_from_f(value),
        faces=tuple((face.name, face.scalar_area) for face in cell.faces),
        volume=cell.volume,
    )


# Structure, exact expression of F, parameters and Q from noisy-crystal Voronoi tessellations.
REFERENCE_STRUCTURES: Tuple[Tuple[str, str, Tuple[float, ...], float], ...] = (
    ("SC", "6", (1.0, 1.0, 1.0, 0.0, 0.0, 0.0), 0.5236),
    ("FCC", "3·2^(5/6)", (0.0, 1.0, 1.0, 1.0, 1.0, 0.0), 0.7405),
    ("BCC", "3·2^(2/3)(1+2√3)/4", (1.0, 1.0, 1.0, 1.0, 1.0, 1.0), 0.7534),
)


def reference_table() -> List[Tuple[str, str, float, float, float]]:
    """
    The isoperimetric quotients of the SC, FCC and BCC cells.

    :return: rows of structure name, exact expression of F, F, Q and the Q measured on
      tessellations of slightly perturbed crystals.
    """
    rows = []
    for name, expression, rho, measured in REFERENCE_STRUCTURES:
        value = f_closed(rho)
        rows.append((name, expression, value, q_from_f(value), measured))
    return rows
