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

import itertools
import logging
import math
from collections import defaultdict
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from lattice_isoperimetry.core import config
from lattice_isoperimetry.core.exceptions import DomainError, VerificationFailure
from lattice_isoperimetry.helpers.calculus import (
    gradient_of,
    hessian_of,
    reference_constants,
    restricted_spectrum,
    symmetric_eigen,
    tangent_basis,
)
from lattice_isoperimetry.helpers.quotient import f_closed
from lattice_isoperimetry.helpers.selling import canonical_form, det_closed
from lattice_isoperimetry.models.enums import OrbitName
from lattice_isoperimetry.models.families import (
    FamilyPoint,
    FamilyScan,
    MonotonicityReport,
    OrbitClass,
)
from lattice_isoperimetry.models.reports import RestrictedStratumReport
from lattice_isoperimetry.models.selling import SellingParams

_LOGGER = logging.getLogger(__name__)

Real = Union[float, np.ndarray]

ORBIT_PATTERNS: Dict[OrbitName, Tuple[int, ...]] = {
    OrbitName.C: (1, 0, 0, 0, 0, 0),
    OrbitName.O: (1, 0, 0, 0, 0, 1),
    OrbitName.A: (1, 1, 0, 0, 0, 0),
    OrbitName.S: (1, 1, 1, 0, 0, 0),
    OrbitName.T: (1, 1, 0, 1, 0, 0),
    OrbitName.P: (1, 0, 0, 1, 0, 1),
}

PSI_SECOND_BOUND = 2.0 - 15.0 / (8.0 * math.sqrt(2.0))


def enumerate_two_value_orbits() -> List[OrbitClass]:
    """
    Group all the masks of weight 1, 2 and 3 on the six edges by the S4 action.

    :return: the classes C, O, A, S, T, P, in this order.
    """
    orbits: Dict[Tuple[float, ...], List[Tuple[int, ...]]] = defaultdict(list)
    for weight in (1, 2, 3):
        for ones in itertools.combinations(range(6), weight):
            mask = tuple(1 if index in ones else 0 for index in range(6))
            orbits[canonical_form(mask)].append(mask)

    classes = []
    for name, pattern in ORBIT_PATTERNS.items():
        members = orbits.pop(canonical_form(pattern))
        classes.append(
            OrbitClass(
                name=name, pattern=pattern, orbit_size=len(members), members=tuple(members)
            )
        )
    if orbits:
        raise VerificationFailure("orbit_partition", dict(unmatched=float(len(orbits))))
    return classes


def orbit_class(name: OrbitName) -> OrbitClass:
    return next(orbit for orbit in enumerate_two_value_orbits() if orbit.name == name)


def family_point_values(orbit: OrbitClass, point: FamilyPoint) -> Tuple[float, ...]:
    return tuple(point.p if bit else point.q for bit in orbit.pattern)


def family_f(orbit: OrbitClass, p: float, q: float) -> float:
    """
    F at the pattern of the class with p on the marked edges and q elsewhere.

    :raises: DomainError if p or q is negative; DegenerateCell if det A <= 0.
    """
    return f_closed(SellingParams.from_sequence(family_point_values(orbit, FamilyPoint(p, q))))


def h_of_u(u: Real) -> Real:
    """
    The reduced numerator of F along the opposite family:
    H(u) = u^2 + sqrt(2) sqrt(1 + u) + 2 (1 + 2u) sqrt(u + 2).
    """
    return u ** 2 + math.sqrt(2.0) * np.sqrt(1.0 + u) + 2.0 * (1.0 + 2.0 * u) * np.sqrt(u + 2.0)


def h1(u: Real) -> Real:
    return 2.0 * u + math.sqrt(2.0) / (2.0 * np.sqrt(1.0 + u)) + (9.0 + 6.0 * u) / np.sqrt(u + 2.0)


def h2(u: Real) -> Real:
    return (
        2.0
        - math.sqrt(2.0) / (4.0 * (1.0 + u) ** 1.5)
        + 3.0 * (2.0 * u + 5.0) / (2.0 * (u + 2.0) ** 1.5)
    )


def h3(u: Real) -> Real:
    return 3.0 * math.sqrt(2.0) / (8.0 * (1.0 + u) ** 2.5) - 3.0 * (2.0 * u + 7.0) / (
        4.0 * (u + 2.0) ** 2.5
    )


def psi(u: Real) -> Real:
    """
    psi(u) = 3 (1 + u) H'(u) - 5 H(u), which has the sign of the derivative of F~.
    """
    return 3.0 * (1.0 + u) * h1(u) - 5.0 * h_of_u(u)


def psi_prime(u: Real) -> Real:
    return 3.0 * (1.0 + u) * h2(u) - 2.0 * h1(u)


def psi_second(u: Real) -> Real:
    """
    psi''(u) = 2 + 7 sqrt(2) / (8 (u + 1)^(3/2)) - (3/4) (2u^2 + 9u + 1) / (u + 2)^(5/2),
    bounded from below by 2 - 15 / (8 sqrt(2)).
    """
    return (
        2.0
        + 7.0 * math.sqrt(2.0) / (8.0 * (u + 1.0) ** 1.5)
        - 0.75 * (2.0 * u ** 2 + 9.0 * u + 1.0) / (u + 2.0) ** 2.5
    )


def tilde_f(u: Real) -> Real:
    """
    F along the opposite family, F(p, q, q, q, q, p) = 2^(1/3) H(u) / (1 + u)^(5/3), u = p / q.
    """
    return 2.0 ** (1.0 / 3.0) * h_of_u(u) * (1.0 + u) ** (-5.0 / 3.0)


def tilde_f_prime(u: Real) -> Real:
    return 2.0 ** (1.0 / 3.0) / 3.0 * psi(u) * (1.0 + u) ** (-8.0 / 3.0)


def _fail(check: str, u: float, value: float) -> None:
    _LOGGER.warning("Monotonicity check failed.", extra=dict(check=check, u=u, value=value))
    raise VerificationFailure(check, dict(u=float(u), value=float(value)))


def verify_opposite_monotonicity(
    u_max: Optional[float] = None, step: Optional[float] = None
) -> MonotonicityReport:
    """
    Verify on a uniform grid of [0, u_max] that psi is negative on (0, 1) and positive on
    (1, u_max], that psi'' stays above its lower bound, that the minimum of F~ is attained at
    the sample nearest to u = 1 and that finite differences of F~ have the sign of psi.

    :param u_max: the end of the grid, defaults to FAMILY_U_MAX.
    :param step: the grid step, defaults to FAMILY_U_STEP.
    :return: the report.
    :raises: VerificationFailure identifying the first violating sample.
    """
    u_max = config.FAMILY_U_MAX if u_max is None else u_max
    step = config.FAMILY_U_STEP if step is None else step
    if u_max <= 1.0 or not 0.0 < step <= config.FAMILY_U_STEP:
        raise DomainError(f"Invalid grid: u_max={u_max}, step={step}.")

    grid = np.linspace(0.0, u_max, int(math.ceil(u_max / step)) + 1)
    psi_values = psi(grid)
    tolerance = 0.5 * step
    below = (grid > tolerance) & (grid < 1.0 - tolerance)
    above = grid > 1.0 + tolerance
    for index in np.flatnonzero(below & (psi_values >= 0.0)):
        _fail("psi_negative_below_one", grid[index], psi_values[index])
    for index in np.flatnonzero(above & (psi_values <= 0.0)):
        _fail("psi_positive_above_one", grid[index], psi_values[index])

    second = psi_second(grid)
    index = int(np.argmin(second))
    if second[index] < PSI_SECOND_BOUND:
        _fail("psi_second_lower_bound", grid[index], second[index])
    discrepancy = float(np.max(np.abs(second - (h2(grid) + 3.0 * (1.0 + grid) * h3(grid)))))
    if discrepancy > 1e-9:
        _LOGGER.warning(
            "Printed psi'' differs from H'' + 3 (1 + u) H'''.",
            extra=dict(discrepancy=discrepancy),
        )

    tilde = tilde_f(grid)
    argmin = int(np.argmin(tilde))
    nearest_one = int(np.argmin(np.abs(grid - 1.0)))
    if argmin != nearest_one:
        _fail("tilde_f_minimum_at_one", grid[argmin], tilde[argmin])

    derivative = np.gradient(tilde, grid, edge_order=2)
    strict = below | above
    for index in np.flatnonzero(strict & (np.sign(derivative) != np.sign(psi_values))):
        _fail("tilde_f_derivative_sign", grid[index], derivative[index])

    report = MonotonicityReport(
        u_max=float(u_max),
        step=float(step),
        n_samples=int(grid.size),
        psi_at_zero=float(psi(0.0)),
        psi_at_one=float(psi(1.0)),
        psi_prime_at_one=float(psi_prime(1.0)),
        psi_second_min=float(np.min(second)),
        psi_second_bound=PSI_SECOND_BOUND,
        psi_second_discrepancy=discrepancy,
        argmin_u=float(grid[argmin]),
        min_tilde_f=float(tilde[argmin]),
    )
    _LOGGER.info("Opposite family verified.", extra=dict(n_samples=report.n_samples))
    return report


def family_scan(orbit: OrbitClass, u_min: float, u_max: float, steps: int) -> FamilyScan:
    """
    Sample a two-value family at u = p / q on steps + 1 equispaced points, with q = 1.
    The opposite family reports H, psi, F~ and the direct evaluation of F; the other
    families report F only, skipping the degenerate samples.

    :raises: DomainError on an invalid range.
    """
    if u_min < 0 or u_max <= u_min or steps < 1:
        raise DomainError(f"Invalid scan range: [{u_min}, {u_max}] in {steps} steps.")

    rows: List[Tuple[float, ...]] = []
    for u in np.linspace(u_min, u_max, steps + 1):
        u = float(u)
        values = family_point_values(orbit, FamilyPoint(u, 1.0))
        if det_closed(values) <= 0:
            _LOGGER.info(
                "Skipping degenerate family sample.", extra=dict(orbit=orbit.name.value, u=u)
            )
            continue
        if orbit.name == OrbitName.O:
            rows.append((u, h_of_u(u), psi(u), tilde_f(u), family_f(orbit, u, 1.0)))
        else:
            rows.append((u, family_f(orbit, u, 1.0)))

    header = ("u", "H", "psi", "tildeF", "F_check") if orbit.name == OrbitName.O else ("u", "F")
    return FamilyScan(orbit=orbit.name, header=header, rows=tuple(rows))


def f_rd(b: float, c: float, d: float, e: float) -> float:
    """
    F restricted to the rhombic dodecahedra stratum a = f = 0.

    :raises: DomainError if an argument is negative; DegenerateCell if det A <= 0.
    """
    if min(b, c, d, e) < 0:
        raise DomainError(f"F_RD is defined for non-negative arguments, got {(b, c, d, e)}.")
    return f_closed((0.0, b, c, d, e, 0.0))


def f_box(a: float, b: float, c: float) -> float:
    """
    F restricted to the boxes stratum d = e = f = 0, in closed form:
    2 (sqrt(a) bc + a sqrt(b) c + ab sqrt(c)) / (abc)^(5/6).

    :raises: DomainError if an argument is not positive.
    """
    if min(a, b, c) <= 0:
        raise DomainError(f"F_box is defined for positive arguments, got {(a, b, c)}.")
    numerator = math.sqrt(a) * b * c + a * math.sqrt(b) * c + a * b * math.sqrt(c)
    return 2.0 * numerator * math.exp(-5.0 / 6.0 * math.log(a * b * c))


def rd_hessian_at_ones() -> np.ndarray:
    return reference_constants().rd_hessian


def box_hessian_at_ones() -> np.ndarray:
    return reference_constants().box_hessian


def analyze_restricted(
    stratum: str, func: Callable[..., float], point: Sequence[float]
) -> RestrictedStratumReport:
    """
    Finite-difference analysis of a restricted functional. Being homogeneous of degree 0,
    its fixed-volume tangent space at a symmetric point is the complement of the scaling
    direction.
    """
    point = np.asarray(point, dtype=float)

    def restricted(values: np.ndarray) -> float:
        return func(*values)

    gradient = gradient_of(restricted, point, config.GRADIENT_STEP)
    hessian = hessian_of(restricted, point, config.HESSIAN_STEP)
    spectrum, _ = symmetric_eigen(hessian)
    tangent, _ = restricted_spectrum(hessian, tangent_basis(point))
    return RestrictedStratumReport(
        stratum=stratum,
        point=tuple(float(value) for value in point),
        value=float(func(*point)),
        gradient=gradient,
        hessian=hessian,
        spectrum=tuple(float(value) for value in spectrum),
        tangent_spectrum=tuple(float(value) for value in tangent),
    )


def analyze_rd_stratum() -> RestrictedStratumReport:
    return analyze_restricted("rhombic-dodecahedra", f_rd, np.ones(4))


def analyze_box_stratum() -> RestrictedStratumReport:
    return analyze_restricted("boxes", f_box, np.ones(3))
