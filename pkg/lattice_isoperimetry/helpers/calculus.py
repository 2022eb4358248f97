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

import logging
import math
from typing import Callable, Dict, Iterable, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import null_space

from lattice_isoperimetry.core import config
from lattice_isoperimetry.core.exceptions import (
    DegenerateCell,
    DegenerateStencil,
    DomainError,
    NoConvergence,
    ZeroGradient,
)
from lattice_isoperimetry.helpers.quotient import f_closed
from lattice_isoperimetry.helpers.selling import (
    RhoLike,
    active_set,
    as_array,
    det_gradient,
    stratum_name,
)
from lattice_isoperimetry.models.enums import Classification
from lattice_isoperimetry.models.reports import ReferenceConstants, StationaryReport
from lattice_isoperimetry.models.selling import SellingParams
from lattice_isoperimetry.monitoring.calculus import F_EVALUATIONS, ONE_SIDED_HESSIANS

_LOGGER = logging.getLogger(__name__)

Function = Callable[[np.ndarray], float]
Stencil = Tuple[Tuple[int, float], ...]

# (offset in steps, weight), first derivatives in units of 1/h, second ones in units of 1/h^2.
_CENTRAL_FIRST: Stencil = ((-1, -0.5), (1, 0.5))
_FORWARD_FIRST: Stencil = ((0, -1.5), (1, 2.0), (2, -0.5))
_CENTRAL_SECOND: Stencil = ((-1, 1.0), (0, -2.0), (1, 1.0))
_FORWARD_SECOND: Stencil = ((0, 2.0), (1, -5.0), (2, 4.0), (3, -1.0))


class _StencilEvaluator:
    """
    Evaluate a function on the displaced points of a stencil, caching repeated points.
    """

    def __init__(self, func: Function, point: np.ndarray, steps: np.ndarray) -> None:
        self._func = func
        self._point = point
        self._steps = steps
        self._cache: Dict[Tuple[Tuple[int, int], ...], float] = {}

    def __call__(self, *displacements: Tuple[int, int]) -> float:
        key = tuple(sorted((index, offset) for index, offset in displacements if offset))
        if key not in self._cache:
            displaced = self._point.copy()
            for index, offset in key:
                displaced[index] += offset * self._steps[index]
            try:
                self._cache[key] = float(self._func(displaced))
            except (DegenerateCell, DomainError) as error:
                raise DegenerateStencil(
                    f"Stencil point {displaced.tolist()} is outside of the domain."
                ) from error
            F_EVALUATIONS.inc()
        return self._cache[key]


def _steps(point: np.ndarray, base_step: float) -> np.ndarray:
    return base_step * np.maximum(1.0, np.abs(point))


def gradient_of(func: Function, point: Sequence[float], base_step: float) -> np.ndarray:
    """
    Finite-difference gradient of a function of n variables. Each component uses the step
    h_i = base_step * max(1, |x_i|): central differences where x_i >= h_i, second-order
    forward differences otherwise, so that no stencil point has a negative component.

    :param func: the function, taking an array of shape (n,).
    :param point: the point.
    :param base_step: the step at unit scale.
    :return: the gradient.
    :raises: DegenerateStencil if a stencil point leaves the domain of the function.
    """
    point = np.asarray(point, dtype=float)
    steps = _steps(point, base_step)
    evaluate = _StencilEvaluator(func, point, steps)
    gradient = np.empty(point.size)
    for index, step in enumerate(steps):
        stencil = _FORWARD_FIRST if point[index] < step else _CENTRAL_FIRST
        gradient[index] = (
            math.fsum(weight * evaluate((index, offset)) for offset, weight in stencil) / step
        )
    return gradient


def hessian_of(func: Function, point: Sequence[float], base_step: float) -> np.ndarray:
    """
    Finite-difference Hessian of a function of n variables, with the step policy of
    gradient_of. Pure entries use the three-point central or the four-point forward second
    difference, mixed entries the tensor product of the first-derivative stencils.

    :param func: the function, taking an array of shape (n,).
    :param point: the point.
    :param base_step: the step at unit scale.
    :return: the symmetrized Hessian.
    :raises: DegenerateStencil if a stencil point leaves the domain of the function.
    """
    point = np.asarray(point, dtype=float)
    steps = _steps(point, base_step)
    one_sided = point < steps
    evaluate = _StencilEvaluator(func, point, steps)
    size = point.size
    hessian = np.empty((size, size))
    for i in range(size):
        second = _FORWARD_SECOND if one_sided[i] else _CENTRAL_SECOND
        hessian[i, i] = (
            math.fsum(weight * evaluate((i, offset)) for offset, weight in second) / steps[i] ** 2
        )
        for j in range(i + 1, size):
            first_i = _FORWARD_FIRST if one_sided[i] else _CENTRAL_FIRST
            first_j = _FORWARD_FIRST if one_sided[j] else _CENTRAL_FIRST
            hessian[i, j] = hessian[j, i] = math.fsum(
                weight_i * weight_j * evaluate((i, offset_i), (j, offset_j))
                for offset_i, weight_i in first_i
                for offset_j, weight_j in first_j
            ) / (steps[i] * steps[j])
    return 0.5 * (hessian + hessian.T)


def _resolved_step(step: Optional[float], default: float) -> float:
    if step is None:
        return default
    if step <= 0:
        raise DomainError(f"Finite-difference steps must be positive, got {step}.")
    return step


def gradient_fd(rho: RhoLike, step: Optional[float] = None) -> np.ndarray:
    """
    The gradient of F by finite differences.

    :param rho: the parameters.
    :param step: the step at unit scale, defaults to GRADIENT_STEP.
    :return: the gradient in storage order.
    :raises: DegenerateStencil if a stencil point has det A <= 0; DomainError if step <= 0.
    """
    return gradient_of(f_closed, as_array(rho), _resolved_step(step, config.GRADIENT_STEP))


def hessian_fd(rho: RhoLike, step: Optional[float] = None) -> np.ndarray:
    """
    The Hessian of F by finite differences, one-sided along the components below the step.

    :param rho: the parameters.
    :param step: the step at unit scale, defaults to HESSIAN_STEP.
    :return: the symmetric 6x6 Hessian.
    :raises: DegenerateStencil if a stencil point has det A <= 0; DomainError if step <= 0.
    """
    return hessian_of(f_closed, as_array(rho), _resolved_step(step, config.HESSIAN_STEP))


def _off_diagonal_max(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(matrix - np.diag(np.diag(matrix))), initial=0.0))


def symmetric_eigen(matrix: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigen-decomposition of a small symmetric matrix by cyclic Jacobi rotations.

    :param matrix: the symmetric matrix.
    :return: the ascending eigenvalues and the matrix whose columns are the orthonormal
      eigenvectors.
    :raises: NoConvergence if the off-diagonal part does not vanish within JACOBI_MAX_SWEEPS.
    """
    work = np.array(matrix, dtype=float)
    size = work.shape[0]
    vectors = np.eye(size)
    threshold = config.JACOBI_RTOL * float(np.linalg.norm(work))

    for _ in range(config.JACOBI_MAX_SWEEPS):
        if _off_diagonal_max(work) <= threshold:
            break
        for p in range(size - 1):
            for q in range(p + 1, size):
                if abs(work[p, q]) <= threshold:
                    continue
                tau = (work[q, q] - work[p, p]) / (2.0 * work[p, q])
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rotation = np.eye(size)
                rotation[p, p] = rotation[q, q] = c
                rotation[p, q] = s
                rotation[q, p] = -s
                work = rotation.T @ work @ rotation
                work[p, q] = work[q, p] = 0.0
                vectors = vectors @ rotation
    else:
        if (off_diagonal := _off_diagonal_max(work)) > threshold:
            raise NoConvergence(config.JACOBI_MAX_SWEEPS, off_diagonal)

    eigenvalues = np.diag(work)
    order = np.argsort(eigenvalues, kind="stable")
    return eigenvalues[order], vectors[:, order]


def tangent_basis(normal: np.ndarray) -> np.ndarray:
    """
    An orthonormal basis, by columns, of the hyperplane orthogonal to the given vector.

    :param normal: the normal vector.
    :return: a matrix of shape (n, n - 1).
    :raises: ZeroGradient if the normal is (numerically) zero.
    """
    if (norm := float(np.linalg.norm(normal))) < config.ZERO_GRADIENT_NORM:
        raise ZeroGradient(f"Gradient of det A is too small to define a tangent space ({norm}).")
    return null_space(np.atleast_2d(normal / norm))


def restricted_spectrum(hessian: np.ndarray, basis: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    The spectrum of the quadratic form restricted to the span of the orthonormal columns.

    :return: the ascending eigenvalues and the eigenvectors expressed in the full space.
    """
    eigenvalues, eigenvectors = symmetric_eigen(basis.T @ hessian @ basis)
    return eigenvalues, basis @ eigenvectors


def tangent_spectrum(rho: RhoLike, hessian: Optional[np.ndarray] = None) -> Tuple[float, ...]:
    """
    The five eigenvalues of the Hessian of F restricted to the fixed-volume tangent space
    {v : v . grad det A = 0}.

    :param rho: the parameters.
    :param hessian: a precomputed Hessian at rho, computed with hessian_fd if missing.
    :return: the ascending eigenvalues.
    :raises: ZeroGradient if grad det A vanishes.
    """
    basis = tangent_basis(det_gradient(rho))
    eigenvalues, _ = restricted_spectrum(hessian if hessian is not None else hessian_fd(rho), basis)
    return tuple(float(value) for value in eigenvalues)


def _feasible(direction: np.ndarray, active: Iterable[int]) -> bool:
    # Either the direction or its opposite must not decrease any zero component.
    components = direction[list(active)]
    tolerance = 1e-9 * float(np.linalg.norm(direction))
    return bool(np.all(components >= -tolerance) or np.all(components <= tolerance))


def classify_point(
    rho: RhoLike, gradient_step: Optional[float] = None, hessian_step: Optional[float] = None
) -> StationaryReport:
    """
    Classify a point of the parameter cone as a critical point of F at fixed volume.

    A point is non-stationary if the gradient does not vanish along the positive components,
    or if it is negative along a zero component (F decreases into the interior). At a
    stationary point, the Hessian is restricted to the directions tangent to det A = const
    which keep the strongly active components (positive gradient) at zero: a positive
    definite restriction gives a strict minimum (within the stratum, if there are zero
    components), a negative eigenvalue along a direction pointing into the cone gives a
    saddle. Anything else is inconclusive.

    :param rho: the parameters.
    :param gradient_step: the gradient step at unit scale, defaults to GRADIENT_STEP.
    :param hessian_step: the Hessian step at unit scale, defaults to HESSIAN_STEP.
    :return: the report.
    :raises: DegenerateCell if det A <= 0; DegenerateStencil, ZeroGradient, NoConvergence
      from the differentiation and the eigenvalue computations.
    """
    params = rho if isinstance(rho, SellingParams) else SellingParams.from_sequence(as_array(rho))
    point = params.as_array()
    hessian_step = _resolved_step(hessian_step, config.HESSIAN_STEP)
    gradient = gradient_fd(params, gradient_step)
    hessian = hessian_fd(params, hessian_step)
    full_spectrum, _ = symmetric_eigen(hessian)
    det_normal = det_gradient(params)
    tangent, _ = restricted_spectrum(hessian, tangent_basis(det_normal))

    active = active_set(params)
    inactive = [index for index in range(6) if index not in active]
    one_sided = bool(np.any(point < hessian_step * np.maximum(1.0, point)))
    if one_sided:
        ONE_SIDED_HESSIANS.inc()
        _LOGGER.warning(
            "One-sided Hessian on a boundary stratum.",
            extra=dict(rho=str(params), active_set=list(active)),
        )

    critical: Tuple[float, ...] = ()
    if np.any(np.abs(gradient[inactive]) > config.TOL_GRAD) or np.any(
        gradient[list(active)] < -config.TOL_GRAD
    ):
        classification = Classification.NON_STATIONARY
    else:
        strongly_active = [index for index in active if gradient[index] > config.TOL_GRAD]
        constraints = np.vstack([det_normal / np.linalg.norm(det_normal)] + [
            np.eye(6)[index] for index in strongly_active
        ])
        eigenvalues, eigenvectors = restricted_spectrum(hessian, null_space(constraints))
        critical = tuple(float(value) for value in eigenvalues)
        if all(value > config.TOL_EIG for value in critical):
            classification = (
                Classification.STRATUM_STRICT_MIN if active else Classification.INTERIOR_STRICT_MIN
            )
        elif any(
            value < -config.TOL_EIG and _feasible(eigenvectors[:, column], active)
            for column, value in enumerate(critical)
        ):
            classification = Classification.SADDLE
        else:
            classification = Classification.INCONCLUSIVE

    _LOGGER.info(
        "Point classified.",
        extra=dict(rho=str(params), classification=classification.value),
    )
    return StationaryReport(
        point=params,
        gradient=gradient,
        hessian=hessian,
        full_spectrum=tuple(float(value) for value in full_spectrum),
        tangent_spectrum=tuple(float(value) for value in tangent),
        critical_spectrum=critical,
        active_set=active,
        stratum=stratum_name(params),
        classification=classification,
        one_sided=one_sided,
        euler_residual=float(point @ gradient),
    )


def reference_constants() -> ReferenceConstants:
    """
    The exact values of the analysis of the BCC, FCC and SC lattices and of the rhombic
    dodecahedra and boxes strata.
    """
    sqrt2, sqrt3 = math.sqrt(2.0), math.sqrt(3.0)
    two_2_3, two_5_6 = 2.0 ** (2.0 / 3.0), 2.0 ** (5.0 / 6.0)

    fcc_corner = 96.0 * sqrt2 - 220.0
    fcc_hessian = np.zeros((6, 6))
    fcc_hessian[1:5, 1:5] = -9.0
    np.fill_diagonal(fcc_hessian, (56.0, 27.0, 27.0, 27.0, 27.0, 56.0))
    fcc_hessian[0, 5] = fcc_hessian[5, 0] = fcc_corner
    fcc_negative = -two_5_6 * (41.0 - 24.0 * sqrt2) / 48.0
    fcc_middle = 3.0 * two_5_6 / 16.0

    rd_hessian = 3.0 * two_5_6 / 64.0 * (4.0 * np.eye(4) - np.ones((4, 4)))
    box_hessian = (3.0 * np.eye(3) - np.ones((3, 3))) / 6.0

    return ReferenceConstants(
        f_bcc=3.0 * (1.0 + 2.0 * sqrt3) / 4.0 ** (2.0 / 3.0),
        f_fcc=3.0 * two_5_6,
        f_sc=6.0,
        bcc_hessian_prefactor=two_2_3 / 768.0,
        bcc_hessian_entries=(14.0 + 24.0 * sqrt3, -25.0 + 12.0 * sqrt3, 86.0 - 72.0 * sqrt3),
        bcc_spectrum=(0.0,)
        + (two_2_3 * (25.0 - 12.0 * sqrt3) / 128.0,) * 2
        + (two_2_3 * (-3.0 + 4.0 * sqrt3) / 32.0,) * 3,
        fcc_hessian=two_5_6 / 192.0 * fcc_hessian,
        fcc_spectrum=(fcc_negative, 0.0)
        + (fcc_middle,) * 3
        + (two_5_6 * (69.0 - 24.0 * sqrt2) / 48.0,),
        fcc_tangent_negative=9.0 / 17.0 * fcc_negative,
        rd_hessian=rd_hessian,
        rd_spectrum=(0.0,) + (fcc_middle,) * 3,
        box_hessian=box_hessian,
        box_spectrum=(0.0, 0.5, 0.5),
        sc_gradient_value=-4.0 + 2.0 * sqrt2,
        fcc_negative_direction=(1.0, 0.0, 0.0, 0.0, 0.0, 1.0),
    )
