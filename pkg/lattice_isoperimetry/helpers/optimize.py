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
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from lattice_isoperimetry.core import config
from lattice_isoperimetry.core.exceptions import (
    DegenerateCell,
    DegenerateStencil,
    DomainError,
    LatticeIsoperimetryException,
    NotConverged,
)
from lattice_isoperimetry.helpers.calculus import classify_point, gradient_fd, reference_constants
from lattice_isoperimetry.helpers.quotient import f_closed
from lattice_isoperimetry.helpers.selling import RhoLike, as_array, canonical_representative
from lattice_isoperimetry.models.enums import OptimizationMethod
from lattice_isoperimetry.models.reports import OptimizationResult, SurveySummary
from lattice_isoperimetry.models.selling import SellingParams
from lattice_isoperimetry.monitoring.optimize import (
    ACCEPTED_ITERATIONS,
    COUNTEREXAMPLE_CANDIDATES,
    OPTIMIZATION_RUNS,
    SIMPLEX_FALLBACKS,
)

_LOGGER = logging.getLogger(__name__)


def project_to_gauge(values: np.ndarray) -> np.ndarray:
    """
    Map a point to the gauge simplex {rho >= 0, sum(rho) = OPT_GAUGE_SUM} by clipping the
    negative components and rescaling. F is homogeneous of degree 0, so the rescaling does
    not change its value.
    """
    clipped = np.maximum(np.asarray(values, dtype=float), 0.0)
    return clipped * (config.OPT_GAUGE_SUM / clipped.sum())


def projected_gradient(point: np.ndarray, gradient: np.ndarray) -> np.ndarray:
    """
    The gradient with the components blocked by the constraints removed: a zero component
    whose partial derivative is non-negative cannot move into the cone.
    """
    blocked = (point <= 0.0) & (gradient >= 0.0)
    return np.where(blocked, 0.0, gradient)


def _safe_f(point: np.ndarray) -> float:
    try:
        return f_closed(point)
    except DegenerateCell:
        return math.inf


def _line_search(point: np.ndarray, value: float, direction: np.ndarray) -> Optional[np.ndarray]:
    squared_norm = float(direction @ direction)
    step = 1.0
    while step >= config.OPT_MIN_STEP:
        candidate = project_to_gauge(point - step * direction)
        if _safe_f(candidate) <= value - config.OPT_ARMIJO * step * squared_norm:
            return candidate
        step *= 0.5
    return None


def _nelder_mead(point: np.ndarray, max_iter: int) -> Tuple[np.ndarray, int, bool]:
    def objective(values: np.ndarray) -> float:
        if not np.any(values):
            return math.inf
        return _safe_f(project_to_gauge(np.abs(values)))

    result = minimize(
        objective,
        point,
        method="Nelder-Mead",
        options=dict(maxiter=max_iter, xatol=1e-10, fatol=1e-14),
    )
    return project_to_gauge(np.abs(result.x)), int(result.nit), bool(result.success)


def minimize_f(
    start: RhoLike,
    max_iter: Optional[int] = None,
    grad_tol: Optional[float] = None,
    record_trace: bool = False,
    strict: bool = False,
) -> OptimizationResult:
    """
    Minimise F over the parameter cone by projected gradient descent in the gauge
    sum(rho) = 6, with backtracking line search (halving from 1, Armijo condition).
    The minimisation continues with the Nelder-Mead method when the line search fails or makes
    no significant progress for OPT_STALL_LIMIT consecutive iterations, and when a gradient
    stencil leaves the non-degenerate region.

    :param start: the starting point, with det A > 0.
    :param max_iter: the maximum number of iterations, defaults to OPT_MAX_ITER.
    :param grad_tol: the tolerance on the projected gradient norm, defaults to OPT_GRAD_TOL.
    :param record_trace: whether to record the value of F at every iteration.
    :param strict: whether to raise NotConverged instead of returning a non converged result.
    :return: the result, with the minimizer normalised to sum 6.
    :raises: DegenerateCell if det A(start) <= 0; NotConverged if strict and not converged.
    """
    params = start if isinstance(start, SellingParams) else SellingParams.from_sequence(
        as_array(start)
    )
    max_iter = config.OPT_MAX_ITER if max_iter is None else max_iter
    grad_tol = config.OPT_GRAD_TOL if grad_tol is None else grad_tol

    point = project_to_gauge(params.as_array())
    value = f_closed(point)
    trace: Optional[List[Tuple[int, float]]] = [(0, value)] if record_trace else None
    method = OptimizationMethod.PROJECTED_GRADIENT
    converged = False
    stalls = 0
    iteration = 0

    while iteration < max_iter:
        try:
            direction = projected_gradient(point, gradient_fd(point))
        except DegenerateStencil:
            stalls = config.OPT_STALL_LIMIT
        else:
            if float(np.linalg.norm(direction)) < grad_tol:
                converged = True
                break
            candidate = _line_search(point, value, direction)
            if candidate is None:
                # Retrying from the same point would fail again.
                stalls = config.OPT_STALL_LIMIT
            else:
                candidate_value = f_closed(candidate)
                stalls = stalls + 1 if value - candidate_value <= 1e-15 * value else 0
                point, value = candidate, candidate_value
                iteration += 1
                ACCEPTED_ITERATIONS.inc()
                if trace is not None:
                    trace.append((iteration, value))

        if stalls >= config.OPT_STALL_LIMIT:
            _LOGGER.warning(
                "Projected gradient stalled, switching to Nelder-Mead.",
                extra=dict(iteration=iteration, f_value=value),
            )
            SIMPLEX_FALLBACKS.inc()
            method = OptimizationMethod.NELDER_MEAD
            point, simplex_iterations, converged = _nelder_mead(
                point, max(max_iter - iteration, 1)
            )
            value = f_closed(point)
            iteration += simplex_iterations
            if trace is not None:
                trace.append((iteration, value))
            break

    result = OptimizationResult(
        start=params,
        minimizer=SellingParams.from_sequence(point),
        f_value=value,
        iterations=iteration,
        converged=converged,
        method=method,
        trace=trace,
    )
    OPTIMIZATION_RUNS.labels("converged" if converged else "not_converged").inc()
    if not converged:
        _LOGGER.warning(
            "Minimisation did not converge.",
            extra=dict(start=str(params), iterations=iteration, f_value=value),
        )
        if strict:
            raise NotConverged(result)
    return result


def _reverified(result: OptimizationResult, threshold: float) -> bool:
    # A candidate must stay below the threshold on its canonical representative as well.
    values = (f_closed(result.minimizer), f_closed(canonical_representative(result.minimizer)))
    if max(values) >= threshold:
        return False
    try:
        report = classify_point(
            result.minimizer,
            gradient_step=config.GRADIENT_STEP / 2,
            hessian_step=config.HESSIAN_STEP / 2,
        )
        classification = report.classification.value
    except LatticeIsoperimetryException as error:
        classification = f"unavailable ({error})"
    COUNTEREXAMPLE_CANDIDATES.inc()
    _LOGGER.warning(
        "Counterexample candidate below F_BCC.",
        extra=dict(
            minimizer=str(result.minimizer), f_value=values[0], classification=classification
        ),
    )
    return True


def random_restart_survey(
    n_starts: int, seed: int, workers: Optional[int] = None, max_iter: Optional[int] = None
) -> SurveySummary:
    """
    Minimise F from n_starts points drawn uniformly on the gauge simplex.
    The outcome only provides empirical evidence about the global minimality of BCC.

    :param n_starts: the number of restarts, at least 1.
    :param seed: the seed of the random generator, the summary is deterministic given it.
    :param workers: the number of worker processes, defaults to SURVEY_WORKERS.
    :param max_iter: the maximum number of iterations of each run.
    :return: the summary.
    """
    if n_starts < 1:
        raise DomainError(f"At least one start is needed, got {n_starts}.")
    workers = config.SURVEY_WORKERS if workers is None else workers
    rng = np.random.default_rng(seed)
    starts = [
        SellingParams.from_sequence(values)
        for values in rng.dirichlet(np.ones(6), size=n_starts) * config.OPT_GAUGE_SUM
    ]
    iterations = [max_iter] * n_starts

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(minimize_f, starts, iterations))
    else:
        results = [minimize_f(start, limit) for start, limit in zip(starts, iterations)]

    f_bcc = reference_constants().f_bcc
    threshold = f_bcc - config.COUNTEREXAMPLE_MARGIN
    f_values = tuple(result.f_value for result in results)
    best = min(range(n_starts), key=lambda index: f_values[index])
    candidates = tuple(
        result
        for result in results
        if result.f_value < threshold and _reverified(result, threshold)
    )
    summary = SurveySummary(
        n_starts=n_starts,
        seed=seed,
        best_f=f_values[best],
        best_minimizer=results[best].minimizer,
        converged_fraction=sum(result.converged for result in results) / n_starts,
        bcc_fraction=sum(
            abs(value - f_bcc) <= config.SURVEY_CONVERGENCE_TOL for value in f_values
        )
        / n_starts,
        counterexample_candidates=candidates,
        f_values=f_values,
    )
    _LOGGER.info(
        "Survey completed.",
        extra=dict(
            n_starts=n_starts,
            seed=seed,
            best_f=summary.best_f,
            bcc_fraction=summary.bcc_fraction,
            candidates=len(candidates),
        ),
    )
    return summary
