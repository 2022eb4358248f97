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

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from lattice_isoperimetry.models.enums import Classification, OptimizationMethod
from lattice_isoperimetry.models.selling import SellingParams


@dataclass(frozen=True)
class AreaDecomposition:
    """
    The seven quartic polynomials Q_* = V_*^T A V_* of the representative faces, and the
    products whose sum, scaled by 2 (det A)^(-5/6), gives the isoperimetric quotient.
    Both are listed in the order 12, 13, 23, 1, 2, 3, 0.
    """

    q12: float
    q13: float
    q23: float
    q1: float
    q2: float
    q3: float
    q0: float
    sqrt_terms: Tuple[float, ...]

    @property
    def values(self) -> Tuple[float, ...]:
        return (self.q12, self.q13, self.q23, self.q1, self.q2, self.q3, self.q0)


@dataclass(frozen=True)
class StationaryReport:
    """
    The outcome of the differential analysis of F at a parameter point.
    The tangent spectrum is the spectrum of the Hessian restricted to the fixed-volume tangent
    space {v : v . grad det A = 0}; critical_spectrum is the one actually used for the
    classification, after fixing the strongly active coordinates.
    """

    point: SellingParams
    gradient: np.ndarray = field(compare=False)
    hessian: np.ndarray = field(compare=False)
    full_spectrum: Tuple[float, ...]
    tangent_spectrum: Tuple[float, ...]
    critical_spectrum: Tuple[float, ...]
    active_set: Tuple[int, ...]
    stratum: str
    classification: Classification
    one_sided: bool
    euler_residual: float


@dataclass(frozen=True)
class ReferenceConstants:
    """
    The exact values quoted by the analysis of the BCC, FCC and SC lattices.
    """

    f_bcc: float
    f_fcc: float
    f_sc: float
    bcc_hessian_prefactor: float
    bcc_hessian_entries: Tuple[float, float, float]  # alpha, beta, delta
    bcc_spectrum: Tuple[float, ...]
    fcc_hessian: np.ndarray = field(compare=False)
    fcc_spectrum: Tuple[float, ...]
    fcc_tangent_negative: float
    rd_hessian: np.ndarray = field(compare=False)
    rd_spectrum: Tuple[float, ...]
    box_hessian: np.ndarray = field(compare=False)
    box_spectrum: Tuple[float, ...]
    sc_gradient_value: float
    fcc_negative_direction: Tuple[float, ...]

    @property
    def bcc_hessian(self) -> np.ndarray:
        alpha, beta, delta = self.bcc_hessian_entries
        matrix = np.full((6, 6), beta)
        np.fill_diagonal(matrix, alpha)
        for i in range(6):
            matrix[i, 5 - i] = delta
        return self.bcc_hessian_prefactor * matrix


@dataclass(frozen=True)
class OptimizationResult:
    """
    The outcome of a minimisation of F, in the gauge sum(rho) = 6.
    """

    start: SellingParams
    minimizer: SellingParams
    f_value: float
    iterations: int
    converged: bool
    method: OptimizationMethod
    trace: Optional[List[Tuple[int, float]]] = None


@dataclass(frozen=True)
class SurveySummary:
    """
    The outcome of a random restart survey. It is empirical evidence only: the global
    minimality of BCC among all lattices is not established by it.
    """

    n_starts: int
    seed: int
    best_f: float
    best_minimizer: SellingParams
    converged_fraction: float
    bcc_fraction: float
    counterexample_candidates: Tuple[OptimizationResult, ...]
    f_values: Tuple[float, ...]

    @property
    def evidence(self) -> str:
        return "empirical"


@dataclass(frozen=True)
class RestrictedStratumReport:
    """
    The differential analysis of F restricted to a boundary stratum, at a point of the
    stratum. The tangent spectrum excludes the scaling direction.
    """

    stratum: str
    point: Tuple[float, ...]
    value: float
    gradient: np.ndarray = field(compare=False)
    hessian: np.ndarray = field(compare=False)
    spectrum: Tuple[float, ...]
    tangent_spectrum: Tuple[float, ...]

    @property
    def is_strict_min(self) -> bool:
        return all(value > 0 for value in self.tangent_spectrum)


@dataclass(frozen=True)
class EvalReport:
    """
    The evaluation of a lattice: determinant, quotient by both paths, face areas and volume.
    """

    params: SellingParams
    det: float
    f_closed: float
    f_geometric: float
    q: float
    faces: Tuple[Tuple[str, float], ...]
    volume: float
