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

from decouple import config

from lattice_isoperimetry.models.enums import Environment

ENV: Environment = config("ENV", cast=Environment, default=Environment.DEVELOPMENT.value)
LOG_LEVEL: str = config(
    "LOG_LEVEL", default="DEBUG" if ENV == Environment.TESTING else "WARNING"
)

# Finite differences and classification.
GRADIENT_STEP: float = config("GRADIENT_STEP", cast=float, default=6e-6)
HESSIAN_STEP: float = config("HESSIAN_STEP", cast=float, default=1.2e-4)
TOL_GRAD: float = config("TOL_GRAD", cast=float, default=1e-5)
TOL_EIG: float = config("TOL_EIG", cast=float, default=1e-6)
JACOBI_MAX_SWEEPS: int = config("JACOBI_MAX_SWEEPS", cast=int, default=100)
JACOBI_RTOL: float = config("JACOBI_RTOL", cast=float, default=1e-13)
ZERO_GRADIENT_NORM: float = config("ZERO_GRADIENT_NORM", cast=float, default=1e-12)

# Geometry thresholds.
DEGENERATE_FACE_RTOL: float = config("DEGENERATE_FACE_RTOL", cast=float, default=1e-12)
POSITIVE_MINOR_RTOL: float = config("POSITIVE_MINOR_RTOL", cast=float, default=1e-14)
ZERO_COMPONENT_RTOL: float = config("ZERO_COMPONENT_RTOL", cast=float, default=1e-12)

# Minimisation over the gauge simplex.
OPT_ARMIJO: float = config("OPT_ARMIJO", cast=float, default=1e-4)
OPT_GAUGE_SUM: float = config("OPT_GAUGE_SUM", cast=float, default=6.0)
OPT_GRAD_TOL: float = config("OPT_GRAD_TOL", cast=float, default=1e-7)
OPT_MAX_ITER: int = config("OPT_MAX_ITER", cast=int, default=10_000)
OPT_MIN_STEP: float = config("OPT_MIN_STEP", cast=float, default=1e-14)
OPT_STALL_LIMIT: int = config("OPT_STALL_LIMIT", cast=int, default=20)
COUNTEREXAMPLE_MARGIN: float = config("COUNTEREXAMPLE_MARGIN", cast=float, default=1e-9)
SURVEY_CONVERGENCE_TOL: float = config("SURVEY_CONVERGENCE_TOL", cast=float, default=1e-5)
SURVEY_WORKERS: int = config("SURVEY_WORKERS", cast=int, default=1)

# Two-value family scans.
FAMILY_U_MAX: float = config("FAMILY_U_MAX", cast=float, default=50.0)
FAMILY_U_STEP: float = config("FAMILY_U_STEP", cast=float, default=1e-3)

# Output formatting.
HUMAN_DECIMALS: int = config("HUMAN_DECIMALS", cast=int, default=6)
JSON_SIGNIFICANT_DIGITS: int = config("JSON_SIGNIFICANT_DIGITS", cast=int, default=12)
