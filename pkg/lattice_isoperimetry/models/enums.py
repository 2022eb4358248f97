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

from enum import Enum


class Classification(Enum):
    """
    Enumeration of the outcomes of the stationarity analysis at fixed volume.
    """

    INTERIOR_STRICT_MIN = "interior_strict_min"
    STRATUM_STRICT_MIN = "stratum_strict_min"
    SADDLE = "saddle"
    NON_STATIONARY = "non_stationary"
    INCONCLUSIVE = "inconclusive"


class OrbitName(Enum):
    """
    Enumeration of the S4 orbits of two-value Selling patterns.
    """

    C = "C"  # one edge
    O = "O"  # two opposite edges
    A = "A"  # two adjacent edges
    S = "S"  # three edges, star
    T = "T"  # three edges, triangle
    P = "P"  # three edges, path


class OutputMode(Enum):
    """
    Enumeration of the command line output renderings.
    """

    HUMAN = "human"
    JSON = "json"


class OptimizationMethod(Enum):
    """
    Enumeration of the minimisation strategies.
    """

    PROJECTED_GRADIENT = "projected_gradient"
    NELDER_MEAD = "nelder_mead"


class Environment(Enum):
    """
    Enumeration of the environments the package runs in.
    """

    DEVELOPMENT = "development"
    TESTING = "testing"
    RELEASE = "release"
