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

import csv
import io
from dataclasses import dataclass
from typing import Tuple

from lattice_isoperimetry.core.exceptions import DomainError
from lattice_isoperimetry.models.enums import OrbitName


@dataclass(frozen=True)
class OrbitClass:
    """
    An S4 orbit of two-value Selling patterns: the edges marked with 1 carry the value p,
    the others the value q.
    """

    name: OrbitName
    pattern: Tuple[int, ...]
    orbit_size: int
    members: Tuple[Tuple[int, ...], ...]

    @property
    def weight(self) -> int:
        return sum(self.pattern)

    @property
    def representative(self) -> str:
        return "(" + ",".join("p" if bit else "q" for bit in self.pattern) + ")"


@dataclass(frozen=True)
class FamilyPoint:
    """
    A point (p, q) of a two-value family, parametrised by u = p / q.
    """

    p: float
    q: float

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 0:
            raise DomainError(f"Family values must be non-negative, got p={self.p}, q={self.q}.")

    @property
    def u(self) -> float:
        if self.q <= 0:
            raise DomainError("The ratio u = p / q is defined for q > 0 only.")
        return self.p / self.q


@dataclass(frozen=True)
class FamilyScan:
    """
    Samples of a two-value family along u, with q = 1.
    """

    orbit: OrbitName
    header: Tuple[str, ...]
    rows: Tuple[Tuple[float, ...], ...]

    def to_csv(self, significant_digits: int) -> str:
        """
        Render the samples as CSV, every value with exactly significant_digits digits.
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.header)
        writer.writerows(
            [f"{value:#.{significant_digits}g}" for value in row] for row in self.rows
        )
        return buffer.getvalue()


@dataclass(frozen=True)
class MonotonicityReport:
    """
    The outcome of the numerical verification of the monotonicity of F along the opposite
    family: F decreases on (0, 1), increases on (1, u_max] and is minimal at u = 1.
    """

    u_max: float
    step: float
    n_samples: int
    psi_at_zero: float
    psi_at_one: float
    psi_prime_at_one: float
    psi_second_min: float
    psi_second_bound: float
    psi_second_discrepancy: float
    argmin_u: float
    min_tilde_f: float
