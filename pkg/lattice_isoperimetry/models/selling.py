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

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Tuple

import numpy as np

from lattice_isoperimetry.core.exceptions import DegenerateCell, InvalidSellingParameters

# Storage order of the six parameters, as edges {i, j} of the complete graph on {0, 1, 2, 3}.
EDGES: Tuple[Tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PARAMETER_NAMES: Tuple[str, ...] = ("a", "b", "c", "d", "e", "f")


def edge_index(i: int, j: int) -> int:
    """
    Position of the edge {i, j} in the storage order.

    :param i: the first superbase index.
    :param j: the second superbase index, different from i.
    :return: the index in (rho01, rho02, rho03, rho12, rho13, rho23).
    """
    return EDGES.index((min(i, j), max(i, j)))


@dataclass(frozen=True)
class SellingParams:
    """
    The six non-negative Selling parameters (rho01, rho02, rho03, rho12, rho13, rho23) of a
    three-dimensional lattice, shorthand (a, b, c, d, e, f).
    Construction fails on negative or non-finite components and on degenerate lattices.
    """

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float

    def __post_init__(self) -> None:
        # pylint: disable=import-outside-toplevel
        # NOTE: imported locally, so as to avoid cyclic dependencies.
        from lattice_isoperimetry.helpers.selling import det_closed

        values = self.values
        if not all(math.isfinite(value) for value in values):
            raise InvalidSellingParameters(f"Selling parameters must be finite: {values}.")
        if any(value < 0 for value in values):
            raise InvalidSellingParameters(f"Selling parameters must be non-negative: {values}.")
        if (det := det_closed(values)) <= 0:
            raise DegenerateCell(det)

    @classmethod
    def from_sequence(cls, values: Sequence[float]) -> SellingParams:
        """
        Build the parameters from any sequence of six numbers.

        :param values: the six values in storage order.
        :return: the validated SellingParams.
        :raises: InvalidSellingParameters if the sequence does not have six elements.
        """
        if len(values) != 6:
            raise InvalidSellingParameters(f"Expected 6 Selling parameters, got {len(values)}.")
        return cls(*(float(value) for value in values))

    @property
    def values(self) -> Tuple[float, ...]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)

    def scaled(self, factor: float) -> SellingParams:
        """
        The parameters multiplied by a positive factor (the same lattice, rescaled).

        :param factor: the positive scaling factor.
        :return: the scaled parameters.
        """
        return SellingParams(*(factor * value for value in self.values))

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    def __str__(self) -> str:
        return ",".join(f"{value:g}" for value in self.values)


@dataclass(frozen=True)
class GramMatrix:
    """
    The symmetric positive definite Gram matrix A(rho), stored through its six independent
    entries, with its determinant and the upper triangular factor R such that R^T R = A.
    """

    diagonal: Tuple[float, float, float]
    off_diagonal: Tuple[float, float, float]  # A12, A13, A23
    det: float
    cholesky_upper: np.ndarray = field(repr=False, compare=False)

    @property
    def entries(self) -> np.ndarray:
        a11, a22, a33 = self.diagonal
        a12, a13, a23 = self.off_diagonal
        return np.array([[a11, a12, a13], [a12, a22, a23], [a13, a23, a33]], dtype=float)

    @property
    def leading_minors(self) -> Tuple[float, float, float]:
        a11, a22, _ = self.diagonal
        a12, _, _ = self.off_diagonal
        return a11, a11 * a22 - a12 * a12, self.det


@dataclass(frozen=True)
class Permutation:
    """
    An element sigma of S4, given by the images of 0, 1, 2, 3.
    It acts on the parameters as (sigma . rho)_ij = rho_{sigma(i) sigma(j)}.
    """

    images: Tuple[int, int, int, int]

    def __post_init__(self) -> None:
        if sorted(self.images) != [0, 1, 2, 3]:
            raise ValueError(f"Not a permutation of {{0, 1, 2, 3}}: {self.images}.")

    @property
    def edge_permutation(self) -> Tuple[int, ...]:
        """
        The induced permutation of the six edges: the k-th output component is the
        input component at position edge_permutation[k].
        """
        return tuple(edge_index(self.images[i], self.images[j]) for i, j in EDGES)

    @property
    def is_identity(self) -> bool:
        return self.images == (0, 1, 2, 3)
