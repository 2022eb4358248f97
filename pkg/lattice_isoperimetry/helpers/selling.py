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
from typing import Sequence, Tuple, Union

import numpy as np

from lattice_isoperimetry.core import config
from lattice_isoperimetry.core.exceptions import InvalidSellingParameters, NotPositiveDefinite
from lattice_isoperimetry.models.selling import EDGES, GramMatrix, Permutation, SellingParams

RhoLike = Union[SellingParams, Sequence[float], np.ndarray]


def as_array(rho: RhoLike) -> np.ndarray:
    """
    Convert parameters into a float array of shape (6,), without validation.

    :param rho: the parameters, validated or raw.
    :return: the parameters array.
    :raises: InvalidSellingParameters if the shape is not (6,).
    """
    values = rho.as_array() if isinstance(rho, SellingParams) else np.asarray(rho, dtype=float)
    if values.shape != (6,):
        raise InvalidSellingParameters(f"Expected 6 Selling parameters, got shape {values.shape}.")
    return values


def det_closed(rho: RhoLike) -> float:
    """
    The determinant of A(rho) as the symmetric polynomial with 16 cubic monomials.
    Accepts boundary points, where it may vanish.

    :param rho: the parameters.
    :return: det A(rho).
    """
    a, b, c, d, e, f = as_array(rho)
    return float(
        a * b * c
        + a * b * e
        + a * b * f
        + a * c * d
        + a * c * f
        + a * d * e
        + a * d * f
        + a * e * f
        + b * c * d
        + b * c * e
        + b * d * e
        + b * d * f
        + b * e * f
        + c * d * e
        + c * d * f
        + c * e * f
    )


def gram_entries(rho: RhoLike) -> np.ndarray:
    """
    The 3x3 Gram matrix A(rho) as a plain array, without positivity checks.

    :param rho: the parameters.
    :return: the symmetric matrix.
    """
    a, b, c, d, e, f = as_array(rho)
    return np.array(
        [[a + d + e, -d, -e], [-d, b + d + f, -f], [-e, -f, c + e + f]], dtype=float,
    )


def gram_matrix(rho: RhoLike) -> GramMatrix:
    """
    Build the Gram matrix, checking its three leading principal minors.

    :param rho: the parameters.
    :return: the GramMatrix with determinant and upper triangular Cholesky factor.
    :raises: NotPositiveDefinite if any leading minor is not positive.
    """
    entries = gram_entries(rho)
    scale = float(np.trace(entries))
    minors = (
        entries[0, 0],
        entries[0, 0] * entries[1, 1] - entries[0, 1] ** 2,
        det_closed(rho),
    )
    if any(
        minor <= config.POSITIVE_MINOR_RTOL * scale ** order
        for order, minor in enumerate(minors, start=1)
    ):
        raise NotPositiveDefinite(minors)

    return GramMatrix(
        diagonal=(entries[0, 0], entries[1, 1], entries[2, 2]),
        off_diagonal=(entries[0, 1], entries[0, 2], entries[1, 2]),
        det=minors[2],
        cholesky_upper=np.linalg.cholesky(entries).T,
    )


def det_direct(gram: GramMatrix) -> float:
    """
    The determinant of the Gram matrix from its triangular factorization.
    Only used to cross-check det_closed.

    :param gram: the Gram matrix.
    :return: the squared product of the Cholesky diagonal.
    """
    return float(np.prod(np.diag(gram.cholesky_upper)) ** 2)


def _cofactors(entries: np.ndarray) -> np.ndarray:
    cofactors = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            minor = np.delete(np.delete(entries, i, axis=0), j, axis=1)
            determinant = minor[0, 0] * minor[1, 1] - minor[0, 1] * minor[1, 0]
            cofactors[i, j] = (-1) ** (i + j) * determinant
    return cofactors


def det_gradient(rho: RhoLike) -> np.ndarray:
    """
    The gradient of det A with respect to the six parameters, from the cofactor matrix C:
    d det / d rho_0i = C_ii and d det / d rho_ij = C_ii + C_jj - 2 C_ij for i, j >= 1.

    :param rho: the parameters.
    :return: the gradient in storage order.
    """
    cofactors = _cofactors(gram_entries(rho))
    gradient = np.empty(6)
    for k, (i, j) in enumerate(EDGES):
        if i == 0:
            gradient[k] = cofactors[j - 1, j - 1]
        else:
            gradient[k] = (
                cofactors[i - 1, i - 1] + cofactors[j - 1, j - 1] - 2 * cofactors[i - 1, j - 1]
            )
    return gradient


S4: Tuple[Permutation, ...] = tuple(
    Permutation(images) for images in itertools.permutations(range(4))  # type: ignore
)
# The 24 x 6 table of induced edge permutations, one row per element of S4.
S4_EDGE_TABLE: np.ndarray = np.array([sigma.edge_permutation for sigma in S4], dtype=int)


def s4_apply(sigma: Permutation, rho: SellingParams) -> SellingParams:
    """
    Relabel the superbase: (sigma . rho)_ij = rho_{sigma(i) sigma(j)}.

    :param sigma: the permutation.
    :param rho: the parameters.
    :return: the relabelled parameters.
    """
    return SellingParams.from_sequence(rho.as_array()[list(sigma.edge_permutation)])


def s4_orbit(values: RhoLike) -> np.ndarray:
    """
    All the 24 images of the given values, with repetitions, in the order of S4.

    :param values: six values in storage order (need not be a lattice, e.g. 0/1 masks).
    :return: an array of shape (24, 6).
    """
    return as_array(values)[S4_EDGE_TABLE]


def canonical_form(values: RhoLike) -> Tuple[float, ...]:
    """
    The lexicographically smallest image of the values under S4.

    :param values: six values in storage order.
    :return: the canonical tuple.
    """
    return min(tuple(float(value) for value in image) for image in s4_orbit(values))


def canonical_representative(rho: SellingParams) -> SellingParams:
    """
    The lexicographically smallest element of the S4 orbit of rho.

    :param rho: the parameters.
    :return: the canonical representative.
    """
    return SellingParams.from_sequence(canonical_form(rho))


def active_set(rho: RhoLike) -> Tuple[int, ...]:
    """
    The indices of the components counted as zero, i.e., |x| <= rtol * max component.

    :param rho: the parameters.
    :return: the sorted tuple of zero indices.
    """
    values = as_array(rho)
    threshold = config.ZERO_COMPONENT_RTOL * float(np.max(np.abs(values)))
    return tuple(int(index) for index in np.flatnonzero(np.abs(values) <= threshold))


def stratum_name(rho: RhoLike) -> str:
    """
    A descriptive name for the boundary stratum containing rho, up to relabelling.

    :param rho: the parameters.
    :return: "interior", "rhombic-dodecahedra", "boxes" or "boundary".
    """
    zeros = active_set(rho)
    if not zeros:
        return "interior"
    mask = tuple(1.0 if index in zeros else 0.0 for index in range(6))
    if canonical_form(mask) == canonical_form((1, 0, 0, 0, 0, 1)):
        return "rhombic-dodecahedra"
    if canonical_form(mask) == canonical_form((0, 0, 0, 1, 1, 1)):
        return "boxes"
    return "boundary"


RHO_BCC = SellingParams(1.0, 1.0, 1.0, 1.0, 1.0, 1.0)
RHO_FCC = SellingParams(0.0, 1.0, 1.0, 1.0, 1.0, 0.0)
RHO_SC = SellingParams(1.0, 1.0, 1.0, 0.0, 0.0, 0.0)
