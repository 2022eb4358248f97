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

import numpy as np
from pytest import mark, raises

from lattice_isoperimetry.core.exceptions import DegenerateCell, InvalidSellingParameters
from lattice_isoperimetry.models.selling import EDGES, Permutation, SellingParams, edge_index


def test_selling_params_str() -> None:
    assert str(SellingParams(1.0, 0.5, 2.0, 0.0, 0.0, 1.0)) == "1,0.5,2,0,0,1"


def test_selling_params_iter_and_values() -> None:
    params = SellingParams.from_sequence([0, 1, 1, 1, 1, 0])
    assert tuple(params) == params.values == (0.0, 1.0, 1.0, 1.0, 1.0, 0.0)
    assert params.as_array().dtype == float


@mark.parametrize(
    "values",
    [
        (1.0, 1.0, 1.0, 1.0, 1.0, -0.1),
        (1.0, 1.0, math.nan, 1.0, 1.0, 1.0),
        (1.0, 1.0, 1.0, math.inf, 1.0, 1.0),
    ],
)
def test_selling_params_invalid(values: tuple) -> None:
    with raises(InvalidSellingParameters):
        SellingParams(*values)


@mark.parametrize("values", [(), (1.0, 1.0, 1.0), (1.0,) * 7])
def test_selling_params_wrong_arity(values: tuple) -> None:
    with raises(InvalidSellingParameters):
        SellingParams.from_sequence(values)


@mark.parametrize(
    "values", [(1.0, 0.0, 0.0, 0.0, 0.0, 0.0), (1.0, 1.0, 0.0, 1.0, 0.0, 0.0), (0.0,) * 6]
)
def test_selling_params_degenerate(values: tuple) -> None:
    with raises(DegenerateCell) as exc:
        SellingParams(*values)
    assert exc.value.det == 0.0


def test_selling_params_scaled() -> None:
    params = SellingParams(1.0, 2.0, 3.0, 4.0, 5.0, 6.0).scaled(0.5)
    assert params.values == (0.5, 1.0, 1.5, 2.0, 2.5, 3.0)


def test_edge_index() -> None:
    for position, (i, j) in enumerate(EDGES):
        assert edge_index(i, j) == edge_index(j, i) == position
    assert edge_index(2, 1) == 3


def test_permutation_invalid() -> None:
    with raises(ValueError):
        Permutation((0, 1, 1, 2))


def test_permutation_edge_permutation() -> None:
    assert Permutation((0, 1, 2, 3)).is_identity
    assert Permutation((0, 1, 2, 3)).edge_permutation == (0, 1, 2, 3, 4, 5)
    # Swapping 0 and 1 exchanges rho02 with rho12 and rho03 with rho13.
    swap = Permutation((1, 0, 2, 3))
    assert not swap.is_identity
    assert swap.edge_permutation == (0, 3, 4, 1, 2, 5)


def test_permutation_as_array_indexing() -> None:
    values = np.arange(6.0)
    assert list(values[list(Permutation((1, 0, 2, 3)).edge_permutation)]) == [0, 3, 4, 1, 2, 5]
