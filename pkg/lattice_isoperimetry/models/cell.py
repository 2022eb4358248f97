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
from typing import Tuple

import numpy as np
from scipy.linalg import solve_triangular

from lattice_isoperimetry.models.selling import SellingParams

VertexLabel = Tuple[int, int, int]


@dataclass(frozen=True)
class VertexY:
    """
    A vertex v_ijk of the Voronoi cell in y-coordinates (y = A x).
    The label (i, j, k) identifies the permutation (i, j, k, l) of {0, 1, 2, 3}: the vertex is
    the intersection of the faces of the lattice vectors b_i, b_i + b_j and -b_l.
    """

    label: VertexLabel
    coords: np.ndarray = field(compare=False)

    @property
    def name(self) -> str:
        return "v{}{}{}".format(*self.label)


@dataclass(frozen=True)
class FaceCycle:
    """
    A face of the cell: the ordered cycle of its vertex labels, its vector area in
    y-coordinates and its Euclidean area.
    """

    name: str
    vertex_labels: Tuple[VertexLabel, ...]
    area_vector: np.ndarray = field(compare=False)
    scalar_area: float

    @property
    def is_hexagon(self) -> bool:
        return len(self.vertex_labels) == 6


@dataclass(frozen=True)
class VoronoiCell:
    """
    The Voronoi cell of the lattice: 24 vertices and 14 faces, with total area and volume.
    Faces are ordered as the seven representatives followed by their antipodes.
    """

    params: SellingParams
    vertices: Tuple[VertexY, ...]
    faces: Tuple[FaceCycle, ...]
    total_area: float
    volume: float

    def vertex(self, label: VertexLabel) -> VertexY:
        """
        Retrieve a vertex by label.

        :param label: the (i, j, k) label.
        :return: the vertex.
        :raises: KeyError if the label is unknown.
        """
        for vertex in self.vertices:
            if vertex.label == label:
                return vertex
        raise KeyError(label)

    @property
    def representative_faces(self) -> Tuple[FaceCycle, ...]:
        return self.faces[:7]

    def degenerate_faces(self, rtol: float) -> Tuple[FaceCycle, ...]:
        """
        The faces whose area is negligible compared to the total area.

        :param rtol: the relative threshold.
        :return: the collapsed faces.
        """
        return tuple(face for face in self.faces if face.scalar_area < rtol * self.total_area)


@dataclass(frozen=True)
class EuclideanEmbedding:
    """
    The embedding of y-space into Euclidean space through a basis matrix B with B^T B = A.
    The upper triangular Cholesky factor is used as B, and a point maps as v = B^{-T} y.
    """

    basis: np.ndarray

    def y_to_euclid(self, y: np.ndarray) -> np.ndarray:
        """
        Map y-coordinates to Euclidean coordinates by solving the triangular system B^T v = y.

        :param y: a point, or an (n, 3) array of points, in y-coordinates.
        :return: the corresponding Euclidean point(s).
        """
        points = np.atleast_2d(np.asarray(y, dtype=float))
        mapped = solve_triangular(self.basis, points.T, trans="T", lower=False).T
        return mapped[0] if np.ndim(y) == 1 else mapped
