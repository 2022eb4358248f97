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
from typing import Dict, List, Sequence, Tuple

import numpy as np

from lattice_isoperimetry.core import config
from lattice_isoperimetry.core.exceptions import DegenerateCell
from lattice_isoperimetry.helpers.selling import (
    RhoLike,
    as_array,
    det_closed,
    gram_entries,
    gram_matrix,
)
from lattice_isoperimetry.models.cell import (
    EuclideanEmbedding,
    FaceCycle,
    VertexLabel,
    VertexY,
    VoronoiCell,
)
from lattice_isoperimetry.models.selling import SellingParams

_LOGGER = logging.getLogger(__name__)

# v_{302} = -v_{120} and so on: central inversion completes the generating set.
INVERSIONS: Dict[VertexLabel, VertexLabel] = {
    (3, 0, 2): (1, 2, 0),
    (3, 2, 0): (1, 0, 2),
    (3, 0, 1): (2, 1, 0),
    (3, 1, 0): (2, 0, 1),
    (0, 2, 3): (1, 3, 2),
    (0, 3, 2): (1, 2, 3),
    (0, 1, 3): (2, 3, 1),
    (0, 3, 1): (2, 1, 3),
    (0, 1, 2): (3, 2, 1),
    (0, 2, 1): (3, 1, 2),
}

# The seven representative faces, as printed cycles; antipodes negate every vertex.
REPRESENTATIVE_FACES: Tuple[Tuple[str, Tuple[VertexLabel, ...]], ...] = (
    ("F12", ((1, 2, 0), (1, 2, 3), (2, 1, 3), (2, 1, 0))),
    ("F13", ((1, 3, 0), (1, 3, 2), (3, 1, 2), (3, 1, 0))),
    ("F23", ((2, 3, 0), (2, 3, 1), (3, 2, 1), (3, 2, 0))),
    ("F1", ((1, 0, 2), (1, 2, 0), (1, 2, 3), (1, 3, 2), (1, 3, 0), (1, 0, 3))),
    ("F2", ((2, 0, 1), (2, 1, 0), (2, 1, 3), (2, 3, 1), (2, 3, 0), (2, 0, 3))),
    ("F3", ((3, 0, 2), (3, 2, 0), (3, 2, 1), (3, 1, 2), (3, 1, 0), (3, 0, 1))),
    ("F0", ((0, 1, 2), (0, 2, 1), (0, 2, 3), (0, 3, 2), (0, 3, 1), (0, 1, 3))),
)

# Lattice vector (x-coordinates) orthogonal to each representative face.
FACE_LATTICE_VECTORS: Dict[str, Tuple[int, int, int]] = {
    "F12": (1, 1, 0),
    "F13": (1, 0, 1),
    "F23": (0, 1, 1),
    "F1": (1, 0, 0),
    "F2": (0, 1, 0),
    "F3": (0, 0, 1),
    "F0": (-1, -1, -1),
}

_SUPERBASE_X = {0: (-1, -1, -1), 1: (1, 0, 0), 2: (0, 1, 0), 3: (0, 0, 1)}


def _generating_vertices(rho: RhoLike) -> Dict[VertexLabel, np.ndarray]:
    a, b, c, d, e, f = as_array(rho)
    table = {
        (1, 0, 2): (a + d + e, f - b - d, -c - e - f),
        (1, 2, 0): (a + d + e, b - d + f, -c - e - f),
        (1, 0, 3): (a + d + e, -b - d - f, f - c - e),
        (1, 3, 0): (a + d + e, -b - d - f, c + f - e),
        (1, 2, 3): (a + d + e, b - d + f, c - e - f),
        (1, 3, 2): (a + d + e, b - d - f, c - e + f),
        (2, 0, 1): (-a - d + e, b + d + f, -c - e - f),
        (2, 1, 0): (a - d + e, b + d + f, -c - e - f),
        (2, 1, 3): (a - d + e, b + d + f, c - e - f),
        (2, 3, 1): (a - d - e, b + d + f, c + e - f),
        (2, 3, 0): (-a - d - e, b + d + f, c + e - f),
        (2, 0, 3): (-a - d - e, b + d + f, -c + e - f),
        (3, 1, 2): (a + d - e, b - d - f, c + e + f),
        (3, 2, 1): (a - d - e, b + d - f, c + e + f),
    }
    return {label: 0.5 * np.array(coords, dtype=float) for label, coords in table.items()}


def missing_index(label: VertexLabel) -> int:
    """
    The fourth index l of the permutation (i, j, k, l) labelling a vertex.
    """
    return ({0, 1, 2, 3} - set(label)).pop()


def antipode_label(label: VertexLabel) -> VertexLabel:
    """
    The label of -v_ijk, namely v_lkj.

    :param label: the (i, j, k) label.
    :return: the antipodal label.
    """
    i, j, k = label
    return missing_index(label), k, j


def cell_vertices(rho: RhoLike) -> List[VertexY]:
    """
    The 24 vertices of the cell in y-coordinates: the 14 tabulated ones followed by the 10
    central inversion images. Degenerate parameters are accepted.

    :param rho: the parameters.
    :return: the list of vertices.
    """
    generating = _generating_vertices(rho)
    vertices = [VertexY(label=label, coords=coords) for label, coords in generating.items()]
    vertices.extend(
        VertexY(label=label, coords=-generating[source]) for label, source in INVERSIONS.items()
    )
    return vertices


def vertex_from_planes(rho: RhoLike, label: VertexLabel) -> np.ndarray:
    """
    Compute v_ijk independently, as the intersection of the three face planes <w, y> = |w|^2 / 2
    for the lattice vectors w = b_i, b_i + b_j and b_i + b_j + b_k = -b_l.

    :param rho: the parameters.
    :param label: the (i, j, k) label.
    :return: the vertex in y-coordinates.
    """
    i, j, k = label
    normals = np.cumsum([_SUPERBASE_X[i], _SUPERBASE_X[j], _SUPERBASE_X[k]], axis=0)
    entries = gram_entries(rho)
    offsets = 0.5 * np.einsum("ni,ij,nj->n", normals, entries, normals)
    return np.linalg.solve(normals.astype(float), offsets)


def face_normal_vector(rho: RhoLike, name: str) -> Tuple[np.ndarray, float]:
    """
    The lattice vector w (in x-coordinates) whose bisector plane supports the face, and the
    plane offset w^T A w / 2: the face lies in {y : <w, y> = offset}.

    :param rho: the parameters.
    :param name: the face name, e.g., "F12" or "-F12" for its antipode.
    :return: the lattice vector and the offset.
    """
    sign = -1.0 if name.startswith("-") else 1.0
    vector = sign * np.array(FACE_LATTICE_VECTORS[name.lstrip("-")], dtype=float)
    return vector, 0.5 * float(vector @ gram_entries(rho) @ vector)


def check_vertex_table(rho: RhoLike) -> List[VertexLabel]:
    """
    Compare every tabulated vertex with the face-plane construction.

    :param rho: the parameters, with det A > 0.
    :return: the labels of the inconsistent vertices (empty if the table is consistent).
    """
    inconsistent = []
    scale = float(np.max(np.abs(as_array(rho))))
    for vertex in cell_vertices(rho):
        expected = vertex_from_planes(rho, vertex.label)
        if np.max(np.abs(vertex.coords - expected)) > 1e-12 * scale:
            _LOGGER.warning(
                "Vertex table inconsistency.",
                extra=dict(
                    vertex=vertex.name, tabulated=vertex.coords.tolist(), planes=expected.tolist()
                ),
            )
            inconsistent.append(vertex.label)
    return inconsistent


def check_face_planes(rho: RhoLike) -> List[str]:
    """
    Check that every face cycle lies on the bisector plane of its lattice vector.

    :param rho: the parameters, with det A > 0.
    :return: the names of the faces with a vertex off their plane.
    """
    coords = {vertex.label: vertex.coords for vertex in cell_vertices(rho)}
    scale = float(np.max(np.abs(as_array(rho))))
    off_plane = []
    for name, cycle in all_face_cycles():
        normal, offset = face_normal_vector(rho, name)
        residual = max(abs(float(normal @ coords[label]) - offset) for label in cycle)
        if residual > 1e-12 * scale:
            _LOGGER.warning("Face off its plane.", extra=dict(face=name, residual=residual))
            off_plane.append(name)
    return off_plane


def face_cycles() -> List[Tuple[str, Tuple[VertexLabel, ...]]]:
    """
    The seven representative faces as (name, cycle of vertex labels).
    """
    return list(REPRESENTATIVE_FACES)


def all_face_cycles() -> List[Tuple[str, Tuple[VertexLabel, ...]]]:
    """
    The 14 faces: the representatives, then their antipodes (named with a leading "-").
    The antipodal cycle is reversed, so that both faces of a pair share the orientation
    relative to the cell.
    """
    antipodes = [
        (f"-{name}", tuple(antipode_label(label) for label in reversed(cycle)))
        for name, cycle in REPRESENTATIVE_FACES
    ]
    return face_cycles() + antipodes


def area_vector_polygon(vertices: Sequence[np.ndarray]) -> np.ndarray:
    """
    The vector area 1/2 sum p_k x p_{k+1} of a closed polygon.

    :param vertices: at least three ordered vertices.
    :return: the vector area.
    """
    points = np.asarray(vertices, dtype=float)
    return 0.5 * np.cross(points, np.roll(points, -1, axis=0)).sum(axis=0)


def area_vectors_closed(rho: RhoLike) -> Dict[str, np.ndarray]:
    """
    The closed forms of the seven representative vector areas, with non-negative prefactors.

    :param rho: the parameters.
    :return: the vector areas by face name.
    """
    a, b, c, d, e, f = as_array(rho)
    return {
        "F12": c * d * np.array([1.0, 1.0, 0.0]),
        "F13": b * e * np.array([1.0, 0.0, 1.0]),
        "F23": a * f * np.array([0.0, 1.0, 1.0]),
        "F1": (b * c + b * f + c * f) * np.array([1.0, 0.0, 0.0]),
        "F2": (a * c + a * e + c * e) * np.array([0.0, 1.0, 0.0]),
        "F3": (a * b + a * d + b * d) * np.array([0.0, 0.0, 1.0]),
        "F0": (d * e + d * f + e * f) * np.array([1.0, 1.0, 1.0]),
    }


def face_area(rho: RhoLike, area_vector: np.ndarray) -> float:
    """
    The Euclidean area of a face from its vector area V in y-coordinates:
    sqrt(V^T A V) / sqrt(det A).

    :param rho: the parameters.
    :param area_vector: the vector area in y-coordinates.
    :return: the physical area.
    :raises: DegenerateCell if det A <= 0.
    """
    if (det := det_closed(rho)) <= 0:
        raise DegenerateCell(det)
    quadratic = float(area_vector @ gram_entries(rho) @ area_vector)
    return float(np.sqrt(max(quadratic, 0.0) / det))


def embed_euclidean(rho: RhoLike) -> EuclideanEmbedding:
    """
    The Euclidean embedding given by the upper triangular Cholesky factor of A.

    :param rho: the parameters.
    :return: the embedding.
    :raises: NotPositiveDefinite if A is not positive definite.
    """
    return EuclideanEmbedding(basis=gram_matrix(rho).cholesky_upper)


def _outward(points: np.ndarray) -> bool:
    # The cell contains the origin, so an outward vector area points away from it.
    return float(area_vector_polygon(points) @ points.mean(axis=0)) >= 0.0


def build_cell(rho: RhoLike) -> VoronoiCell:
    """
    Build the Voronoi cell: vertices, the 14 faces oriented outwards with their vector and
    scalar areas, the total area and the volume (divergence theorem in Euclidean space).

    :param rho: the parameters.
    :return: the cell.
    :raises: DegenerateCell if det A <= 0.
    """
    params = rho if isinstance(rho, SellingParams) else SellingParams.from_sequence(as_array(rho))
    vertices = cell_vertices(params)
    coords = {vertex.label: vertex.coords for vertex in vertices}
    embedding = embed_euclidean(params)

    faces = []
    volume = 0.0
    for name, cycle in all_face_cycles():
        euclidean = embedding.y_to_euclid(np.array([coords[label] for label in cycle]))
        if not _outward(euclidean):
            cycle = tuple(reversed(cycle))
            euclidean = euclidean[::-1]
        area_vector = area_vector_polygon([coords[label] for label in cycle])
        faces.append(
            FaceCycle(
                name=name,
                vertex_labels=cycle,
                area_vector=area_vector,
                scalar_area=face_area(params, area_vector),
            )
        )
        volume += float(euclidean.mean(axis=0) @ area_vector_polygon(euclidean)) / 3.0

    return VoronoiCell(
        params=params,
        vertices=tuple(vertices),
        faces=tuple(faces),
        total_area=sum(face.scalar_area for face in faces),
        volume=abs(volume),
    )


def export_obj(cell: VoronoiCell, embedding: EuclideanEmbedding) -> str:
    """
    Render the cell as Wavefront OBJ text: one vertex line per vertex in Euclidean coordinates,
    one face line per non-degenerate face (1-based indices, outward orientation), and a
    comment line for every collapsed face.

    :param cell: the cell.
    :param embedding: the Euclidean embedding of the cell's lattice.
    :return: the newline-terminated OBJ text.
    """
    index = {vertex.label: position for position, vertex in enumerate(cell.vertices, start=1)}
    points = embedding.y_to_euclid(np.array([vertex.coords for vertex in cell.vertices]))
    lines = [f"# Voronoi cell of the lattice with Selling parameters {cell.params}"]
    lines.extend("v {:.9g} {:.9g} {:.9g}".format(*point) for point in points)

    degenerate = {face.name for face in cell.degenerate_faces(config.DEGENERATE_FACE_RTOL)}
    for face in cell.faces:
        if face.name in degenerate:
            lines.append(f"# degenerate-face {face.name}")
            continue
        cycle = face.vertex_labels
        if not _outward(points[[index[label] - 1 for label in cycle]]):
            cycle = tuple(reversed(cycle))
        lines.append("f " + " ".join(str(index[label]) for label in cycle))
    return "\n".join(lines) + "\n"
