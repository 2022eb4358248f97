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
from typing import List
from unittest.mock import MagicMock, patch

import numpy as np
from pytest import approx, mark, raises

from lattice_isoperimetry.core import config
from lattice_isoperimetry.core.exceptions import (
    DegenerateStencil,
    DomainError,
    NoConvergence,
    ZeroGradient,
)
from lattice_isoperimetry.helpers.calculus import (
    classify_point,
    gradient_fd,
    gradient_of,
    hessian_fd,
    hessian_of,
    reference_constants,
    restricted_spectrum,
    symmetric_eigen,
    tangent_basis,
    tangent_spectrum,
)
from lattice_isoperimetry.helpers.quotient import f_closed
from lattice_isoperimetry.helpers.selling import RHO_BCC, RHO_FCC, RHO_SC, det_gradient
from lattice_isoperimetry.models.enums import Classification
from lattice_isoperimetry.models.selling import SellingParams
from tests.fixtures.core import config_set
from tests.fixtures.lattices import F_BCC, F_FCC, V_MINUS


def test_gradient_of_polynomial() -> None:
    def cubic(x: np.ndarray) -> float:
        return float(x[0] ** 3 + 2 * x[0] * x[1] - x[1] ** 2)

    assert np.allclose(gradient_of(cubic, [1.0, 2.0], 1e-5), (7.0, -2.0), atol=1e-8)
    # One-sided along the first component.
    assert np.allclose(gradient_of(cubic, [0.0, 2.0], 1e-5), (4.0, -4.0), atol=1e-8)


def test_hessian_of_polynomial() -> None:
    def cubic(x: np.ndarray) -> float:
        return float(x[0] ** 3 + 2 * x[0] * x[1] - x[1] ** 2)

    expected = np.array([[6.0, 2.0], [2.0, -2.0]])
    assert np.allclose(hessian_of(cubic, [1.0, 2.0], 1e-3), expected, atol=1e-6)
    assert np.allclose(hessian_of(cubic, [0.0, 2.0], 1e-3), [[0.0, 2.0], [2.0, -2.0]], atol=1e-6)


def test_gradient_at_bcc() -> None:
    assert np.max(np.abs(gradient_fd(RHO_BCC))) <= 1e-7


def test_gradient_at_fcc() -> None:
    assert np.max(np.abs(gradient_fd(RHO_FCC))) <= 1e-6


def test_gradient_at_sc() -> None:
    expected = -4.0 + 2.0 * math.sqrt(2.0)
    assert np.allclose(gradient_fd(RHO_SC), (0.0, 0.0, 0.0) + (expected,) * 3, rtol=0, atol=1e-6)


def test_gradient_euler_identity(interior_rhos: List[SellingParams]) -> None:
    # F is homogeneous of degree 0.
    for rho in interior_rhos:
        gradient = gradient_fd(rho)
        assert abs(rho.as_array() @ gradient) <= 1e-7 * np.sum(np.abs(gradient)) + 1e-8


def test_gradient_matches_line_derivative(interior_rhos: List[SellingParams]) -> None:
    direction = np.array([1.0, -1.0, 0.5, 0.0, -0.5, 0.25])
    for rho in interior_rhos[:5]:
        point = rho.as_array()
        step = 1e-5
        slope = (f_closed(point + step * direction) - f_closed(point - step * direction)) / (
            2 * step
        )
        assert gradient_fd(rho) @ direction == approx(slope, abs=1e-7)


def test_gradient_degenerate_stencil() -> None:
    # The backward point of the last component has det A = 0.
    with raises(DegenerateStencil):
        gradient_fd((1.0, 1.0, 0.0, 0.0, 0.0, config.GRADIENT_STEP))


@patch("lattice_isoperimetry.helpers.calculus.F_EVALUATIONS.inc")
def test_stencil_points_are_cached(evaluations: MagicMock) -> None:
    gradient_fd(RHO_BCC)
    assert evaluations.call_count == 12
    evaluations.reset_mock()
    hessian_fd(RHO_BCC)
    assert evaluations.call_count == 1 + 2 * 6 + 4 * 15


def test_hessian_at_bcc() -> None:
    constants = reference_constants()
    hessian = hessian_fd(RHO_BCC)
    assert np.allclose(hessian, hessian.T, rtol=0, atol=0)
    assert np.allclose(hessian, constants.bcc_hessian, rtol=0, atol=1e-5)
    assert np.max(np.abs(hessian @ RHO_BCC.as_array())) <= 1e-4


def test_bcc_hessian_entries() -> None:
    hessian = reference_constants().bcc_hessian
    assert hessian[0, 0] == approx(0.114858, abs=1e-6)
    assert hessian[0, 1] == approx(-0.008713, abs=1e-6)
    assert hessian[0, 5] == approx(-0.080006, abs=1e-6)
    assert hessian[2, 3] == hessian[0, 5]


def test_hessian_at_fcc() -> None:
    hessian = hessian_fd(RHO_FCC)
    expected = reference_constants().fcc_hessian
    assert np.allclose(hessian, expected, rtol=0, atol=1e-5)
    corner = 2.0 ** (5.0 / 6.0) / 192.0 * (96.0 * math.sqrt(2.0) - 220.0)
    assert hessian[0, 5] == approx(corner, abs=1e-5)


def test_symmetric_eigen_identity() -> None:
    eigenvalues, eigenvectors = symmetric_eigen(np.eye(4))
    assert np.allclose(eigenvalues, np.ones(4))
    assert np.allclose(eigenvectors, np.eye(4))


def test_symmetric_eigen_random(rng: np.random.Generator) -> None:
    for size in (2, 5, 6):
        matrix = rng.normal(size=(size, size))
        matrix = matrix + matrix.T
        eigenvalues, eigenvectors = symmetric_eigen(matrix)
        assert np.allclose(eigenvalues, np.linalg.eigvalsh(matrix), rtol=0, atol=1e-10)
        assert np.allclose(eigenvectors.T @ eigenvectors, np.eye(size), rtol=0, atol=1e-10)
        assert np.allclose(
            eigenvectors @ np.diag(eigenvalues) @ eigenvectors.T, matrix, rtol=0, atol=1e-10
        )
        assert np.all(np.diff(eigenvalues) >= 0)


def test_symmetric_eigen_no_convergence(rng: np.random.Generator) -> None:
    matrix = rng.normal(size=(6, 6))
    with config_set("JACOBI_MAX_SWEEPS", 1), raises(NoConvergence):
        symmetric_eigen(matrix + matrix.T)


def test_reference_spectra() -> None:
    constants = reference_constants()
    for matrix, spectrum in (
        (constants.bcc_hessian, constants.bcc_spectrum),
        (constants.fcc_hessian, constants.fcc_spectrum),
        (constants.rd_hessian, constants.rd_spectrum),
        (constants.box_hessian, constants.box_spectrum),
    ):
        eigenvalues, _ = symmetric_eigen(matrix)
        assert np.allclose(eigenvalues, spectrum, rtol=0, atol=1e-12)
    assert constants.bcc_spectrum[1] == approx(0.052278, abs=1e-6)
    assert constants.bcc_spectrum[5] == approx(0.194864, abs=1e-6)
    assert constants.fcc_spectrum[0] == approx(-0.262031, abs=1e-6)
    assert constants.fcc_spectrum[5] == approx(1.301413, abs=1e-6)
    assert constants.fcc_tangent_negative == approx(-0.138722, abs=1e-6)
    assert constants.f_bcc == approx(F_BCC, rel=1e-15)
    assert constants.f_fcc == approx(F_FCC, rel=1e-15)


def test_tangent_basis() -> None:
    normal = np.array([4.0, 3.0, 3.0, 3.0, 3.0, 4.0])
    basis = tangent_basis(normal)
    assert basis.shape == (6, 5)
    assert np.allclose(basis.T @ basis, np.eye(5), atol=1e-12)
    assert np.allclose(normal @ basis, 0.0, atol=1e-12)
    with raises(ZeroGradient):
        tangent_basis(np.zeros(6))


def test_restricted_spectrum() -> None:
    hessian = np.diag([1.0, 2.0, 3.0])
    eigenvalues, eigenvectors = restricted_spectrum(hessian, np.eye(3)[:, 1:])
    assert np.allclose(eigenvalues, (2.0, 3.0))
    assert np.allclose(np.abs(eigenvectors), np.eye(3)[:, 1:])


def test_tangent_spectrum_bcc() -> None:
    constants = reference_constants()
    spectrum = tangent_spectrum(RHO_BCC)
    assert np.allclose(spectrum, constants.bcc_spectrum[1:], rtol=0, atol=1e-5)
    # The exact Hessian gives the same spectrum.
    assert np.allclose(
        tangent_spectrum(RHO_BCC, constants.bcc_hessian), constants.bcc_spectrum[1:], atol=1e-12
    )


def test_tangent_spectrum_fcc() -> None:
    constants = reference_constants()
    expected = (constants.fcc_tangent_negative,) + constants.fcc_spectrum[2:]
    assert np.allclose(tangent_spectrum(RHO_FCC, constants.fcc_hessian), expected, atol=1e-12)
    assert np.allclose(tangent_spectrum(RHO_FCC), expected, rtol=0, atol=1e-5)
    assert det_gradient(RHO_FCC) @ (3 * V_MINUS - 2 * RHO_FCC.as_array()) == 0.0


@patch("lattice_isoperimetry.helpers.calculus._LOGGER.warning")
def test_classify_bcc(warning_logger: MagicMock) -> None:
    report = classify_point(RHO_BCC)
    assert report.classification == Classification.INTERIOR_STRICT_MIN
    assert report.active_set == ()
    assert not report.one_sided
    assert abs(report.euler_residual) <= 1e-7
    assert len(report.full_spectrum) == 6
    assert len(report.tangent_spectrum) == len(report.critical_spectrum) == 5
    warning_logger.assert_not_called()


@patch("lattice_isoperimetry.helpers.calculus._LOGGER.warning")
def test_classify_fcc(warning_logger: MagicMock) -> None:
    report = classify_point(RHO_FCC)
    assert report.classification == Classification.SADDLE
    assert report.active_set == (0, 5)
    assert report.one_sided
    assert min(report.critical_spectrum) == approx(-0.138722, abs=1e-5)
    warning_logger.assert_called_once()


def test_fcc_descent_direction() -> None:
    # Moving along the opposite family decreases F below F_FCC.
    for t in (1e-3, 0.05, 0.5):
        assert f_closed(RHO_FCC.as_array() + t * V_MINUS) < F_FCC


def test_classify_sc() -> None:
    report = classify_point(RHO_SC)
    assert report.classification == Classification.NON_STATIONARY
    assert report.active_set == (3, 4, 5)
    assert report.critical_spectrum == ()
    assert f_closed((1.0, 1.0, 1.0, 0.05, 0.05, 0.05)) < 6.0


@mark.parametrize("rho", [(1.0, 2.0, 1.0, 1.0, 1.0, 1.0), (0.0, 1.0, 2.0, 1.0, 1.0, 0.0)])
def test_classify_non_stationary(rho: tuple) -> None:
    assert classify_point(rho).classification == Classification.NON_STATIONARY


def test_classify_scaled_bcc() -> None:
    report = classify_point(RHO_BCC.scaled(10.0))
    assert report.classification == Classification.INTERIOR_STRICT_MIN


@mark.parametrize("step", [0.0, -1e-6])
def test_explicit_steps_must_be_positive(step: float) -> None:
    with raises(DomainError):
        gradient_fd(RHO_BCC, step)
    with raises(DomainError):
        hessian_fd(RHO_BCC, step)
    with raises(DomainError):
        classify_point(RHO_BCC, gradient_step=step)
    with raises(DomainError):
        classify_point(RHO_BCC, hessian_step=step)


@mark.parametrize(
    "rho, stratum",
    [(RHO_BCC, "interior"), (RHO_FCC, "rhombic-dodecahedra"), (RHO_SC, "boxes")],
)
def test_classify_point_stratum(rho: SellingParams, stratum: str) -> None:
    assert classify_point(rho).stratum == stratum
