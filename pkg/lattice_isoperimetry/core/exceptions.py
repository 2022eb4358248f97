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

from typing import Any, Dict, Iterable, Optional


class LatticeIsoperimetryException(Exception):
    """
    Base class for all the errors raised by the package.
    The exit_code is used by the command line interface as process exit status.
    """

    exit_code: int = 1


class InvalidSellingParameters(LatticeIsoperimetryException):
    """
    Raised when the Selling parameters are malformed (wrong arity, negative or not finite).
    """

    exit_code = 2


class NotPositiveDefinite(LatticeIsoperimetryException):
    """
    Raised when a Gram matrix fails the leading principal minors test.
    """

    exit_code = 3

    def __init__(self, minors: Iterable[float]) -> None:
        values = [float(minor) for minor in minors]
        super().__init__(f"Gram matrix is not positive definite (leading minors: {values}).")


class DegenerateCell(LatticeIsoperimetryException):
    """
    Raised when the lattice is degenerate, i.e., det A <= 0.
    """

    exit_code = 3

    def __init__(self, det: float) -> None:
        super().__init__(f"Degenerate lattice: det A = {det!r}.")
        self.det = det


class DegenerateStencil(LatticeIsoperimetryException):
    """
    Raised when a finite-difference stencil point leaves the region where det A > 0.
    """

    exit_code = 3


class ZeroGradient(LatticeIsoperimetryException):
    """
    Raised when the gradient of det A is too small to define the fixed-volume tangent space.
    """

    exit_code = 3


class NoConvergence(LatticeIsoperimetryException):
    """
    Raised when the Jacobi eigenvalue iteration exhausts its sweeps.
    """

    def __init__(self, sweeps: int, off_diagonal: float) -> None:
        super().__init__(
            f"Jacobi iteration did not converge after {sweeps} sweeps "
            f"(largest off-diagonal entry: {off_diagonal!r})."
        )


class DomainError(LatticeIsoperimetryException):
    """
    Raised when a restricted functional is evaluated outside of its domain, or when a
    finite-difference step is not positive.
    """

    exit_code = 2


class NotConverged(LatticeIsoperimetryException):
    """
    Raised when the minimisation reaches the maximum number of iterations.
    The partial result is attached to the exception.
    """

    def __init__(self, result: Any) -> None:
        super().__init__(f"Minimisation did not converge after {result.iterations} iterations.")
        self.result = result


class VerificationFailure(LatticeIsoperimetryException):
    """
    Raised when a numerical verification fails, identifying the violating sample.
    """

    def __init__(self, check: str, sample: Optional[Dict[str, float]] = None) -> None:
        super().__init__(f"Verification '{check}' failed at {sample}.")
        self.check = check
        self.sample = sample or {}
