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

from prometheus_client.metrics import Counter

from lattice_isoperimetry.monitoring.core import NAMESPACE, Subsystem

F_EVALUATIONS = Counter(
    namespace=NAMESPACE,
    subsystem=Subsystem.CALCULUS.value,
    name="f_evaluations",
    documentation="Number of evaluations of F performed by finite-difference stencils.",
)

ONE_SIDED_HESSIANS = Counter(
    namespace=NAMESPACE,
    subsystem=Subsystem.CALCULUS.value,
    name="one_sided_hessians",
    documentation="Number of Hessians computed with one-sided stencils on a boundary stratum.",
)
