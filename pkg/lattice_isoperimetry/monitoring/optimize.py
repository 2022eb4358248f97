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

OPTIMIZATION_RUNS = Counter(
    namespace=NAMESPACE,
    subsystem=Subsystem.OPTIMIZE.value,
    name="runs",
    labelnames=("outcome",),
    documentation="Number of minimisations of F, by outcome (converged, not_converged).",
)

ACCEPTED_ITERATIONS = Counter(
    namespace=NAMESPACE,
    subsystem=Subsystem.OPTIMIZE.value,
    name="accepted_iterations",
    documentation="Number of iterations accepted by the projected gradient line search.",
)

SIMPLEX_FALLBACKS = Counter(
    namespace=NAMESPACE,
    subsystem=Subsystem.OPTIMIZE.value,
    name="simplex_fallbacks",
    documentation="Number of minimisations handed over to the derivative-free simplex method.",
)

COUNTEREXAMPLE_CANDIDATES = Counter(
    namespace=NAMESPACE,
    subsystem=Subsystem.OPTIMIZE.value,
    name="counterexample_candidates",
    documentation="Number of survey runs ending below F_BCC after re-verification.",
)
