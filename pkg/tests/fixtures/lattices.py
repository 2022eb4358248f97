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

import numpy as np
from pytest import fixture

from lattice_isoperimetry.helpers.selling import det_closed
from lattice_isoperimetry.models.selling import SellingParams

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
F_BCC = 3.0 * (1.0 + 2.0 * SQRT3) / 4.0 ** (2.0 / 3.0)
F_FCC = 3.0 * 2.0 ** (5.0 / 6.0)
F_SC = 6.0
V_MINUS = np.array([1.0, 0.0, 0.0, 0.0, 0.0, 1.0])


@fixture
def random_rhos(rng: np.random.Generator) -> List[SellingParams]:
    samples = rng.uniform(0.0, 2.0, size=(1000, 6))
    return [SellingParams.from_sequence(sample) for sample in samples if det_closed(sample) > 0]


@fixture
def strata_rhos(rng: np.random.Generator) -> List[SellingParams]:
    rhos = []
    while len(rhos) < 300:
        sample = rng.uniform(0.1, 2.0, size=6)
        zeros = rng.choice(6, size=1 + len(rhos) % 3, replace=False)
        sample[zeros] = 0.0
        if det_closed(sample) > 1e-3:
            rhos.append(SellingParams.from_sequence(sample))
    return rhos


@fixture
def interior_rhos(rng: np.random.Generator) -> List[SellingParams]:
    return [
        SellingParams.from_sequence(sample) for sample in rng.uniform(0.2, 2.0, size=(20, 6))
    ]
