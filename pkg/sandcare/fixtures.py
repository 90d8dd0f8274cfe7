# Copyright (c) 2026 sandcare contributors
# This file is part of sandcare.
#
# sandcare is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.


"""Worked examples with their published matrices.

The matrices are embedded here so that the verification command and the test
suite check the simulator against the same reference values without reading
anything from disk.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from sandcare.network import Neighborhood

Rows = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class WorkedExample:
    name: str
    n: int
    neighborhood: Neighborhood
    ground: Rows
    # inflow as {node: amount}
    inflow: Dict[int, int]
    # the published matrices; None where none is published
    inflow_state: Optional[Rows] = None
    srh: Optional[Rows] = None
    standard: Optional[Rows] = None
    open: Optional[Rows] = None
    srh_intermediate: Optional[Rows] = None
    # topplings after which srh_intermediate is reached
    intermediate_after: int = 1
    # indicator on the inflow state, the standard outcome and the srh outcome
    indicators: Optional[Tuple[Fraction, Fraction, Fraction]] = None
    # the standard outcome is reproduced by the lowest-id tie-break
    standard_lowest_id: bool = False
    # critical counts (margin 2) of the standard and srh outcomes
    critical_counts: Optional[Tuple[int, int]] = None
    notes: Dict[str, str] = field(default_factory=dict)


SINGLE_OVERFLOW = WorkedExample(
    name='single-overflow',
    n=3,
    neighborhood=Neighborhood.VON_NEUMANN,
    ground=(
        (0, 0, 0),
        (0, 0, 0),
        (0, 0, 0),
    ),
    inflow={5: 4},
    open=(
        (0, 1, 0),
        (1, 0, 1),
        (0, 1, 0),
    ),
)

ITERATED_HUB = WorkedExample(
    name='iterated-hub',
    n=3,
    neighborhood=Neighborhood.VON_NEUMANN,
    ground=(
        (2, 1, 3),
        (1, 3, 1),
        (1, 0, 2),
    ),
    inflow={5: 1},
    inflow_state=(
        (2, 1, 3),
        (1, 4, 1),
        (1, 0, 2),
    ),
    standard=(
        (2, 1, 3),
        (1, 3, 1),
        (1, 1, 2),
    ),
    srh=(
        (2, 2, 3),
        (2, 0, 2),
        (1, 1, 2),
    ),
    standard_lowest_id=True,
)

# the standard outcome after four identical hub inflows
ITERATED_HUB_SETTLED = (
    (2, 2, 3),
    (2, 3, 2),
    (1, 1, 2),
)

# hub-bound patients the srh outcome of ITERATED_HUB absorbs before toppling again
ITERATED_HUB_ABSORBED = 3

HUB_OVERFLOW = WorkedExample(
    name='hub-overflow',
    n=3,
    neighborhood=Neighborhood.MOORE,
    ground=(
        (2, 3, 1),
        (5, 7, 2),
        (4, 3, 3),
    ),
    inflow={5: 4},
    inflow_state=(
        (2, 3, 1),
        (5, 11, 2),
        (4, 3, 3),
    ),
    standard=(
        (2, 4, 1),
        (5, 7, 4),
        (4, 4, 3),
    ),
    srh=(
        (3, 4, 2),
        (6, 3, 3),
        (5, 4, 4),
    ),
    indicators=(Fraction(11), Fraction(7), Fraction(3)),
)

SPREAD_INFLOW = WorkedExample(
    name='spread-inflow',
    n=5,
    neighborhood=Neighborhood.MOORE,
    ground=(
        (1, 2, 4, 2, 5),
        (2, 4, 2, 3, 1),
        (3, 2, 7, 2, 3),
        (2, 1, 4, 2, 2),
        (4, 2, 1, 5, 4),
    ),
    inflow={9: 1, 12: 1, 13: 4, 14: 2, 18: 1, 19: 1},
    inflow_state=(
        (1, 2, 4, 2, 5),
        (2, 4, 2, 4, 1),
        (3, 3, 11, 4, 3),
        (2, 1, 5, 3, 2),
        (4, 2, 1, 5, 4),
    ),
    standard=(
        (1, 2, 4, 2, 5),
        (2, 4, 4, 4, 1),
        (3, 3, 7, 4, 3),
        (2, 3, 5, 3, 2),
        (4, 2, 1, 5, 4),
    ),
    srh=(
        (1, 2, 4, 2, 5),
        (2, 5, 3, 5, 1),
        (3, 4, 3, 5, 3),
        (2, 2, 6, 4, 2),
        (4, 2, 1, 5, 4),
    ),
    indicators=(Fraction(67, 10), Fraction(51, 10), Fraction(41, 10)),
    standard_lowest_id=True,
)

TWO_TOPPLINGS = WorkedExample(
    name='two-topplings',
    n=5,
    neighborhood=Neighborhood.MOORE,
    ground=(
        (4, 1, 0, 1, 3),
        (5, 0, 5, 1, 1),
        (1, 2, 7, 7, 4),
        (5, 5, 2, 4, 5),
        (3, 5, 4, 5, 3),
    ),
    inflow={13: 4},
    inflow_state=(
        (4, 1, 0, 1, 3),
        (5, 0, 5, 1, 1),
        (1, 2, 11, 7, 4),
        (5, 5, 2, 4, 5),
        (3, 5, 4, 5, 3),
    ),
    standard=(
        (4, 1, 0, 1, 3),
        (5, 3, 5, 2, 1),
        (1, 2, 7, 7, 4),
        (5, 5, 2, 4, 5),
        (3, 5, 4, 5, 3),
    ),
    srh_intermediate=(
        (4, 1, 0, 1, 3),
        (5, 1, 6, 2, 1),
        (1, 3, 3, 8, 4),
        (5, 6, 3, 5, 5),
        (3, 5, 4, 5, 3),
    ),
    srh=(
        (4, 1, 0, 1, 3),
        (5, 1, 7, 3, 2),
        (1, 3, 4, 0, 5),
        (5, 6, 4, 6, 6),
        (3, 5, 4, 5, 3),
    ),
    indicators=(Fraction(11), Fraction(7), Fraction(4)),
    standard_lowest_id=True,
    critical_counts=(2, 4),
    notes={
        'srh_intermediate': 'the unstable cell after the hub topples is node 14, at (3,4)',
    },
)

_OUTBREAK_GROUND = (
    (1, 2, 1, 4, 6, 2, 3, 6, 2),
    (3, 2, 5, 2, 1, 3, 2, 4, 3),
    (3, 3, 1, 5, 6, 2, 3, 1, 3),
    (6, 1, 5, 3, 2, 5, 2, 3, 4),
    (1, 3, 2, 1, 6, 3, 4, 5, 6),
    (1, 4, 1, 2, 2, 5, 1, 2, 3),
    (4, 1, 3, 4, 5, 6, 2, 5, 3),
    (4, 2, 3, 5, 2, 2, 6, 3, 1),
    (1, 6, 5, 2, 4, 4, 2, 1, 2),
)

CENTRAL_OUTBREAK = WorkedExample(
    name='central-outbreak',
    n=9,
    neighborhood=Neighborhood.MOORE,
    ground=_OUTBREAK_GROUND,
    inflow={32: 2, 33: 1, 41: 5, 42: 2},
    inflow_state=(
        (1, 2, 1, 4, 6, 2, 3, 6, 2),
        (3, 2, 5, 2, 1, 3, 2, 4, 3),
        (3, 3, 1, 5, 6, 2, 3, 1, 3),
        (6, 1, 5, 3, 4, 6, 2, 3, 4),
        (1, 3, 2, 1, 11, 5, 4, 5, 6),
        (1, 4, 1, 2, 2, 5, 1, 2, 3),
        (4, 1, 3, 4, 5, 6, 2, 5, 3),
        (4, 2, 3, 5, 2, 2, 6, 3, 1),
        (1, 6, 5, 2, 4, 4, 2, 1, 2),
    ),
    standard=(
        (1, 2, 1, 4, 6, 2, 3, 6, 2),
        (3, 2, 5, 2, 1, 3, 2, 4, 3),
        (3, 3, 1, 5, 6, 2, 3, 1, 3),
        (6, 1, 5, 3, 4, 6, 2, 3, 4),
        (1, 3, 2, 3, 7, 5, 4, 5, 6),
        (1, 4, 1, 3, 3, 5, 1, 2, 3),
        (4, 1, 3, 4, 5, 6, 2, 5, 3),
        (4, 2, 3, 5, 2, 2, 6, 3, 1),
        (1, 6, 5, 2, 4, 4, 2, 1, 2),
    ),
    srh=(
        (1, 2, 1, 4, 6, 2, 3, 6, 2),
        (3, 2, 5, 2, 1, 3, 2, 4, 3),
        (3, 3, 1, 5, 6, 2, 3, 1, 3),
        (6, 1, 5, 4, 5, 7, 2, 3, 4),
        (1, 3, 2, 2, 3, 6, 4, 5, 6),
        (1, 4, 1, 3, 3, 6, 1, 2, 3),
        (4, 1, 3, 4, 5, 6, 2, 5, 3),
        (4, 2, 3, 5, 2, 2, 6, 3, 1),
        (1, 6, 5, 2, 4, 4, 2, 1, 2),
    ),
    indicators=(Fraction(79, 10), Fraction(59, 10), Fraction(44, 10)),
    standard_lowest_id=True,
    notes={
        'ground': 'cell (5,9) holds 6, the value consistent with a total of 250 and '
        'with every later matrix; one printing of it shows 5',
        'indicator_srh': 'published as 4.5; the published srh matrix gives 44/10',
    },
)

PERIPHERAL_OUTBREAK = WorkedExample(
    name='peripheral-outbreak',
    n=9,
    neighborhood=Neighborhood.MOORE,
    ground=_OUTBREAK_GROUND,
    inflow={8: 5, 9: 2, 17: 2, 18: 1},
    inflow_state=(
        (1, 2, 1, 4, 6, 2, 3, 11, 4),
        (3, 2, 5, 2, 1, 3, 2, 6, 4),
        (3, 3, 1, 5, 6, 2, 3, 1, 3),
        (6, 1, 5, 3, 2, 5, 2, 3, 4),
        (1, 3, 2, 1, 6, 3, 4, 5, 6),
        (1, 4, 1, 2, 2, 5, 1, 2, 3),
        (4, 1, 3, 4, 5, 6, 2, 5, 3),
        (4, 2, 3, 5, 2, 2, 6, 3, 1),
        (1, 6, 5, 2, 4, 4, 2, 1, 2),
    ),
    standard=(
        (1, 2, 1, 4, 6, 2, 5, 7, 4),
        (3, 2, 5, 2, 1, 3, 4, 6, 4),
        (3, 3, 1, 5, 6, 2, 3, 1, 3),
        (6, 1, 5, 3, 2, 5, 2, 3, 4),
        (1, 3, 2, 1, 6, 3, 4, 5, 6),
        (1, 4, 1, 2, 2, 5, 1, 2, 3),
        (4, 1, 3, 4, 5, 6, 2, 5, 3),
        (4, 2, 3, 5, 2, 2, 6, 3, 1),
        (1, 6, 5, 2, 4, 4, 2, 1, 2),
    ),
    srh_intermediate=(
        (1, 2, 1, 4, 6, 2, 4, 3, 5),
        (3, 2, 5, 2, 1, 3, 3, 7, 5),
        (3, 3, 1, 5, 6, 2, 3, 1, 3),
        (6, 1, 5, 3, 2, 5, 2, 3, 4),
        (1, 3, 2, 1, 9, 3, 4, 5, 6),
        (1, 4, 1, 2, 2, 5, 1, 2, 3),
        (4, 1, 3, 4, 5, 6, 2, 5, 3),
        (4, 2, 3, 5, 2, 2, 6, 3, 1),
        (1, 6, 5, 2, 4, 4, 2, 1, 2),
    ),
    srh=(
        (1, 2, 1, 4, 6, 2, 4, 3, 5),
        (3, 2, 5, 2, 1, 3, 3, 7, 5),
        (3, 3, 1, 5, 6, 2, 3, 1, 3),
        (6, 1, 5, 4, 3, 6, 2, 3, 4),
        (1, 3, 2, 2, 1, 4, 4, 5, 6),
        (1, 4, 1, 3, 3, 6, 1, 2, 3),
        (4, 1, 3, 4, 5, 6, 2, 5, 3),
        (4, 2, 3, 5, 2, 2, 6, 3, 1),
        (1, 6, 5, 2, 4, 4, 2, 1, 2),
    ),
    indicators=(Fraction(79, 10), Fraction(59, 10), Fraction(44, 10)),
    standard_lowest_id=True,
)

ALL = (
    SINGLE_OVERFLOW,
    ITERATED_HUB,
    HUB_OVERFLOW,
    SPREAD_INFLOW,
    TWO_TOPPLINGS,
    CENTRAL_OUTBREAK,
    PERIPHERAL_OUTBREAK,
)
