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

"""Per-node natural-number vectors: configurations and perturbations."""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Type, TypeVar

from sandcare.errors import LengthMismatchError, SandpileError

V = TypeVar('V', bound='NodeVector')


@dataclass(frozen=True)
class NodeVector:
    values: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.values)
        for i, x in enumerate(values, 1):
            if isinstance(x, bool) or not isinstance(x, int) or x < 0:
                raise SandpileError('entry %d must be a natural number, got %r' % (i, x))

        object.__setattr__(self, 'values', values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def at(self, v: int) -> int:
        return self.values[v - 1]

    @property
    def total(self) -> int:
        return sum(self.values)

    def rows(self, n: int) -> List[List[int]]:
        if n * n != len(self.values):
            raise LengthMismatchError('%d entries do not fill a %dx%d grid' % (len(self.values), n, n))

        return [list(self.values[r * n:(r + 1) * n]) for r in range(n)]

    def support(self) -> Dict[int, int]:
        return {v: x for v, x in enumerate(self.values, 1) if x}

    @classmethod
    def zeros(cls: Type[V], p: int) -> V:
        return cls((0,) * p)

    @classmethod
    def from_rows(cls: Type[V], rows: Sequence[Sequence[int]]) -> V:
        return cls(tuple(x for row in rows for x in row))

    @classmethod
    def from_deltas(cls: Type[V], p: int, deltas: Mapping[int, int]) -> V:
        """Build the vector sum of ``amount * delta_node`` over ``deltas``."""
        values = [0] * p
        for v, amount in deltas.items():
            if not 1 <= v <= p:
                raise LengthMismatchError('node %d is outside 1..%d' % (v, p))

            values[v - 1] += amount

        return cls(tuple(values))

    @classmethod
    def of(cls: Type[V], values: Iterable[int]) -> V:
        return cls(tuple(values))


class Configuration(NodeVector):
    """The height function: patients hosted at every node."""

    @property
    def heights(self) -> Tuple[int, ...]:
        return self.values


class Perturbation(NodeVector):
    """Patients entering (inflow) or leaving (dissipation) every node."""

    @property
    def amounts(self) -> Tuple[int, ...]:
        return self.values


def check_length(p: int, *vectors: NodeVector) -> None:
    for vector in vectors:
        if len(vector) != p:
            raise LengthMismatchError('expected %d entries, got %d' % (p, len(vector)))
