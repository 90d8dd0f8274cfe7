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

"""Hospital networks: general rooted graphs and square Cartesian grids.

Nodes are numbered 1..p. Grid cells are numbered row by row, so that the
cell at (row, col) of an n x n grid is node (row - 1) * n + col.
"""

import collections
import logging
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple

from sandcare.errors import (
    DisconnectedError,
    DuplicateEdgeError,
    EvenSideWithHubError,
    NetworkError,
    OutOfRangeError,
    SelfLoopError,
    ThresholdBelowDegreeError,
    UnknownNodeError,
)

_VON_NEUMANN_OFFSETS = ((-1, 0), (0, 1), (1, 0), (0, -1))
_MOORE_OFFSETS = (
    (-1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
    (1, 0),
    (1, -1),
    (0, -1),
    (-1, -1),
)


class Neighborhood(Enum):
    """Adjacency schemes of a Cartesian grid."""

    VON_NEUMANN = 'von_neumann'
    MOORE = 'moore'

    @property
    def offsets(self) -> Tuple[Tuple[int, int], ...]:
        if self is Neighborhood.VON_NEUMANN:
            return _VON_NEUMANN_OFFSETS

        return _MOORE_OFFSETS

    @property
    def size(self) -> int:
        return len(self.offsets)


@dataclass(frozen=True)
class GridSpec:
    n: int
    neighborhood: Neighborhood = Neighborhood.MOORE
    # None places the hub at the centre cell whenever n is odd
    with_hub: Optional[bool] = None

    @property
    def p(self) -> int:
        return self.n * self.n

    def has_hub(self) -> bool:
        if self.with_hub is None:
            return self.n % 2 == 1

        return self.with_hub


@dataclass(frozen=True)
class Network:
    """An immutable, validated hospital network.

    Per-node tuples are indexed by ``node - 1``. ``off_slots`` counts the
    particles of a toppling that leave the network (or are rerouted to the
    hub) instead of reaching an in-network neighbour.
    """

    p: int
    edges: FrozenSet[Tuple[int, int]]
    hub: Optional[int]
    thresholds: Tuple[int, ...]
    adjacency: Tuple[Tuple[int, ...], ...]
    off_slots: Tuple[int, ...]
    grid: Optional[GridSpec] = None

    @property
    def nodes(self) -> range:
        return range(1, self.p + 1)

    @property
    def is_grid(self) -> bool:
        return self.grid is not None

    @property
    def stable_capacity(self) -> int:
        """The largest total load any stable configuration can hold."""
        return sum(t - 1 for t in self.thresholds)

    def check_node(self, v: int) -> int:
        if not isinstance(v, int) or not 1 <= v <= self.p:
            raise UnknownNodeError('unknown node %r (network has %d nodes)' % (v, self.p))

        return v

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[self.check_node(v) - 1]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def threshold(self, v: int) -> int:
        return self.thresholds[self.check_node(v) - 1]

    def off_slots_of(self, v: int) -> int:
        return self.off_slots[self.check_node(v) - 1]

    def position(self, v: int) -> Tuple[int, int]:
        if self.grid is None:
            raise NetworkError('network is not a grid')

        return position_of(self.grid, self.check_node(v))


def index_of(spec: GridSpec, row: int, col: int) -> int:
    n = spec.n
    if not (1 <= row <= n and 1 <= col <= n):
        raise OutOfRangeError('cell (%s, %s) is outside the %dx%d grid' % (row, col, n, n))

    return (row - 1) * n + col


def position_of(spec: GridSpec, v: int) -> Tuple[int, int]:
    n = spec.n
    if not 1 <= v <= n * n:
        raise OutOfRangeError('node %s is outside the %dx%d grid' % (v, n, n))

    row, col = divmod(v - 1, n)
    return row + 1, col + 1


def build_grid(spec: GridSpec) -> Network:
    n = spec.n
    if n < 1:
        raise OutOfRangeError('grid side must be at least 1, got %s' % n)

    if spec.with_hub and n % 2 == 0:
        raise EvenSideWithHubError('a %dx%d grid has no centre cell for the hub' % (n, n))

    nominal = spec.neighborhood.size
    adjacency = []
    edges = set()
    for v in range(1, n * n + 1):
        row, col = position_of(spec, v)
        around = []
        for dr, dc in spec.neighborhood.offsets:
            r, c = row + dr, col + dc
            if 1 <= r <= n and 1 <= c <= n:
                u = index_of(spec, r, c)
                around.append(u)
                edges.add((min(u, v), max(u, v)))

        adjacency.append(tuple(sorted(around)))

    hub = (n * n + 1) // 2 if spec.has_hub() else None

    logging.debug(
        'built %dx%d %s grid, hub %s' % (n, n, spec.neighborhood.value, hub)
    )

    return Network(
        p=n * n,
        edges=frozenset(edges),
        hub=hub,
        thresholds=(nominal,) * (n * n),
        adjacency=tuple(adjacency),
        off_slots=tuple(nominal - len(a) for a in adjacency),
        grid=spec,
    )


def build_graph(
    p: int,
    edges: Iterable[Sequence[int]],
    hub: Optional[int] = None,
    thresholds: Optional[Sequence[int]] = None,
    off_slots: Optional[Sequence[int]] = None,
) -> Network:
    """Validate a finite simple undirected rooted graph.

    Thresholds default to the node degrees. Without ``off_slots`` a node whose
    threshold exceeds its degree spreads all of its particles round-robin
    over its neighbours; a node with no neighbour has every slot off-network.
    """

    if p < 1:
        raise NetworkError('a network needs at least one node')

    def check(v):
        if not isinstance(v, int) or not 1 <= v <= p:
            raise UnknownNodeError('edge endpoint %r is not a node of 1..%d' % (v, p))

        return v

    pairs = set()
    around = [set() for _ in range(p)]
    for edge in edges:
        if len(edge) != 2:
            raise NetworkError('an edge joins exactly two nodes, got %r' % (edge,))

        u, v = check(edge[0]), check(edge[1])
        if u == v:
            raise SelfLoopError('node %d is joined to itself' % u)

        pair = (min(u, v), max(u, v))
        if pair in pairs:
            raise DuplicateEdgeError('edge %d-%d is listed twice' % pair)

        pairs.add(pair)
        around[u - 1].add(v)
        around[v - 1].add(u)

    if hub is not None:
        check(hub)

    adjacency = tuple(tuple(sorted(a)) for a in around)
    _check_connected(p, adjacency)

    degrees = [len(a) for a in adjacency]
    if thresholds is None:
        thresholds = [max(d, 1) for d in degrees]

    if len(thresholds) != p:
        raise NetworkError('expected %d thresholds, got %d' % (p, len(thresholds)))

    for v, (t, d) in enumerate(zip(thresholds, degrees), 1):
        if t < 1 or t < d:
            raise ThresholdBelowDegreeError(
                'threshold %d of node %d is below its degree %d' % (t, v, d)
            )

    if off_slots is None:
        off_slots = [0 if d else t for t, d in zip(thresholds, degrees)]

    if len(off_slots) != p:
        raise NetworkError('expected %d off-network slot counts, got %d' % (p, len(off_slots)))

    for v, (o, t, d) in enumerate(zip(off_slots, thresholds, degrees), 1):
        if o < 0 or (d and t - o < d) or (not d and o != t):
            raise NetworkError(
                'node %d cannot have %d off-network slots with threshold %d and degree %d'
                % (v, o, t, d)
            )

    return Network(
        p=p,
        edges=frozenset(pairs),
        hub=hub,
        thresholds=tuple(thresholds),
        adjacency=adjacency,
        off_slots=tuple(off_slots),
    )


def neighbors(net: Network, v: int) -> Tuple[int, ...]:
    return net.neighbors(v)


def degree(net: Network, v: int) -> int:
    return net.degree(v)


def _check_connected(p: int, adjacency: Sequence[Sequence[int]]) -> None:
    seen = {1}
    queue = collections.deque([1])
    while queue:
        v = queue.popleft()
        for u in adjacency[v - 1]:
            if u not in seen:
                seen.add(u)
                queue.append(u)

    if len(seen) != p:
        missing = min(set(range(1, p + 1)) - seen)
        raise DisconnectedError('node %d cannot be reached from node 1' % missing)
