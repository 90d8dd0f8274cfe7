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

"""The standard management workflow: only the patients exceeding a node's
capacity are moved, one at a time, to the least crowded adjacent facility."""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Tuple

from sandcare import settings
from sandcare.configuration import Configuration, Perturbation, check_length
from sandcare.errors import NoDestinationError, NonTerminationError, NotUnstableError
from sandcare.network import Network
from sandcare.report import StepReport, build_step_report
from sandcare.sandpile import (
    Picker,
    add_inflow,
    dissipate,
    is_almost_stable,
    require_almost_stable,
    unstable_nodes,
)

_STEP_STRIDE = 1000003


def derive_seed(seed: int, step: int) -> int:
    """A per-step seed, so that every step of a run is reproducible on its own."""
    return seed * _STEP_STRIDE + step


@dataclass(frozen=True)
class TieBreak:
    """How equally crowded destinations are chosen: lowest id, or a seeded
    random choice."""

    seed: Optional[int] = None

    @classmethod
    def lowest_id(cls) -> 'TieBreak':
        return cls()

    @classmethod
    def seeded(cls, seed: int) -> 'TieBreak':
        return cls(seed=seed)

    @property
    def label(self) -> str:
        if self.seed is None:
            return 'lowest_id'

        return 'seed:%d' % self.seed

    def picker(self, step: int = 0) -> Picker:
        if self.seed is None:
            return min

        rng = random.Random(derive_seed(self.seed, step))
        return lambda candidates: rng.choice(list(candidates))


@dataclass(frozen=True)
class Move:
    index: int
    source: int
    target: int
    # every neighbour was full and the patient went to the hub instead
    fallback: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            'index': self.index,
            'source': self.source,
            'target': self.target,
            'fallback': self.fallback,
        }


@dataclass
class MoveTrace:
    hub: Optional[int]
    moves: List[Move] = field(default_factory=list)
    peak_hub: Optional[int] = None
    lost: int = 0

    @property
    def sources(self) -> List[int]:
        return sorted({m.source for m in self.moves})

    def replay(self, start: Configuration) -> Iterator[Configuration]:
        heights = list(start.values)
        for move in self.moves:
            heights[move.source - 1] -= 1
            heights[move.target - 1] += 1
            yield Configuration(tuple(heights))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': 'moves',
            'moves': [m.to_dict() for m in self.moves],
            'peak_hub': self.peak_hub,
        }


class _Redistribution:
    def __init__(self, net: Network, z: Configuration, picker: Picker, cap: Optional[int]):
        check_length(net.p, z)
        self.net = net
        self.picker = picker
        self.cap = settings.MOVE_CAP if cap is None else cap
        self.heights = list(z.values)
        hub = net.hub
        self.trace = MoveTrace(hub=hub, peak_hub=self.heights[hub - 1] if hub else None)

    def redistribute(self, v: int) -> List[Move]:
        net = self.net
        threshold = net.thresholds[v - 1]
        excess = self.heights[v - 1] - (threshold - 1)
        if excess <= 0:
            raise NotUnstableError(
                'node %d holds %d, below its threshold %d' % (v, self.heights[v - 1], threshold)
            )

        moves = []
        for _ in range(excess):
            move = self._move(v)
            if move is None:
                logging.warning(
                    'hub %d keeps %d patients, every neighbour is full'
                    % (v, self.heights[v - 1])
                )
                break

            moves.append(move)

        logging.debug(
            'moved %d patients away from node %d: %s'
            % (len(moves), v, ', '.join(str(m.target) for m in moves))
        )
        return moves

    def _move(self, v: int) -> Optional[Move]:
        trace = self.trace
        if len(trace.moves) >= self.cap:
            raise NonTerminationError('redistribution did not settle within %d moves' % self.cap)

        target, fallback = self._destination(v)
        if target is None:
            return None

        self.heights[v - 1] -= 1
        self.heights[target - 1] += 1
        move = Move(index=len(trace.moves), source=v, target=target, fallback=fallback)
        trace.moves.append(move)

        hub = self.net.hub
        if hub:
            trace.peak_hub = max(trace.peak_hub, self.heights[hub - 1])

        return move

    def room(self, v: int) -> List[int]:
        heights = self.heights
        thresholds = self.net.thresholds
        return [u for u in self.net.adjacency[v - 1] if heights[u - 1] < thresholds[u - 1] - 1]

    def _destination(self, v: int) -> Tuple[Optional[int], bool]:
        net = self.net
        heights = self.heights
        pool = self.room(v)
        if not pool:
            if net.hub is not None and v != net.hub:
                return net.hub, True

            if not net.adjacency[v - 1]:
                raise NoDestinationError('node %d has no neighbour to move patients to' % v)

            if v == net.hub:
                # the hub may stay over its threshold
                return None, False

            pool = list(net.adjacency[v - 1])

        # least crowded by occupancy, which is plain height when thresholds agree
        crowding = {u: Fraction(heights[u - 1], net.thresholds[u - 1]) for u in pool}
        least = min(crowding.values())
        ties = [u for u in pool if crowding[u] == least]
        target = ties[0] if len(ties) == 1 else self.picker(ties)
        return target, False

    def result(self) -> Configuration:
        return Configuration(tuple(self.heights))


def redistribute_node(
    net: Network,
    z: Configuration,
    v: int,
    tiebreak: Optional[TieBreak] = None,
    step: int = 0,
) -> Tuple[Configuration, List[Move]]:
    """Move the excess of node ``v`` away, leaving it one below its threshold.

    The hub stops early, keeping the rest, once every neighbour is full.
    """

    tiebreak = tiebreak or TieBreak.lowest_id()
    net.check_node(v)
    redistribution = _Redistribution(net, z, tiebreak.picker(step), None)
    moves = redistribution.redistribute(v)
    return redistribution.result(), moves


def stabilize_standard(
    net: Network,
    z: Configuration,
    tiebreak: Optional[TieBreak] = None,
    cap: Optional[int] = None,
    step: int = 0,
) -> Tuple[Configuration, MoveTrace]:
    """Redistribute the hub whenever it overflows and a neighbour still has
    room, otherwise the lowest-id overflowing node, until no node other
    than the hub overflows."""

    tiebreak = tiebreak or TieBreak.lowest_id()
    redistribution = _Redistribution(net, z, tiebreak.picker(step), cap)
    heights = redistribution.heights
    hub = net.hub
    while True:
        if (
            hub is not None
            and heights[hub - 1] >= net.thresholds[hub - 1]
            and redistribution.room(hub)
        ):
            redistribution.redistribute(hub)
            continue

        v = next(
            (
                u
                for u in net.nodes
                if u != hub and heights[u - 1] >= net.thresholds[u - 1]
            ),
            None,
        )
        if v is None:
            break

        redistribution.redistribute(v)

    trace = redistribution.trace
    logging.debug('standard redistribution settled after %d moves' % len(trace.moves))
    return redistribution.result(), trace


def standard_step(
    net: Network,
    z0: Configuration,
    w: Perturbation,
    tiebreak: Optional[TieBreak] = None,
    zeta: Optional[Perturbation] = None,
    cap: Optional[int] = None,
    margin: Optional[int] = None,
    index: int = 0,
) -> StepReport:
    require_almost_stable(net, z0)
    check_length(net.p, w)
    zbar = add_inflow(z0, w)
    z1, trace = stabilize_standard(net, zbar, tiebreak, cap, step=index)
    zeta = zeta if zeta is not None else Perturbation.zeros(net.p)
    final = dissipate(z1, zeta)
    return build_step_report(net, 'standard', index, z0, w, zbar, z1, zeta, final, trace, margin)


def _hub_boxed_in(net: Network, z: Configuration) -> bool:
    return all(z.at(u) >= net.threshold(u) - 1 for u in net.neighbors(net.hub))


def check_admissible(net: Network, zbar: Configuration, psi: Configuration) -> List[str]:
    """List the properties a candidate standard-strategy outcome violates.

    An admissible outcome conserves patients, leaves every overflowing node
    exactly one below its threshold (the hub may stay above it once all its
    neighbours are full), only moves patients out of overflowing
    nodes into their neighbours (or the hub) and is almost stable.
    """

    check_length(net.p, zbar, psi)
    violations = []
    if psi.total != zbar.total:
        violations.append('conservation: %d patients before, %d after' % (zbar.total, psi.total))

    sources = unstable_nodes(net, zbar)
    for s in sources:
        if s == net.hub and psi.at(s) >= net.threshold(s) and _hub_boxed_in(net, psi):
            continue

        if psi.at(s) != net.threshold(s) - 1:
            violations.append(
                'excess-only: node %d ends at %d, expected %d'
                % (s, psi.at(s), net.threshold(s) - 1)
            )

    reachable = {u for s in sources for u in net.neighbors(s)}
    if net.hub is not None:
        reachable.add(net.hub)

    for v in net.nodes:
        before, after = zbar.at(v), psi.at(v)
        if after < before and v not in sources:
            violations.append('locality: node %d lost patients without overflowing' % v)

        elif after > before and v not in reachable:
            violations.append('locality: node %d is not adjacent to an overflowing node' % v)

    if not is_almost_stable(net, psi):
        violations.append('almost-stable: nodes %s overflow' % unstable_nodes(net, psi))

    return violations
