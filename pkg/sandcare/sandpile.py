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

"""Sandpile dynamics: stability, toppling and cascade stabilization.

Two boundary policies are supported. With open boundaries the particles a
toppling sends past the edge of the network are lost. With redistribution to
the hub (SRH) they are credited to the hub, which topples at most once per
cascade, at the earliest moment it is unstable, and absorbs afterwards.
"""

import collections
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from sandcare import settings
from sandcare.configuration import Configuration, Perturbation, check_length
from sandcare.errors import (
    NoHubError,
    NonTerminationError,
    NotAlmostStableError,
    NotUnstableError,
    OversubtractionError,
)
from sandcare.network import Network
from sandcare.report import StepReport, build_step_report

Picker = Callable[[Sequence[int]], int]


class BoundaryPolicy(Enum):
    OPEN = 'open'
    REDISTRIBUTE_TO_HUB = 'srh'


@dataclass(frozen=True)
class ToppleEvent:
    index: int
    node: int
    removed: int
    # (neighbour, particles received) in ascending neighbour order
    deliveries: Tuple[Tuple[int, int], ...]
    to_hub: int
    lost: int

    def apply(self, heights: List[int], hub: Optional[int]) -> None:
        heights[self.node - 1] -= self.removed
        for u, amount in self.deliveries:
            heights[u - 1] += amount

        if self.to_hub:
            heights[hub - 1] += self.to_hub

    def to_dict(self) -> Dict[str, Any]:
        return {
            'index': self.index,
            'node': self.node,
            'removed': self.removed,
            'deliveries': [list(d) for d in self.deliveries],
            'to_hub': self.to_hub,
            'lost': self.lost,
        }


@dataclass
class CascadeTrace:
    """Ordered audit record of the topplings of one cascade."""

    policy: BoundaryPolicy
    hub: Optional[int]
    events: List[ToppleEvent] = field(default_factory=list)
    peak_hub: Optional[int] = None
    hub_toppled: bool = False

    @property
    def topplings(self) -> int:
        return len(self.events)

    @property
    def lost(self) -> int:
        return sum(e.lost for e in self.events)

    @property
    def hub_receipts(self) -> int:
        return sum(e.to_hub for e in self.events)

    def topple_counts(self) -> Dict[int, int]:
        return dict(collections.Counter(e.node for e in self.events))

    def replay(self, start: Configuration) -> Iterator[Configuration]:
        """Yield the configuration reached after each event, in order."""
        heights = list(start.values)
        for event in self.events:
            event.apply(heights, self.hub)
            yield Configuration(tuple(heights))

    def intermediate(self, start: Configuration, k: int) -> Configuration:
        """The configuration after the first ``k`` events."""
        heights = list(start.values)
        for event in self.events[:k]:
            event.apply(heights, self.hub)

        return Configuration(tuple(heights))

    def boundary_topplings(self) -> List[ToppleEvent]:
        return [e for e in self.events if e.to_hub or e.lost]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': 'cascade',
            'policy': self.policy.value,
            'topplings': self.topplings,
            'lost': self.lost,
            'hub_receipts': self.hub_receipts,
            'peak_hub': self.peak_hub,
            'events': [e.to_dict() for e in self.events],
        }


def add_inflow(z: Configuration, w: Perturbation) -> Configuration:
    check_length(len(z), w)
    return Configuration(tuple(a + b for a, b in zip(z, w)))


def unstable_nodes(net: Network, z: Configuration) -> List[int]:
    check_length(net.p, z)
    return [v for v, (h, t) in enumerate(zip(z, net.thresholds), 1) if h >= t]


def is_almost_stable(net: Network, z: Configuration) -> bool:
    return all(v == net.hub for v in unstable_nodes(net, z))


def dissipate(z: Configuration, zeta: Perturbation) -> Configuration:
    check_length(len(z), zeta)
    for v, (h, d) in enumerate(zip(z, zeta), 1):
        if d > h:
            raise OversubtractionError(v, d, h)

    return Configuration(tuple(h - d for h, d in zip(z, zeta)))


def _topple(
    net: Network, heights: List[int], v: int, policy: BoundaryPolicy, index: int
) -> ToppleEvent:
    threshold = net.thresholds[v - 1]
    off = net.off_slots[v - 1]
    around = net.adjacency[v - 1]

    # round-robin over ascending neighbours: one each when share == degree
    share = threshold - off
    deliveries = ()
    if around:
        base, extra = divmod(share, len(around))
        deliveries = tuple(
            (u, base + (1 if i < extra else 0))
            for i, u in enumerate(around)
            if base or i < extra
        )

    to_hub = off if policy is BoundaryPolicy.REDISTRIBUTE_TO_HUB else 0
    event = ToppleEvent(
        index=index,
        node=v,
        removed=threshold,
        deliveries=deliveries,
        to_hub=to_hub,
        lost=off - to_hub,
    )
    event.apply(heights, net.hub)
    return event


def topple_once(
    net: Network, z: Configuration, v: int, policy: BoundaryPolicy
) -> Tuple[Configuration, int, int]:
    """Topple ``v`` once; returns the new configuration, the particles
    routed to the hub and the particles lost."""

    check_length(net.p, z)
    if z.at(net.check_node(v)) < net.threshold(v):
        raise NotUnstableError(
            'node %d holds %d, below its threshold %d' % (v, z.at(v), net.threshold(v))
        )

    if policy is BoundaryPolicy.REDISTRIBUTE_TO_HUB and net.hub is None:
        raise NoHubError('redistribution to the hub needs a network with a hub')

    heights = list(z.values)
    event = _topple(net, heights, v, policy, 0)
    return Configuration(tuple(heights)), event.to_hub, event.lost


class _Cascade:
    def __init__(self, net: Network, z: Configuration, policy: BoundaryPolicy, cap: Optional[int]):
        check_length(net.p, z)
        self.net = net
        self.policy = policy
        self.cap = settings.TOPPLE_CAP if cap is None else cap
        self.heights = list(z.values)
        self.unstable = set(unstable_nodes(net, z))
        hub = net.hub
        self.trace = CascadeTrace(
            policy=policy, hub=hub, peak_hub=self.heights[hub - 1] if hub else None
        )

    def topple(self, v: int) -> None:
        net = self.net
        trace = self.trace
        if len(trace.events) >= self.cap:
            raise NonTerminationError(
                'cascade did not settle within %d topplings' % self.cap
            )

        event = _topple(net, self.heights, v, self.policy, len(trace.events))
        trace.events.append(event)
        logging.debug(
            'toppled node %d: %d to neighbours, %d to hub, %d lost'
            % (v, event.removed - event.to_hub - event.lost, event.to_hub, event.lost)
        )

        touched = [v] + [u for u, _ in event.deliveries]
        hub = net.hub
        if hub:
            touched.append(hub)
            trace.peak_hub = max(trace.peak_hub, self.heights[hub - 1])

        for u in touched:
            if self.heights[u - 1] >= net.thresholds[u - 1]:
                self.unstable.add(u)

            else:
                self.unstable.discard(u)

    def result(self) -> Configuration:
        return Configuration(tuple(self.heights))


def stabilize_open(
    net: Network,
    z: Configuration,
    cap: Optional[int] = None,
    pick: Optional[Picker] = None,
) -> Tuple[Configuration, CascadeTrace]:
    """Topple until every node is stable, losing the boundary overflow.

    By default the lowest-id unstable node topples first; ``pick`` receives
    the sorted unstable nodes and chooses another order. The result does not
    depend on the order.
    """

    cascade = _Cascade(net, z, BoundaryPolicy.OPEN, cap)
    while cascade.unstable:
        if pick is None:
            v = min(cascade.unstable)

        else:
            v = pick(sorted(cascade.unstable))

        cascade.topple(v)

    trace = cascade.trace
    logging.debug('open cascade settled after %d topplings, %d lost' % (trace.topplings, trace.lost))
    return cascade.result(), trace


def stabilize_srh(
    net: Network, z: Configuration, cap: Optional[int] = None
) -> Tuple[Configuration, CascadeTrace]:
    hub = net.hub
    if hub is None:
        raise NoHubError('redistribution to the hub needs a network with a hub')

    cascade = _Cascade(net, z, BoundaryPolicy.REDISTRIBUTE_TO_HUB, cap)
    trace = cascade.trace
    while True:
        if not trace.hub_toppled and hub in cascade.unstable:
            cascade.topple(hub)
            trace.hub_toppled = True
            continue

        v = min((u for u in cascade.unstable if u != hub), default=None)
        if v is None:
            break

        cascade.topple(v)

    result = cascade.result()
    if result.at(hub) >= net.threshold(hub):
        logging.warning(
            'hub %d left at %d, over its threshold %d' % (hub, result.at(hub), net.threshold(hub))
        )

    logging.debug('srh cascade settled after %d topplings' % trace.topplings)
    return result, trace


def require_almost_stable(net: Network, z0: Configuration) -> None:
    check_length(net.p, z0)
    if not is_almost_stable(net, z0):
        raise NotAlmostStableError(
            'ground state is unstable at nodes %s'
            % [v for v in unstable_nodes(net, z0) if v != net.hub]
        )


def srh_step(
    net: Network,
    z0: Configuration,
    w: Perturbation,
    zeta: Optional[Perturbation] = None,
    cap: Optional[int] = None,
    margin: Optional[int] = None,
    index: int = 0,
) -> StepReport:
    """One workflow iteration: inflow, SRH cascade, optional dissipation."""

    require_almost_stable(net, z0)
    check_length(net.p, w)
    zbar = add_inflow(z0, w)
    z1, trace = stabilize_srh(net, zbar, cap)
    zeta = zeta if zeta is not None else Perturbation.zeros(net.p)
    final = dissipate(z1, zeta)
    return build_step_report(net, 'srh', index, z0, w, zbar, z1, zeta, final, trace, margin)


def open_step(
    net: Network,
    z0: Configuration,
    w: Perturbation,
    zeta: Optional[Perturbation] = None,
    cap: Optional[int] = None,
    margin: Optional[int] = None,
    index: int = 0,
) -> StepReport:
    """One workflow iteration of the plain sandpile with open boundaries."""

    require_almost_stable(net, z0)
    check_length(net.p, w)
    zbar = add_inflow(z0, w)
    z1, trace = stabilize_open(net, zbar, cap)
    zeta = zeta if zeta is not None else Perturbation.zeros(net.p)
    final = dissipate(z1, zeta)
    return build_step_report(net, 'asm_open', index, z0, w, zbar, z1, zeta, final, trace, margin)
