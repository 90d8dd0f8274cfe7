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

"""Multi-step scenario execution: inflow schedules, dissipation, the
iteration loop, mass bookkeeping and collapse detection."""

import collections
import logging
import random
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from sandcare.configuration import Configuration, Perturbation, check_length
from sandcare.errors import (
    BudgetInfeasibleError,
    EngineError,
    NonTerminationError,
    OversubtractionError,
    ScheduleExhaustedError,
    SystemSaturatedError,
)
from sandcare.network import Network
from sandcare.report import CollapseStatus, StepReport, with_dissipation
from sandcare.sandpile import add_inflow, open_step, srh_step
from sandcare.standard import TieBreak, derive_seed, standard_step

__all__ = (
    'CollapseStatus',
    'DissipationKind',
    'DissipationPolicy',
    'InflowGenerator',
    'InflowSchedule',
    'RunReport',
    'ScenarioSpec',
    'StepReport',
    'Strategy',
    'detect_collapse',
    'generate_dissipation',
    'run_scenario',
    'run_step',
)


class Strategy(Enum):
    SRH = 'srh'
    STANDARD = 'standard'
    ASM_OPEN = 'asm_open'


@dataclass(frozen=True)
class InflowGenerator:
    """Draws ``per_step`` new patients per step over ``sites`` (all nodes when
    empty), optionally weighted."""

    per_step: int
    seed: int = 0
    sites: Tuple[int, ...] = ()
    weights: Tuple[int, ...] = ()

    def draw(self, p: int, step: int) -> Perturbation:
        if self.weights and not sum(self.weights):
            raise EngineError('inflow generator weights are all zero')

        rng = random.Random(derive_seed(self.seed, step))
        sites = list(self.sites) or list(range(1, p + 1))
        picks = rng.choices(sites, weights=list(self.weights) or None, k=self.per_step)
        return Perturbation.from_deltas(p, collections.Counter(picks))


@dataclass(frozen=True)
class InflowSchedule:
    """Exactly one of ``explicit``, ``repeat`` or ``generator`` is set; an
    empty schedule brings no patients."""

    explicit: Tuple[Perturbation, ...] = ()
    repeat: Optional[Perturbation] = None
    generator: Optional[InflowGenerator] = None

    @property
    def kind(self) -> str:
        if self.generator is not None:
            return 'generator'

        if self.repeat is not None:
            return 'repeat'

        return 'explicit'

    def perturbation(self, p: int, step: int) -> Perturbation:
        if self.generator is not None:
            return self.generator.draw(p, step)

        if self.repeat is not None:
            return self.repeat

        if step >= len(self.explicit):
            raise ScheduleExhaustedError(
                'the inflow schedule has no entry for step %d' % (step + 1)
            )

        return self.explicit[step]


class DissipationKind(Enum):
    NONE = 'none'
    EXPLICIT = 'explicit'
    RANDOM = 'random'


@dataclass(frozen=True)
class DissipationPolicy:
    kind: DissipationKind = DissipationKind.NONE
    schedule: Tuple[Perturbation, ...] = ()
    # patients removed per step by the random policy
    budget: int = 0
    seed: int = 0

    @property
    def active(self) -> bool:
        return self.kind is not DissipationKind.NONE


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    network: Network
    ground_state: Configuration
    strategy: Strategy = Strategy.SRH
    steps: int = 1
    inflow: InflowSchedule = field(default_factory=InflowSchedule)
    dissipation: DissipationPolicy = field(default_factory=DissipationPolicy)
    tiebreak: TieBreak = field(default_factory=TieBreak)
    topple_cap: Optional[int] = None
    move_cap: Optional[int] = None
    margin: Optional[int] = None
    output: Dict[str, str] = field(default_factory=dict, compare=False)

    def with_strategy(self, strategy: Strategy) -> 'ScenarioSpec':
        return replace(self, strategy=strategy)

    def with_seed(self, seed: int) -> 'ScenarioSpec':
        """The same scenario with every random source reseeded."""
        inflow = self.inflow
        if inflow.generator is not None:
            inflow = replace(inflow, generator=replace(inflow.generator, seed=seed))

        dissipation = self.dissipation
        if dissipation.kind is DissipationKind.RANDOM:
            dissipation = replace(dissipation, seed=seed)

        return replace(
            self, inflow=inflow, dissipation=dissipation, tiebreak=TieBreak.seeded(seed)
        )


@dataclass
class RunReport:
    scenario: str
    strategy: str
    initial: Configuration
    steps: List[StepReport] = field(default_factory=list)
    final: Optional[Configuration] = None
    cumulative_inflow: int = 0
    cumulative_outflow: int = 0
    cumulative_lost: int = 0
    collapse_events: List[Tuple[int, CollapseStatus]] = field(default_factory=list)

    @property
    def balanced(self) -> bool:
        """Whether as many patients left through dissipation as arrived."""
        return self.cumulative_inflow == self.cumulative_outflow

    @property
    def ledger_closed(self) -> bool:
        final = self.final if self.final is not None else self.initial
        return final.total == (
            self.initial.total
            + self.cumulative_inflow
            - self.cumulative_outflow
            - self.cumulative_lost
        )

    def to_dict(self) -> Dict[str, Any]:
        final = self.final if self.final is not None else self.initial
        return {
            'scenario': self.scenario,
            'strategy': self.strategy,
            'initial': list(self.initial),
            'final': list(final),
            'cumulative_inflow': self.cumulative_inflow,
            'cumulative_outflow': self.cumulative_outflow,
            'cumulative_lost': self.cumulative_lost,
            'balanced': self.balanced,
            'ledger_closed': self.ledger_closed,
            'collapse_events': [
                {'step': step, 'flags': status.flags} for step, status in self.collapse_events
            ],
            'steps': [s.to_dict() for s in self.steps],
        }


def generate_dissipation(
    policy: DissipationPolicy, z1: Configuration, step: int, seed: Optional[int] = None
) -> Perturbation:
    """The patients leaving the network after the cascade of ``step``."""

    p = len(z1)
    if policy.kind is DissipationKind.NONE:
        return Perturbation.zeros(p)

    if policy.kind is DissipationKind.EXPLICIT:
        if step >= len(policy.schedule):
            raise ScheduleExhaustedError(
                'the dissipation schedule has no entry for step %d' % (step + 1)
            )

        zeta = policy.schedule[step]
        check_length(p, zeta)
        for v, (d, h) in enumerate(zip(zeta, z1), 1):
            if d > h:
                raise OversubtractionError(v, d, h)

        return zeta

    if policy.budget > z1.total:
        raise BudgetInfeasibleError(
            'cannot remove %d patients from a network holding %d' % (policy.budget, z1.total)
        )

    rng = random.Random(derive_seed(policy.seed if seed is None else seed, step))
    remaining = list(z1.values)
    removed = [0] * p
    for _ in range(policy.budget):
        occupied = [i for i, h in enumerate(remaining) if h]
        i = rng.choice(occupied)
        remaining[i] -= 1
        removed[i] += 1

    return Perturbation(tuple(removed))


def detect_collapse(
    net: Network,
    z: Configuration,
    running_inflow: int,
    running_outflow: int,
    dissipating: bool = False,
    peak_hub: Optional[int] = None,
) -> CollapseStatus:
    hub = net.hub
    hub_saturated = False
    if hub is not None:
        threshold = net.threshold(hub)
        hub_saturated = z.at(hub) >= threshold or (
            peak_hub is not None and peak_hub >= threshold
        )

    return CollapseStatus(
        hub_saturated=hub_saturated,
        system_saturated=z.total > net.stable_capacity,
        imbalance_warning=dissipating and running_inflow > running_outflow,
    )


def run_step(spec: ScenarioSpec, z0: Configuration, index: int) -> StepReport:
    net = spec.network
    w = spec.inflow.perturbation(net.p, index)
    strategy = spec.strategy
    try:
        if strategy is Strategy.SRH:
            report = srh_step(net, z0, w, cap=spec.topple_cap, margin=spec.margin, index=index)

        elif strategy is Strategy.STANDARD:
            report = standard_step(
                net,
                z0,
                w,
                spec.tiebreak,
                cap=spec.move_cap,
                margin=spec.margin,
                index=index,
            )

        else:
            report = open_step(net, z0, w, cap=spec.topple_cap, margin=spec.margin, index=index)

    except NonTerminationError as e:
        load = add_inflow(z0, w).total
        if strategy is not Strategy.SRH and load > net.stable_capacity:
            raise SystemSaturatedError(
                'step %d: %d patients exceed the total capability %d'
                % (index + 1, load, net.stable_capacity)
            ) from e

        raise

    if spec.dissipation.active:
        zeta = generate_dissipation(spec.dissipation, report.toppled, index)
        report = with_dissipation(report, zeta)

    return report


def run_scenario(spec: ScenarioSpec) -> RunReport:
    net = spec.network
    check_length(net.p, spec.ground_state)
    logging.info(
        'running scenario "%s": %d %s steps on %d nodes'
        % (spec.name, spec.steps, spec.strategy.value, net.p)
    )

    run = RunReport(scenario=spec.name, strategy=spec.strategy.value, initial=spec.ground_state)
    z = spec.ground_state
    for index in range(spec.steps):
        report = run_step(spec, z, index)
        run.cumulative_inflow += report.ledger.inflow
        run.cumulative_outflow += report.ledger.outflow
        run.cumulative_lost += report.ledger.lost

        status = detect_collapse(
            net,
            report.final,
            run.cumulative_inflow,
            run.cumulative_outflow,
            dissipating=spec.dissipation.active,
            peak_hub=report.peak_hub if spec.strategy is Strategy.STANDARD else None,
        )
        report.collapse = status
        if status:
            run.collapse_events.append((index, status))
            logging.warning(
                'scenario "%s", step %d: %s' % (spec.name, index + 1, ', '.join(status.flags))
            )

        logging.debug(
            'step %d: inflow %d, outflow %d, hub load %s'
            % (index + 1, report.ledger.inflow, report.ledger.outflow, report.hub_load)
        )

        run.steps.append(report)
        z = report.final

    run.final = z
    if not run.ledger_closed:
        logging.error('scenario "%s": patient ledger does not balance' % spec.name)

    if spec.dissipation.active and not run.balanced:
        logging.info(
            'scenario "%s": inflow %d and outflow %d are not balanced'
            % (spec.name, run.cumulative_inflow, run.cumulative_outflow)
        )

    return run
