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

"""Per-step reports shared by the toppling and standard workflows."""

from dataclasses import dataclass, field, replace
from typing import Any, Dict, Iterator, List, Optional, Protocol

from sandcare.configuration import Configuration, Perturbation
from sandcare.metrics import CriticalReport, IndicatorValue, critical_points, indicator
from sandcare.network import Network


class Trace(Protocol):
    peak_hub: Optional[int]
    lost: int

    def replay(self, start: Configuration) -> Iterator[Configuration]: ...

    def to_dict(self) -> Dict[str, Any]: ...


@dataclass(frozen=True)
class MassLedger:
    before: int
    inflow: int
    outflow: int
    lost: int
    after: int

    @property
    def balanced(self) -> bool:
        return self.after == self.before + self.inflow - self.outflow - self.lost

    def to_dict(self) -> Dict[str, Any]:
        return {
            'before': self.before,
            'inflow': self.inflow,
            'outflow': self.outflow,
            'lost': self.lost,
            'after': self.after,
            'balanced': self.balanced,
        }


@dataclass(frozen=True)
class CollapseStatus:
    hub_saturated: bool = False
    system_saturated: bool = False
    imbalance_warning: bool = False

    @property
    def flags(self) -> List[str]:
        names = []
        if self.hub_saturated:
            names.append('HubSaturated')

        if self.system_saturated:
            names.append('SystemSaturated')

        if self.imbalance_warning:
            names.append('ImbalanceWarning')

        return names

    def __bool__(self):
        return bool(self.flags)


@dataclass
class StepReport:
    index: int
    strategy: str
    p: int
    hub: Optional[int]
    ground: Configuration
    w: Perturbation
    inflow: Configuration
    toppled: Configuration
    zeta: Perturbation
    final: Configuration
    trace: Any
    indicator_inflow: Optional[IndicatorValue]
    indicator_toppled: Optional[IndicatorValue]
    critical: CriticalReport
    hub_load: Optional[int]
    peak_hub: Optional[int]
    ledger: MassLedger
    # the hub is still at or above its threshold once the cascade is over
    hub_over_threshold: bool = False
    collapse: CollapseStatus = field(default_factory=CollapseStatus)

    def to_dict(self) -> Dict[str, Any]:
        def ind(value):
            if value is None:
                return None

            return {
                'numerator': value.numerator,
                'denominator': value.denominator,
                'decimal': value.decimal(),
            }

        return {
            'index': self.index,
            'strategy': self.strategy,
            'w': list(self.w),
            'inflow': list(self.inflow),
            'toppled': list(self.toppled),
            'zeta': list(self.zeta),
            'final': list(self.final),
            'trace': self.trace.to_dict(),
            'indicator_inflow': ind(self.indicator_inflow),
            'indicator_toppled': ind(self.indicator_toppled),
            'critical': {
                'margin': self.critical.margin,
                'count': self.critical.count,
                'nodes': list(self.critical.nodes),
                'overflow_nodes': list(self.critical.overflow_nodes),
            },
            'hub_load': self.hub_load,
            'peak_hub': self.peak_hub,
            'ledger': self.ledger.to_dict(),
            'hub_over_threshold': self.hub_over_threshold,
            'collapse': self.collapse.flags,
        }


def build_step_report(
    net: Network,
    strategy: str,
    index: int,
    ground: Configuration,
    w: Perturbation,
    inflow: Configuration,
    toppled: Configuration,
    zeta: Perturbation,
    final: Configuration,
    trace: Trace,
    margin: Optional[int] = None,
) -> StepReport:
    hub = net.hub
    measured = w.total > 0
    return StepReport(
        index=index,
        strategy=strategy,
        p=net.p,
        hub=hub,
        ground=ground,
        w=w,
        inflow=inflow,
        toppled=toppled,
        zeta=zeta,
        final=final,
        trace=trace,
        indicator_inflow=indicator(w, inflow) if measured else None,
        indicator_toppled=indicator(w, toppled) if measured else None,
        critical=critical_points(net, toppled, margin),
        hub_load=toppled.at(hub) if hub else None,
        peak_hub=trace.peak_hub,
        ledger=MassLedger(
            before=ground.total,
            inflow=w.total,
            outflow=zeta.total,
            lost=trace.lost,
            after=final.total,
        ),
        hub_over_threshold=bool(hub) and toppled.at(hub) >= net.threshold(hub),
    )


def with_dissipation(report: StepReport, zeta: Perturbation) -> StepReport:
    """The same step with ``zeta`` subtracted after the cascade."""
    from sandcare.sandpile import dissipate

    final = dissipate(report.toppled, zeta)
    return replace(
        report,
        zeta=zeta,
        final=final,
        ledger=replace(report.ledger, outflow=zeta.total, after=final.total),
    )
