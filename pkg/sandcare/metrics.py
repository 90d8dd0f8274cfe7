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

"""Allocation quality: the inflow-weighted indicator, critical points and
strategy comparison."""

import decimal
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Dict, List, Optional, Tuple

from sandcare import settings
from sandcare.configuration import Configuration, Perturbation, check_length
from sandcare.errors import MismatchedScenarioError, ZeroInflowError
from sandcare.network import Network

if TYPE_CHECKING:
    from sandcare.report import StepReport

CSV_COLUMNS = (
    'scenario',
    'strategy',
    'F_num',
    'F_den',
    'F_decimal',
    'critical_count',
    'hub_load',
    'total_mass',
)


@dataclass(frozen=True)
class IndicatorValue:
    """The exact ratio (w . z) / sum(w); lower is better."""

    numerator: int
    denominator: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def decimal(self, places: int = 1) -> str:
        exponent = decimal.Decimal(1).scaleb(-places)
        ratio = decimal.Decimal(self.numerator) / decimal.Decimal(self.denominator)
        return str(ratio.quantize(exponent, rounding=decimal.ROUND_HALF_UP))

    def __str__(self):
        return self.decimal()


def indicator(w: Perturbation, z: Configuration) -> IndicatorValue:
    check_length(len(w), z)
    denominator = w.total
    if denominator == 0:
        raise ZeroInflowError('the indicator is undefined for an empty inflow')

    numerator = sum(a * b for a, b in zip(w, z))
    return IndicatorValue(numerator, denominator)


@dataclass(frozen=True)
class CriticalReport:
    margin: int
    nodes: Tuple[int, ...]
    overflow_nodes: Tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.nodes)


def critical_points(net: Network, z: Configuration, margin: Optional[int] = None) -> CriticalReport:
    if margin is None:
        margin = settings.CRITICAL_MARGIN

    check_length(net.p, z)
    nodes = []
    overflow = []
    for v, (height, threshold) in enumerate(zip(z, net.thresholds), 1):
        if height >= threshold:
            overflow.append(v)

        elif height >= threshold - margin:
            nodes.append(v)

    return CriticalReport(margin=margin, nodes=tuple(nodes), overflow_nodes=tuple(overflow))


@dataclass(frozen=True)
class OccupancySummary:
    total: int
    max: int
    mean_fraction: Fraction
    fractions: Tuple[Fraction, ...]


def occupancy_summary(net: Network, z: Configuration) -> OccupancySummary:
    check_length(net.p, z)
    fractions = tuple(Fraction(h, t) for h, t in zip(z, net.thresholds))
    return OccupancySummary(
        total=z.total,
        max=max(z.values),
        mean_fraction=sum(fractions, Fraction(0)) / net.p,
        fractions=fractions,
    )


@dataclass(frozen=True)
class StrategyRow:
    strategy: str
    indicator: Optional[IndicatorValue]
    critical_count: int
    hub_load: Optional[int]
    total_mass: int

    def csv_row(self, scenario: str) -> Dict[str, object]:
        ind = self.indicator
        return {
            'scenario': scenario,
            'strategy': self.strategy,
            'F_num': ind.numerator if ind else '',
            'F_den': ind.denominator if ind else '',
            'F_decimal': ind.decimal() if ind else '',
            'critical_count': self.critical_count,
            'hub_load': '' if self.hub_load is None else self.hub_load,
            'total_mass': self.total_mass,
        }


@dataclass(frozen=True)
class ComparisonReport:
    scenario: str
    rows: Tuple[StrategyRow, ...]
    # second row minus first row
    deltas: Dict[str, object]
    preferred: Optional[str]

    def csv_rows(self) -> List[Dict[str, object]]:
        return [row.csv_row(self.scenario) for row in self.rows]


def strategy_row(report: 'StepReport') -> StrategyRow:
    return StrategyRow(
        strategy=report.strategy,
        indicator=report.indicator_toppled,
        critical_count=report.critical.count,
        hub_load=report.hub_load,
        total_mass=report.toppled.total,
    )


def compare(
    report_a: 'StepReport', report_b: 'StepReport', scenario: str = ''
) -> ComparisonReport:
    """Tabulate two strategies run on the same network, ground state and inflow.

    The strategy with the smaller indicator is preferred; ties prefer none.
    """

    if (
        report_a.p != report_b.p
        or report_a.hub != report_b.hub
        or report_a.ground != report_b.ground
        or report_a.w != report_b.w
    ):
        raise MismatchedScenarioError(
            'step reports of "%s" and "%s" do not share network, ground state and inflow'
            % (report_a.strategy, report_b.strategy)
        )

    a, b = strategy_row(report_a), strategy_row(report_b)

    def delta(x, y):
        if x is None or y is None:
            return None

        return y - x

    deltas = {
        'indicator': delta(a.indicator and a.indicator.value, b.indicator and b.indicator.value),
        'critical_count': b.critical_count - a.critical_count,
        'hub_load': delta(a.hub_load, b.hub_load),
        'total_mass': b.total_mass - a.total_mass,
    }

    preferred = None
    if a.indicator is not None and b.indicator is not None:
        if a.indicator.value < b.indicator.value:
            preferred = a.strategy

        elif b.indicator.value < a.indicator.value:
            preferred = b.strategy

    logging.debug(
        'compared %s (F=%s) with %s (F=%s): preferred %s'
        % (a.strategy, a.indicator, b.strategy, b.indicator, preferred)
    )

    return ComparisonReport(scenario=scenario, rows=(a, b), deltas=deltas, preferred=preferred)
