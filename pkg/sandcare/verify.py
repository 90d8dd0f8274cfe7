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


"""Replay the worked examples and compare every published matrix and
indicator value with what the simulator computes."""

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

from sandcare import fixtures, template
from sandcare.configuration import Configuration, Perturbation
from sandcare.engine import InflowSchedule, ScenarioSpec, Strategy, run_scenario
from sandcare.errors import SandcareError
from sandcare.fixtures import WorkedExample
from sandcare.metrics import critical_points, indicator
from sandcare.network import GridSpec, Network, build_grid
from sandcare.sandpile import add_inflow, srh_step, stabilize_open, unstable_nodes
from sandcare.standard import TieBreak, check_admissible, standard_step


@dataclass(frozen=True)
class VerifyRow:
    name: str
    passed: bool
    expected: str
    actual: str
    note: str = ''


@dataclass
class VerifyTable:
    rows: List[VerifyRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def failures(self) -> List[VerifyRow]:
        return [r for r in self.rows if not r.passed]

    def render(self) -> str:
        return template.render(
            'verify.txt', rows=self.rows, passed=len(self.rows) - len(self.failures)
        )


def _text(value) -> str:
    if isinstance(value, Configuration):
        n = int(round(len(value) ** 0.5))
        if n * n == len(value):
            return ' / '.join(' '.join(str(x) for x in row) for row in value.rows(n))

        return ' '.join(str(x) for x in value)

    if isinstance(value, list):
        return '; '.join(value) if value else 'none'

    return str(value)


class _Checker:
    def __init__(self, table: VerifyTable):
        self.table = table

    def check(self, name: str, expected, compute: Callable[[], object], note: str = '') -> None:
        try:
            actual = compute()

        except SandcareError as e:
            logging.debug('check "%s" raised %s' % (name, e))
            self.table.rows.append(
                VerifyRow(name, False, _text(expected), '%s: %s' % (type(e).__name__, e), note)
            )
            return

        self.table.rows.append(
            VerifyRow(name, actual == expected, _text(expected), _text(actual), note)
        )


def _network(example: WorkedExample) -> Network:
    return build_grid(GridSpec(example.n, example.neighborhood))


def _verify_example(example: WorkedExample, checker: _Checker) -> None:
    net = _network(example)
    name = example.name
    z0 = Configuration.from_rows(example.ground)
    w = Perturbation.from_deltas(net.p, example.inflow)
    zbar = add_inflow(z0, w)
    notes = example.notes

    if example.inflow_state is not None:
        checker.check(
            '%s: inflow state' % name,
            Configuration.from_rows(example.inflow_state),
            lambda: zbar,
        )

    if example.open is not None:
        checker.check(
            '%s: open boundaries' % name,
            Configuration.from_rows(example.open),
            lambda: stabilize_open(net, zbar)[0],
        )

    srh = None
    if example.srh is not None:
        srh = srh_step(net, z0, w)
        checker.check(
            '%s: srh outcome' % name,
            Configuration.from_rows(example.srh),
            lambda: srh.toppled,
            notes.get('ground', ''),
        )

    if example.srh_intermediate is not None:
        checker.check(
            '%s: srh intermediate' % name,
            Configuration.from_rows(example.srh_intermediate),
            lambda: srh.trace.intermediate(zbar, example.intermediate_after),
            notes.get('srh_intermediate', ''),
        )

    psi = Configuration.from_rows(example.standard) if example.standard is not None else None
    if psi is not None:
        checker.check(
            '%s: standard outcome admissible' % name,
            [],
            lambda: check_admissible(net, zbar, psi),
        )

        if example.standard_lowest_id:
            checker.check(
                '%s: standard outcome (lowest id)' % name,
                psi,
                lambda: standard_step(net, z0, w, TieBreak.lowest_id()).toppled,
            )

    if example.indicators is not None:
        on_inflow, on_standard, on_srh = example.indicators
        checker.check('%s: indicator on inflow state' % name, on_inflow, lambda: indicator(w, zbar).value)
        if psi is not None:
            checker.check(
                '%s: indicator on standard outcome' % name,
                on_standard,
                lambda: indicator(w, psi).value,
            )

        if srh is not None:
            checker.check(
                '%s: indicator on srh outcome' % name,
                on_srh,
                lambda: indicator(w, srh.toppled).value,
                notes.get('indicator_srh', ''),
            )

    if example.critical_counts is not None and psi is not None and srh is not None:
        on_standard, on_srh = example.critical_counts
        checker.check(
            '%s: critical points of standard outcome' % name,
            on_standard,
            lambda: critical_points(net, psi, 2).count,
        )
        checker.check(
            '%s: critical points of srh outcome' % name,
            on_srh,
            lambda: critical_points(net, srh.toppled, 2).count,
        )


def _verify_iterated_hub(checker: _Checker) -> None:
    example = fixtures.ITERATED_HUB
    net = _network(example)
    w = Perturbation.from_deltas(net.p, example.inflow)
    spec = ScenarioSpec(
        name=example.name,
        network=net,
        ground_state=Configuration.from_rows(example.ground),
        strategy=Strategy.STANDARD,
        steps=4,
        inflow=InflowSchedule(repeat=w),
    )
    checker.check(
        '%s: standard outcome after four steps' % example.name,
        Configuration.from_rows(fixtures.ITERATED_HUB_SETTLED),
        lambda: run_scenario(spec).final,
    )

    def absorbed():
        z = Configuration.from_rows(example.srh)
        count = 0
        while True:
            report = srh_step(net, z, w)
            if report.trace.topplings:
                return count

            count += 1
            z = report.toppled

    checker.check(
        '%s: hub-bound patients absorbed by srh outcome' % example.name,
        fixtures.ITERATED_HUB_ABSORBED,
        absorbed,
    )


def _verify_hub_overflow_headroom(checker: _Checker) -> None:
    example = fixtures.HUB_OVERFLOW
    net = _network(example)
    w = Perturbation.from_deltas(net.p, example.inflow)
    checker.check(
        '%s: srh outcome takes another inflow without overflow' % example.name,
        [],
        lambda: unstable_nodes(net, add_inflow(Configuration.from_rows(example.srh), w)),
    )


def verify_worked_examples(examples: Optional[Sequence[WorkedExample]] = None) -> VerifyTable:
    """Replay ``examples`` (all worked examples by default).

    Failures are reported as table rows, never raised.
    """

    table = VerifyTable()
    checker = _Checker(table)
    for example in fixtures.ALL if examples is None else examples:
        logging.debug('verifying example "%s"' % example.name)
        try:
            _verify_example(example, checker)

        except SandcareError as e:
            table.rows.append(VerifyRow('%s: replay' % example.name, False, 'no error', str(e)))

    if examples is None:
        _verify_iterated_hub(checker)
        _verify_hub_overflow_headroom(checker)

    logging.info('%d of %d checks passed' % (len(table.rows) - len(table.failures), len(table.rows)))
    return table
