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


import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

from tornado import gen
from tornado.ioloop import IOLoop

from sandcare import settings
from sandcare.engine import RunReport, ScenarioSpec, run_scenario
from sandcare.errors import EngineError, SandcareError


@dataclass
class BatchResult:
    reports: Dict[str, RunReport] = field(default_factory=dict)
    errors: Dict[str, SandcareError] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.errors


def _run_one(spec: ScenarioSpec):
    try:
        return run_scenario(spec)

    except SandcareError as e:
        logging.error('scenario "%s" failed: %s' % (spec.name, e))
        return e


async def run_batch(
    specs: Sequence[ScenarioSpec], workers: Optional[int] = None
) -> BatchResult:
    """Run disjoint scenarios concurrently and merge their reports by name.

    Every scenario runs on its own in a worker thread; nothing is shared
    between runs, so the merged result does not depend on the scheduling.
    """

    names = [s.name for s in specs]
    duplicates = sorted({n for n in names if names.count(n) > 1})
    if duplicates:
        raise EngineError('duplicate scenario names in batch: %s' % ', '.join(duplicates))

    workers = workers or settings.BATCH_WORKERS
    logging.info('running %d scenarios on %d workers' % (len(specs), workers))

    io_loop = IOLoop.current()
    with ThreadPoolExecutor(max_workers=workers) as executor:
        outcomes = await gen.multi(
            {s.name: io_loop.run_in_executor(executor, _run_one, s) for s in specs}
        )

    result = BatchResult()
    for name in sorted(outcomes):
        outcome = outcomes[name]
        if isinstance(outcome, SandcareError):
            result.errors[name] = outcome

        else:
            result.reports[name] = outcome

    return result


def run_batch_sync(specs: Sequence[ScenarioSpec], workers: Optional[int] = None) -> BatchResult:
    return IOLoop.current().run_sync(lambda: run_batch(specs, workers))
