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


import csv
import io
import json
import logging
import os
import sys
import tempfile
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

from sandcare.engine import RunReport
from sandcare.errors import OutputError
from sandcare.metrics import CSV_COLUMNS, ComparisonReport, strategy_row

RUN_CSV_COLUMNS = ('step',) + CSV_COLUMNS


def _json_default(value):
    if isinstance(value, Fraction):
        return str(value)

    raise TypeError('%r is not JSON serializable' % (value,))


def to_json(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, default=_json_default) + '\n'


def to_csv(rows: Iterable[Dict[str, object]], columns: Sequence[str] = CSV_COLUMNS) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow(row)

    return buf.getvalue()


def _run_rows(run: RunReport) -> List[Dict[str, object]]:
    rows = []
    for report in run.steps:
        row = strategy_row(report).csv_row(run.scenario)
        row['step'] = report.index + 1
        rows.append(row)

    return rows


def run_csv(run: RunReport) -> str:
    """One row per step, measured on the configuration right after the cascade."""
    return to_csv(_run_rows(run), RUN_CSV_COLUMNS)


def runs_csv(runs: Iterable[RunReport]) -> str:
    return to_csv([row for run in runs for row in _run_rows(run)], RUN_CSV_COLUMNS)


def comparison_csv(comparison: ComparisonReport) -> str:
    return to_csv(comparison.csv_rows())


def comparison_doc(comparison: ComparisonReport) -> Dict[str, Any]:
    return {
        'scenario': comparison.scenario,
        'rows': comparison.csv_rows(),
        'deltas': comparison.deltas,
        'preferred': comparison.preferred,
    }


def _file_mode() -> int:
    umask = os.umask(0)
    os.umask(umask)
    return 0o666 & ~umask


def atomic_write(path: str, data: Union[str, bytes]) -> None:
    """Replace ``path`` with ``data`` so that readers never see a partial file."""

    if isinstance(data, str):
        data = data.encode('utf-8')

    directory = os.path.dirname(os.path.abspath(path))
    tmp_path = None
    try:
        fd, tmp_path = tempfile.mkstemp(dir=directory, prefix='.%s.' % os.path.basename(path))
        with os.fdopen(fd, 'wb') as f:
            f.write(data)

        # mkstemp creates the file readable by its owner only
        os.chmod(tmp_path, _file_mode())
        os.replace(tmp_path, path)

    except OSError as e:
        if tmp_path is not None:
            try:
                os.remove(tmp_path)

            except OSError:
                pass

        raise OutputError('could not write "%s": %s' % (path, e)) from e

    logging.debug('wrote %d bytes to "%s"' % (len(data), path))


def emit(data: Union[str, bytes], path: Optional[str] = None) -> None:
    """Write to ``path``, or to standard output when no path is given."""

    if path:
        atomic_write(path, data)
        return

    if isinstance(data, bytes):
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()

    else:
        sys.stdout.write(data)
        sys.stdout.flush()
