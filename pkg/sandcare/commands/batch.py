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

from sandcare import output
from sandcare.batch import run_batch_sync
from sandcare.commands import EXIT_FAILED, add_output_options, execute
from sandcare.engine import Strategy
from sandcare.errors import SandcareError
from sandcare.scenario import load_scenario


def parse_options(parser, args):
    parser.add_argument(
        '--scenario',
        help='a scenario file or shipped scenario name (repeat for several)',
        action='append',
        dest='scenarios',
        required=True,
    )
    parser.add_argument(
        '--strategy',
        help='override the strategy of every scenario',
        choices=[s.value for s in Strategy],
        dest='strategy',
    )
    parser.add_argument('--seed', help='override every seed', type=int, dest='seed')
    parser.add_argument(
        '--workers', help='scenarios run concurrently', type=int, dest='workers'
    )
    add_output_options(parser)

    return parser.parse_args(args)


def main(parser, args):
    from sandcare import sandctl

    options = parse_options(parser, args)

    sandctl.configure_logging('batch', options.log_to_file)

    def body():
        specs = []
        for path in options.scenarios:
            spec = load_scenario(path)
            if options.strategy:
                spec = spec.with_strategy(Strategy(options.strategy))

            if options.seed is not None:
                spec = spec.with_seed(options.seed)

            specs.append(spec)

        if options.format == 'image':
            raise SandcareError('batch produces tables only; use render for images')

        result = run_batch_sync(specs, options.workers)

        if options.format == 'csv':
            output.emit(output.runs_csv(result.reports.values()), options.out)

        else:
            doc = {name: run.to_dict() for name, run in result.reports.items()}
            doc.update({name: {'error': str(e)} for name, e in result.errors.items()})
            output.emit(output.to_json(doc), options.out)

        logging.info('%d scenarios done, %d failed' % (len(result.reports), len(result.errors)))
        if not result.ok:
            return EXIT_FAILED

    execute(body)
