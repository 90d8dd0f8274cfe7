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
from sandcare.commands import add_scenario_options, execute, load_spec, out_path
from sandcare.engine import Strategy, run_step
from sandcare.errors import SandcareError
from sandcare.metrics import compare


def parse_options(parser, args):
    add_scenario_options(parser, default_format='csv', strategy=False)
    parser.add_argument(
        '--strategy',
        help='the two strategies to compare (default: srh and standard)',
        choices=[s.value for s in Strategy],
        action='append',
        dest='strategies',
    )

    return parser.parse_args(args)


def main(parser, args):
    from sandcare import sandctl

    options = parse_options(parser, args)

    sandctl.configure_logging('compare', options.log_to_file)

    def body():
        strategies = options.strategies or [Strategy.SRH.value, Strategy.STANDARD.value]
        if len(strategies) != 2:
            raise SandcareError('compare needs exactly two strategies, got %d' % len(strategies))

        spec = load_spec(options)
        reports = [
            run_step(spec.with_strategy(Strategy(s)), spec.ground_state, 0) for s in strategies
        ]
        comparison = compare(reports[0], reports[1], spec.name)
        logging.info(
            'scenario "%s": %s preferred' % (spec.name, comparison.preferred or 'neither strategy')
        )

        if options.format == 'csv':
            return output.emit(output.comparison_csv(comparison), out_path(options, spec))

        if options.format == 'image':
            raise SandcareError('compare produces tables only; use render for images')

        output.emit(output.to_json(output.comparison_doc(comparison)), out_path(options, spec))

    execute(body)
