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
from sandcare.engine import run_scenario, run_step
from sandcare.render import render_grid

STATES = ('ground', 'inflow', 'toppled', 'final')


def parse_options(parser, args):
    add_scenario_options(parser, default_format='image')
    parser.add_argument(
        '--state',
        help='the configuration to draw (default: final)',
        choices=STATES,
        default='final',
        dest='state',
    )

    return parser.parse_args(args)


def main(parser, args):
    from sandcare import sandctl

    options = parse_options(parser, args)

    sandctl.configure_logging('render', options.log_to_file)

    def body():
        spec = load_spec(options)
        if options.state == 'ground':
            z = spec.ground_state

        elif options.state == 'final':
            z = run_scenario(spec).final

        else:
            report = run_step(spec, spec.ground_state, 0)
            z = report.inflow if options.state == 'inflow' else report.toppled

        logging.info('rendering the %s state of scenario "%s"' % (options.state, spec.name))
        data = render_grid(
            spec.network,
            z,
            fmt=options.image_format,
            scale=options.scale,
            title='%s (%s)' % (spec.name, options.state),
        )
        output.emit(data, out_path(options, spec))

    execute(body)
