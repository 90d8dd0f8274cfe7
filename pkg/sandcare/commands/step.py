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
from sandcare.commands import add_scenario_options, emit_image, execute, load_spec, out_path
from sandcare.engine import run_step
from sandcare.metrics import strategy_row


def parse_options(parser, args):
    add_scenario_options(parser)

    return parser.parse_args(args)


def main(parser, args):
    from sandcare import sandctl

    options = parse_options(parser, args)

    sandctl.configure_logging('step', options.log_to_file)

    def body():
        spec = load_spec(options)
        report = run_step(spec, spec.ground_state, 0)
        logging.info(
            'step of scenario "%s": %d patients in, hub at %s'
            % (spec.name, report.ledger.inflow, report.hub_load)
        )

        if options.format == 'image':
            return emit_image(options, spec, report.final, spec.name)

        if options.format == 'csv':
            row = strategy_row(report).csv_row(spec.name)
            return output.emit(output.to_csv([row]), out_path(options, spec))

        output.emit(output.to_json(report.to_dict()), out_path(options, spec))

    execute(body)
