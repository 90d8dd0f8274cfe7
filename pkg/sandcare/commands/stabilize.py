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
from sandcare.engine import Strategy
from sandcare.metrics import StrategyRow, critical_points, indicator
from sandcare.sandpile import add_inflow, stabilize_open, stabilize_srh
from sandcare.standard import stabilize_standard


def parse_options(parser, args):
    add_scenario_options(parser)

    return parser.parse_args(args)


def stabilize(spec):
    """One cascade on the ground state plus the first inflow, without the
    bookkeeping of a workflow step."""

    net = spec.network
    w = spec.inflow.perturbation(net.p, 0)
    zbar = add_inflow(spec.ground_state, w)
    if spec.strategy is Strategy.SRH:
        z, trace = stabilize_srh(net, zbar, spec.topple_cap)

    elif spec.strategy is Strategy.STANDARD:
        z, trace = stabilize_standard(net, zbar, spec.tiebreak, spec.move_cap)

    else:
        z, trace = stabilize_open(net, zbar, spec.topple_cap)

    return w, zbar, z, trace


def main(parser, args):
    from sandcare import sandctl

    options = parse_options(parser, args)

    sandctl.configure_logging('stabilize', options.log_to_file)

    def body():
        spec = load_spec(options)
        w, zbar, z, trace = stabilize(spec)
        logging.info('stabilized scenario "%s" with %s' % (spec.name, spec.strategy.value))

        if options.format == 'image':
            return emit_image(options, spec, z, spec.name)

        if options.format == 'csv':
            hub = spec.network.hub
            row = StrategyRow(
                strategy=spec.strategy.value,
                indicator=indicator(w, z) if w.total else None,
                critical_count=critical_points(spec.network, z, spec.margin).count,
                hub_load=z.at(hub) if hub else None,
                total_mass=z.total,
            )
            return output.emit(output.to_csv([row.csv_row(spec.name)]), out_path(options, spec))

        doc = {
            'scenario': spec.name,
            'strategy': spec.strategy.value,
            'inflow': list(zbar),
            'result': list(z),
            'trace': trace.to_dict(),
        }
        output.emit(output.to_json(doc), out_path(options, spec))

    execute(body)
