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
from sandcare.commands import EXIT_VERIFY_FAILED, execute


def parse_options(parser, args):
    parser.add_argument(
        '--out', help='write the table to this file instead of standard output', dest='out'
    )

    return parser.parse_args(args)


def main(parser, args):
    from sandcare import sandctl
    from sandcare.verify import verify_worked_examples

    options = parse_options(parser, args)

    sandctl.configure_logging('verify', options.log_to_file)

    def body():
        table = verify_worked_examples()
        output.emit(table.render(), options.out)
        for row in table.failures:
            logging.error('check failed: %s' % row.name)

        if not table.passed:
            return EXIT_VERIFY_FAILED

    execute(body)
