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
import sys
from typing import Callable, Optional

from sandcare import output, settings
from sandcare import render as grid_render
from sandcare.configuration import Configuration
from sandcare.engine import ScenarioSpec, Strategy
from sandcare.errors import NetworkError, SandcareError, ScenarioError
from sandcare.scenario import load_scenario

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_VERIFY_FAILED = 3

FORMATS = ('csv', 'report', 'image')


def add_scenario_options(parser, default_format='report', strategy=True):
    parser.add_argument(
        '--scenario',
        help='the scenario file (or the name of a shipped scenario)',
        type=str,
        dest='scenario',
        required=True,
    )
    if strategy:
        parser.add_argument(
            '--strategy',
            help='override the scenario strategy',
            choices=[s.value for s in Strategy],
            dest='strategy',
        )

    parser.add_argument(
        '--seed', help='override every seed of the scenario', type=int, dest='seed'
    )
    add_output_options(parser, default_format)


def add_output_options(parser, default_format='report'):
    parser.add_argument(
        '--format',
        help='the output format (default: %s)' % default_format,
        choices=FORMATS,
        default=default_format,
        dest='format',
    )
    parser.add_argument(
        '--image-format',
        help='the image encoding used with --format image',
        choices=grid_render.FORMATS,
        default='ppm',
        dest='image_format',
    )
    parser.add_argument(
        '--scale', help='pixels per grid cell in images', type=int, dest='scale'
    )
    parser.add_argument(
        '--out', help='write to this file instead of standard output', type=str, dest='out'
    )


def load_spec(options) -> ScenarioSpec:
    spec = load_scenario(options.scenario)
    if getattr(options, 'strategy', None):
        spec = spec.with_strategy(Strategy(options.strategy))

    if options.seed is not None:
        spec = spec.with_seed(options.seed)

    logging.debug('scenario "%s": strategy %s, %d steps' % (spec.name, spec.strategy.value, spec.steps))
    return spec


def out_path(options, spec: Optional[ScenarioSpec] = None) -> Optional[str]:
    if options.out:
        return options.out

    if spec is not None and options.format in spec.output:
        return spec.output[options.format]

    return settings.OUTPUT_PATH


def emit_image(options, spec: ScenarioSpec, z: Configuration, title: str = '') -> None:
    data = grid_render.render_grid(
        spec.network, z, fmt=options.image_format, scale=options.scale, title=title
    )
    output.emit(data, out_path(options, spec))


def execute(body: Callable[[], Optional[int]]) -> None:
    """Run a command body and turn its outcome into the process exit code."""

    try:
        code = body() or EXIT_OK

    except (ScenarioError, NetworkError) as e:
        logging.error('invalid scenario: %s' % e)
        code = EXIT_INVALID

    except SandcareError as e:
        logging.error('%s: %s' % (type(e).__name__, e))
        code = EXIT_FAILED

    if code:
        sys.exit(code)
