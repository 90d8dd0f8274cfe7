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


from jinja2 import Environment, FileSystemLoader, select_autoescape

from sandcare import settings

_jinja_env = None


def _rgb(color):
    return 'rgb(%d,%d,%d)' % tuple(color)


def _init_jinja():
    global _jinja_env

    _jinja_env = Environment(
        loader=FileSystemLoader(settings.TEMPLATE_PATH),
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
        autoescape=select_autoescape(['svg', 'xml']),
    )

    # globals
    _jinja_env.globals['settings'] = settings

    # filters
    _jinja_env.filters['rgb'] = _rgb


def render(template_name, **context):
    if _jinja_env is None:
        _init_jinja()

    template = _jinja_env.get_template(template_name)
    return template.render(**context)
