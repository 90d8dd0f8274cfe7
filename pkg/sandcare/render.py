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


"""Grid rendering with the occupancy colour bands: green for an empty
facility, then yellow, magenta, red and black as it fills up, and white with
a cross for a facility at or above its threshold."""

import io
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from PIL import Image, ImageDraw

from sandcare import settings, template
from sandcare.configuration import Configuration, check_length
from sandcare.errors import NotAGridError, RenderError
from sandcare.metrics import critical_points
from sandcare.network import Network

RGB = Tuple[int, int, int]

GREEN = (0, 160, 0)
YELLOW = (255, 230, 0)
MAGENTA = (255, 0, 255)
RED = (230, 0, 0)
BLACK = (0, 0, 0)
WHITE = (255, 255, 255)

_BAND_NAMES = ('green', 'yellow', 'magenta', 'red', 'black')
_BAND_COLORS = (GREEN, YELLOW, MAGENTA, RED, BLACK)

FORMATS = ('ppm', 'svg')


@dataclass(frozen=True)
class Band:
    name: str
    lower: int
    color: RGB


@dataclass(frozen=True)
class ColorMap:
    """Ordered colour bands over the natural numbers.

    Band ``i`` covers the heights from its ``lower`` edge up to the next
    band's edge; the last band is unbounded. Heights at or above the node
    threshold are drawn with the overflow colour instead.
    """

    bands: Tuple[Band, ...]
    overflow: RGB = WHITE
    marker: RGB = BLACK

    def __post_init__(self):
        if not self.bands or self.bands[0].lower != 0:
            raise RenderError('the first colour band must start at 0')

        edges = [b.lower for b in self.bands]
        if any(a >= b for a, b in zip(edges, edges[1:])):
            raise RenderError('colour band edges must increase strictly: %s' % edges)

    @classmethod
    def with_edges(cls, edges: Sequence[int]) -> 'ColorMap':
        """The five named bands, green starting at 0 and ``edges`` giving the
        lower edges of yellow, magenta, red and black."""

        if len(edges) != len(_BAND_NAMES) - 1:
            raise RenderError(
                'expected %d band edges, got %d' % (len(_BAND_NAMES) - 1, len(edges))
            )

        lowers = (0,) + tuple(edges)
        return cls(
            tuple(Band(n, lo, c) for n, lo, c in zip(_BAND_NAMES, lowers, _BAND_COLORS))
        )

    @classmethod
    def default(cls) -> 'ColorMap':
        try:
            edges = [int(e) for e in settings.COLOR_BAND_EDGES.split(',')]

        except ValueError:
            raise RenderError('invalid colour band edges "%s"' % settings.COLOR_BAND_EDGES)

        return cls.with_edges(edges)

    def band_of(self, height: int) -> Band:
        if height < 0:
            raise RenderError('negative height %d' % height)

        found = self.bands[0]
        for band in self.bands[1:]:
            if height < band.lower:
                break

            found = band

        return found

    def color_of(self, height: int, threshold: Optional[int] = None) -> RGB:
        if threshold is not None and height >= threshold:
            return self.overflow

        return self.band_of(height).color


def _cells(net: Network, z: Configuration, colormap: ColorMap):
    for v in net.nodes:
        row, col = net.position(v)
        height = z.at(v)
        yield v, row, col, height, colormap.color_of(height, net.threshold(v))


def _check_grid(net: Network, z: Configuration) -> None:
    if not net.is_grid:
        raise NotAGridError('only grid networks can be rendered')

    check_length(net.p, z)


def raster(net: Network, z: Configuration, colormap: Optional[ColorMap] = None, scale: int = 1):
    """An ``(n*scale, n*scale, 3)`` uint8 array, one square block per cell."""

    _check_grid(net, z)
    colormap = colormap or ColorMap.default()
    n = net.grid.n
    cells = np.zeros((n, n, 3), dtype=np.uint8)
    for _, row, col, _, color in _cells(net, z, colormap):
        cells[row - 1, col - 1] = color

    return np.kron(cells, np.ones((scale, scale, 1), dtype=np.uint8))


def _render_ppm(net: Network, z: Configuration, colormap: ColorMap, scale: int) -> bytes:
    image = Image.fromarray(raster(net, z, colormap, scale))
    if scale >= 3:
        draw = ImageDraw.Draw(image)
        for v in net.nodes:
            if z.at(v) >= net.threshold(v):
                row, col = net.position(v)
                x0, y0 = (col - 1) * scale, (row - 1) * scale
                x1, y1 = x0 + scale - 1, y0 + scale - 1
                draw.line([(x0, y0), (x1, y1)], fill=colormap.marker)
                draw.line([(x0, y1), (x1, y0)], fill=colormap.marker)

    buf = io.BytesIO()
    image.save(buf, format='PPM')
    return buf.getvalue()


def _render_svg(net: Network, z: Configuration, colormap: ColorMap, scale: int, title: str) -> bytes:
    # near-saturated cells are circled
    circled = set(critical_points(net, z, settings.DISPLAY_MARGIN).nodes)
    cells = []
    for v, row, col, height, color in _cells(net, z, colormap):
        cells.append(
            {
                'node': v,
                'x': (col - 1) * scale,
                'y': (row - 1) * scale,
                'height': height,
                'color': color,
                'overflow': height >= net.threshold(v),
                'circled': v in circled,
                'label_color': WHITE if color == BLACK else BLACK,
            }
        )

    svg = template.render(
        'grid.svg',
        cells=cells,
        scale=scale,
        size=net.grid.n * scale,
        stroke=max(1, scale // 10),
        marker=colormap.marker,
        labels=scale >= 12,
        title=title,
    )
    return svg.encode('utf-8')


def render_grid(
    net: Network,
    z: Configuration,
    colormap: Optional[ColorMap] = None,
    fmt: str = 'ppm',
    scale: Optional[int] = None,
    title: str = '',
) -> bytes:
    """Render ``z`` on a grid network, one cell per node in row-major order.

    Args:
        net: A grid network.
        z: The configuration to draw.
        colormap: Defaults to the bands of ``settings.COLOR_BAND_EDGES``.
        fmt: ``ppm`` (binary portable pixmap) or ``svg``.
        scale: Pixels per cell, ``settings.RENDER_SCALE`` by default.
        title: SVG document title.

    Raises:
        NotAGridError: ``net`` is not a grid.
    """

    _check_grid(net, z)
    colormap = colormap or ColorMap.default()
    scale = scale or settings.RENDER_SCALE
    if scale < 1:
        raise RenderError('scale must be at least 1, got %d' % scale)

    logging.debug('rendering %dx%d grid as %s at scale %d' % (net.grid.n, net.grid.n, fmt, scale))
    if fmt == 'ppm':
        return _render_ppm(net, z, colormap, scale)

    if fmt == 'svg':
        return _render_svg(net, z, colormap, scale, title)

    raise RenderError('unknown image format "%s"' % fmt)
