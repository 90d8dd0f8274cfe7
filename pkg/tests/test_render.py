import unittest

import numpy as np

from sandcare import fixtures
from sandcare.configuration import Configuration
from sandcare.errors import NotAGridError, RenderError
from sandcare.network import GridSpec, Neighborhood, build_graph, build_grid
from sandcare.render import (
    BLACK,
    GREEN,
    MAGENTA,
    RED,
    WHITE,
    YELLOW,
    ColorMap,
    raster,
    render_grid,
)

_PPM_HEADER = b'P6\n3 3\n255\n'


class ColorMapTest(unittest.TestCase):
    def test_default_bands(self):
        colormap = ColorMap.default()
        expected = [GREEN, YELLOW, YELLOW, MAGENTA, RED, RED, BLACK, BLACK, BLACK]
        self.assertEqual(expected, [colormap.color_of(h) for h in range(9)])
        self.assertEqual('black', colormap.band_of(100).name)

    def test_overflow(self):
        colormap = ColorMap.default()
        self.assertEqual(WHITE, colormap.color_of(8, 8))
        self.assertEqual(BLACK, colormap.color_of(7, 8))
        self.assertEqual(WHITE, colormap.color_of(4, 4))

    def test_custom_edges(self):
        colormap = ColorMap.with_edges([2, 4, 6, 7])
        self.assertEqual(GREEN, colormap.color_of(1))
        self.assertEqual(BLACK, colormap.color_of(7))

    def test_invalid_edges(self):
        for edges in ([1, 3, 3, 6], [1, 3, 4], [0, 3, 4, 6]):
            with self.subTest(edges=edges):
                with self.assertRaises(RenderError):
                    ColorMap.with_edges(edges)

    def test_negative_height(self):
        with self.assertRaises(RenderError):
            ColorMap.default().band_of(-1)


class RasterTest(unittest.TestCase):
    def test_empty_grid(self):
        net = build_grid(GridSpec(3))
        data = render_grid(net, Configuration.zeros(9), scale=1)
        self.assertTrue(data.startswith(_PPM_HEADER))
        self.assertEqual(bytes(GREEN) * 9, data[len(_PPM_HEADER):])

    def test_two_topplings_srh_outcome(self):
        example = fixtures.TWO_TOPPLINGS
        net = build_grid(GridSpec(example.n, example.neighborhood))
        z = Configuration.from_rows(example.srh)
        pixels = raster(net, z)

        black = [(r, c) for r in range(5) for c in range(5) if tuple(pixels[r, c]) == BLACK]
        self.assertEqual([(1, 2), (3, 1), (3, 3), (3, 4)], black)
        self.assertFalse((pixels == np.array(WHITE, dtype=np.uint8)).all(axis=2).any())

    def test_overflow_cell(self):
        net = build_grid(GridSpec(3, Neighborhood.VON_NEUMANN))
        z = Configuration.from_deltas(9, {5: 4})
        pixels = raster(net, z, scale=4)
        self.assertEqual((12, 12, 3), pixels.shape)
        self.assertEqual(WHITE, tuple(pixels[5, 6]))
        self.assertEqual(GREEN, tuple(pixels[0, 0]))

        # the cross is drawn once cells are large enough
        data = render_grid(net, z, scale=4)
        header = b'P6\n12 12\n255\n'
        self.assertTrue(data.startswith(header))
        body = np.frombuffer(data[len(header):], dtype=np.uint8).reshape(12, 12, 3)
        self.assertEqual(BLACK, tuple(body[4, 4]))
        self.assertEqual(WHITE, tuple(body[4, 5]))

    def test_not_a_grid(self):
        net = build_graph(2, [[1, 2]])
        with self.assertRaises(NotAGridError):
            render_grid(net, Configuration.zeros(2))

    def test_bad_scale_and_format(self):
        net = build_grid(GridSpec(3))
        with self.assertRaises(RenderError):
            render_grid(net, Configuration.zeros(9), scale=-1)

        with self.assertRaises(RenderError):
            render_grid(net, Configuration.zeros(9), fmt='gif')


class SvgTest(unittest.TestCase):
    def test_cells(self):
        example = fixtures.HUB_OVERFLOW
        net = build_grid(GridSpec(example.n, example.neighborhood))
        z = Configuration.from_rows(example.inflow_state)
        svg = render_grid(net, z, fmt='svg', scale=20, title='hub <overflow>').decode('utf-8')

        self.assertIn('<svg', svg)
        self.assertEqual(9, svg.count('<rect'))
        self.assertEqual(1, svg.count('<path'))
        self.assertEqual(9, svg.count('<text'))
        self.assertIn('data-node="5" data-height="11"', svg)
        self.assertIn('fill="rgb(255,255,255)" data-node="5"', svg)
        self.assertIn('hub &lt;overflow&gt;', svg)

    def test_near_saturated_cells_are_circled(self):
        example = fixtures.TWO_TOPPLINGS
        net = build_grid(GridSpec(example.n, example.neighborhood))
        z = Configuration.from_rows(example.srh)
        svg = render_grid(net, z, fmt='svg', scale=10).decode('utf-8')
        self.assertEqual(9, svg.count('<circle'))

    def test_small_cells_have_no_labels(self):
        net = build_grid(GridSpec(3))
        svg = render_grid(net, Configuration.zeros(9), fmt='svg', scale=5).decode('utf-8')
        self.assertNotIn('<text', svg)


if __name__ == '__main__':
    unittest.main()
