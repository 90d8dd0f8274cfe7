import unittest

from sandcare.errors import (
    DisconnectedError,
    DuplicateEdgeError,
    EvenSideWithHubError,
    OutOfRangeError,
    SelfLoopError,
    ThresholdBelowDegreeError,
    UnknownNodeError,
)
from sandcare.network import (
    GridSpec,
    Neighborhood,
    build_graph,
    build_grid,
    degree,
    index_of,
    neighbors,
    position_of,
)


class IndexTest(unittest.TestCase):
    def test_row_major(self):
        self.assertEqual(41, index_of(GridSpec(9), 5, 5))
        self.assertEqual(1, index_of(GridSpec(9), 1, 1))
        self.assertEqual(13, index_of(GridSpec(5), 3, 3))
        self.assertEqual(81, index_of(GridSpec(9), 9, 9))

    def test_out_of_range(self):
        with self.assertRaises(OutOfRangeError):
            index_of(GridSpec(3), 0, 1)

        with self.assertRaises(OutOfRangeError):
            index_of(GridSpec(3), 2, 4)

    def test_position_inverts_index(self):
        spec = GridSpec(7)
        for v in range(1, 50):
            self.assertEqual(v, index_of(spec, *position_of(spec, v)))


class GridTest(unittest.TestCase):
    def test_von_neumann_centre(self):
        net = build_grid(GridSpec(3, Neighborhood.VON_NEUMANN))
        self.assertEqual(5, net.hub)
        self.assertEqual((2, 4, 6, 8), neighbors(net, 5))
        self.assertEqual(4, net.threshold(5))
        self.assertEqual(0, net.off_slots_of(5))

    def test_boundary_keeps_nominal_threshold(self):
        net = build_grid(GridSpec(3, Neighborhood.VON_NEUMANN))
        self.assertEqual((2, 4), neighbors(net, 1))
        self.assertEqual(4, net.threshold(1))
        self.assertEqual(2, net.off_slots_of(1))
        self.assertEqual(1, net.off_slots_of(2))

    def test_moore_corner(self):
        net = build_grid(GridSpec(5, Neighborhood.MOORE))
        self.assertEqual((2, 6, 7), neighbors(net, 1))
        self.assertEqual(3, degree(net, 1))
        self.assertEqual(5, net.off_slots_of(1))
        self.assertEqual(8, net.threshold(1))
        self.assertEqual(13, net.hub)

    def test_single_cell(self):
        net = build_grid(GridSpec(1, Neighborhood.MOORE))
        self.assertEqual(1, net.p)
        self.assertEqual((), neighbors(net, 1))
        self.assertEqual(8, net.off_slots_of(1))
        self.assertEqual(1, net.hub)

    def test_even_side(self):
        net = build_grid(GridSpec(4))
        self.assertIsNone(net.hub)

        with self.assertRaises(EvenSideWithHubError):
            build_grid(GridSpec(4, with_hub=True))

    def test_stable_capacity(self):
        net = build_grid(GridSpec(3, Neighborhood.VON_NEUMANN))
        self.assertEqual(27, net.stable_capacity)

    def test_edges_are_symmetric(self):
        net = build_grid(GridSpec(4, Neighborhood.MOORE))
        for v in net.nodes:
            for u in neighbors(net, v):
                self.assertIn(v, neighbors(net, u))
                self.assertIn((min(u, v), max(u, v)), net.edges)

    def test_unknown_node(self):
        net = build_grid(GridSpec(3))
        with self.assertRaises(UnknownNodeError):
            neighbors(net, 10)

        with self.assertRaises(UnknownNodeError):
            degree(net, 0)


class GraphTest(unittest.TestCase):
    def test_path_defaults_to_degrees(self):
        net = build_graph(3, [(1, 2), (2, 3)], hub=2)
        self.assertEqual((1, 2, 1), net.thresholds)
        self.assertEqual((0, 0, 0), net.off_slots)
        self.assertFalse(net.is_grid)

    def test_triangle(self):
        net = build_graph(3, [(1, 2), (2, 3), (1, 3)], hub=1, thresholds=(2, 2, 2))
        self.assertEqual((2, 3), neighbors(net, 1))

    def test_star(self):
        net = build_graph(5, [(1, 2), (1, 3), (1, 4), (1, 5)], hub=1)
        self.assertEqual(4, net.threshold(1))
        self.assertEqual([1, 1, 1, 1], [net.threshold(v) for v in range(2, 6)])

    def test_single_node(self):
        net = build_graph(1, [], hub=1)
        self.assertEqual((1,), net.thresholds)
        self.assertEqual((1,), net.off_slots)

    def test_self_loop(self):
        with self.assertRaises(SelfLoopError):
            build_graph(2, [(1, 2), (2, 2)])

    def test_duplicate_edge(self):
        with self.assertRaises(DuplicateEdgeError):
            build_graph(2, [(1, 2), (2, 1)])

    def test_disconnected(self):
        with self.assertRaises(DisconnectedError):
            build_graph(4, [(1, 2), (3, 4)])

    def test_threshold_below_degree(self):
        with self.assertRaises(ThresholdBelowDegreeError):
            build_graph(3, [(1, 2), (2, 3)], thresholds=(1, 1, 1))

    def test_unknown_endpoint(self):
        with self.assertRaises(UnknownNodeError):
            build_graph(2, [(1, 3)])

    def test_explicit_off_slots(self):
        net = build_graph(3, [(1, 2), (2, 3)], hub=2, thresholds=(3, 2, 3), off_slots=(2, 0, 2))
        self.assertEqual(2, net.off_slots_of(1))


if __name__ == '__main__':
    unittest.main()
