from fractions import Fraction

import pytest

from motifph.classic import NodeWeighting
from motifph.complexes import (build_complex, clique_expand,
                               propagate_weights, vietoris_rips)
from motifph.graph import Graph
from motifph.motifs import EdgeWeighting

from oracles import brute_cliques, random_graph


def const_nodes(g, value=1):
    return NodeWeighting({v: Fraction(value) for v in range(g.n)})


class TestPropagate:
    def test_node_max_rule(self, named_graphs):
        w = NodeWeighting({0: Fraction(1), 1: Fraction(2), 2: Fraction(3)})
        node_values, edge_values = propagate_weights(named_graphs["P3"], w)
        assert node_values == [1, 2, 3]
        assert edge_values == {(0, 1): 2, (1, 2): 3}

    def test_edge_global_min_rule(self):
        g = Graph(4, [(0, 1), (2, 3)])
        w = EdgeWeighting({(0, 1): Fraction(7, 10), (2, 3): Fraction(1, 5)})
        node_values, edge_values = propagate_weights(g, w)
        assert node_values == [Fraction(1, 5)] * 4
        assert edge_values[(0, 1)] == Fraction(7, 10)

    def test_isolated_node_gets_global_min(self):
        g = Graph(3, [(0, 1)])
        w = EdgeWeighting({(0, 1): Fraction(3)})
        node_values, _ = propagate_weights(g, w)
        assert node_values == [3, 3, 3]

    def test_empty_edge_set_degenerate(self):
        g = Graph(2, [])
        node_values, edge_values = propagate_weights(g, EdgeWeighting({}))
        assert node_values == [0, 0] and edge_values == {}

    def test_node_value_override(self):
        g = Graph(2, [(0, 1)])
        w = EdgeWeighting({(0, 1): Fraction(5)}, node_value=Fraction(-1))
        node_values, _ = propagate_weights(g, w)
        assert node_values == [-1, -1]


class TestCliqueExpand:
    def test_k3_triangle_value(self, named_graphs):
        g = named_graphs["K3"]
        w = EdgeWeighting({e: Fraction(2) for e in g.edges})
        c = build_complex(g, w, 2)
        tri = [s for s in c.simplices if s.dim == 2]
        assert len(tri) == 1 and tri[0].value == 2

    def test_c4_no_high_simplices(self, named_graphs):
        c = build_complex(named_graphs["C4"], const_nodes(named_graphs["C4"]), 3)
        assert all(s.dim <= 1 for s in c.simplices)

    def test_k4_tetra_max_rule(self, named_graphs):
        g = named_graphs["K4"]
        w = EdgeWeighting({e: Fraction(i + 1) for i, e in enumerate(g.edges)})
        c = build_complex(g, w, 3)
        tetra = [s for s in c.simplices if s.dim == 3]
        assert len(tetra) == 1 and tetra[0].value == 6

    def test_k1_is_graph(self, named_graphs):
        g = named_graphs["petersen"]
        c = build_complex(g, const_nodes(g), 1)
        assert sorted(s.vertices for s in c.simplices if s.dim == 0) == [(v,) for v in range(10)]
        assert sorted(s.vertices for s in c.simplices if s.dim == 1) == list(g.edges)
        assert len(c.simplices) == 10 + 15

    def test_counts_match_clique_oracle(self):
        for seed in range(15):
            g = random_graph(10, 0.5, seed + 404)
            c = build_complex(g, const_nodes(g), 3)
            assert {s.vertices for s in c.simplices} == brute_cliques(g, 4)

    def test_face_ordering_and_monotonicity(self):
        for seed in range(10):
            g = random_graph(9, 0.5, seed)
            w = EdgeWeighting({e: Fraction((seed + 3 * i) % 7, 7) for i, e in enumerate(g.edges)})
            if not g.edges:
                continue
            c = build_complex(g, w, 3)
            for s in c.simplices:
                if s.dim == 0:
                    continue
                for drop in range(len(s.vertices)):
                    face = s.vertices[:drop] + s.vertices[drop + 1:]
                    assert c.index[face] < c.index[s.vertices]
                    assert c.simplices[c.index[face]].value <= s.value

    def test_k0_rejected(self, named_graphs):
        with pytest.raises(ValueError):
            clique_expand(named_graphs["K3"], [Fraction(0)] * 3, {}, 0)


class TestVietorisRips:
    def test_p3_distance_two_simplex(self, named_graphs):
        c = vietoris_rips(named_graphs["P3"], 1)
        vals = {s.vertices: s.value for s in c.simplices}
        assert vals[(0, 2)] == 2
        assert vals[(0, 1)] == 1

    def test_full_complex_at_diameter(self):
        for seed in range(8):
            g = random_graph(6, 0.5, seed + 900)
            comps = g.components()
            c = vietoris_rips(g, 5)
            for comp in comps:
                verts = tuple(comp)
                if len(verts) >= 2:
                    assert verts in c.index
            diam = max((s.value for s in c.simplices), default=0)
            for s in c.simplices:
                assert s.value <= diam

    def test_no_cross_component_simplices(self):
        g = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
        c = vietoris_rips(g, 3)
        left = {0, 1, 2}
        for s in c.simplices:
            verts = set(s.vertices)
            assert verts <= left or not (verts & left)
