"""Generic piece-graph connectivity engine."""

import random
from fractions import Fraction as F

import pytest

from tiletopo.errors import InvalidParameterError, PredicateError
from tiletopo.hata import (
    EdgeWitness,
    PieceGraph,
    build_graph,
    components,
    is_connected_hata,
)
from tiletopo.shift import ShiftParams, strip_adjacency_graph


class TestPieceGraph:
    def test_rejects_self_loops_and_unknown_nodes(self):
        with pytest.raises(InvalidParameterError):
            PieceGraph(("a",), {frozenset(("a",)): EdgeWitness.POINT})
        with pytest.raises(InvalidParameterError):
            PieceGraph(("a", "b"), {frozenset(("a", "c")): EdgeWitness.POINT})

    def test_adjacency_json_is_sorted(self):
        g = PieceGraph(
            ("b", "a", "c"),
            {frozenset(("a", "b")): EdgeWitness.SEGMENT},
        )
        assert g.to_adjacency_json() == {"a": ["b:segment"], "b": ["a:segment"], "c": []}


class TestBuildGraph:
    def test_path_and_isolated(self):
        path = build_graph([0, 1, 2], lambda a, b: abs(a - b) == 1)
        assert is_connected_hata(path)
        assert components(path)[0] == 1

        isolated = build_graph([0, 1, 2], lambda a, b: False)
        assert not is_connected_hata(isolated)
        count, parts = components(isolated)
        assert count == 3 and all(len(p) == 1 for p in parts)

    def test_single_piece_graph(self):
        g = build_graph(["only"], lambda a, b: True)
        assert is_connected_hata(g) and components(g)[0] == 1

    def test_predicate_error_carries_pair(self):
        def boom(a, b):
            raise ValueError("nope")

        with pytest.raises(PredicateError) as info:
            build_graph([1, 2], boom)
        assert info.value.pair == (1, 2)

    def test_witness_tags_kept(self):
        g = build_graph([0, 1], lambda a, b: EdgeWitness.POINT)
        assert g.edges[frozenset((0, 1))] is EdgeWitness.POINT
        g2 = build_graph([0, 1], lambda a, b: True)
        assert g2.edges[frozenset((0, 1))] is EdgeWitness.NONEMPTY


class TestGraphProperties:
    def test_components_invariant_under_relabeling(self):
        rng = random.Random(11)
        nodes = list(range(8))
        edges = {}
        for _ in range(6):
            a, b = rng.sample(nodes, 2)
            edges[frozenset((a, b))] = EdgeWitness.SEGMENT
        g = PieceGraph(tuple(nodes), edges)
        perm = nodes[:]
        rng.shuffle(perm)
        relabel = dict(zip(nodes, perm))
        g2 = PieceGraph(
            tuple(relabel[n] for n in nodes),
            {frozenset(relabel[x] for x in e): w for e, w in edges.items()},
        )
        assert components(g)[0] == components(g2)[0]

    def test_extra_edges_never_increase_components(self):
        nodes = tuple(range(6))
        sparse = PieceGraph(nodes, {frozenset((0, 1)): EdgeWitness.POINT})
        denser = PieceGraph(
            nodes,
            {
                frozenset((0, 1)): EdgeWitness.POINT,
                frozenset((2, 3)): EdgeWitness.SEGMENT,
            },
        )
        assert components(denser)[0] <= components(sparse)[0]


class TestFamilyAStripGraphs:
    def test_eps2_level1_is_path(self):
        g = strip_adjacency_graph(ShiftParams(3, F(2)), 1, all_pairs=True)
        assert len(g.nodes) == 3
        assert is_connected_hata(g)
        assert sorted(len(v) for v in g.to_adjacency_json().values()) == [1, 1, 2]

    def test_eps4_level1_is_isolated(self):
        g = strip_adjacency_graph(ShiftParams(3, F(4)), 1, all_pairs=True)
        assert len(g.edges) == 0
        assert components(g)[0] == 3
