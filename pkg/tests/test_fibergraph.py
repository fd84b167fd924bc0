from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from polyfibers.exactalg import AlgebraicNumber, BPoly
from polyfibers.fibergraph import (
    DualGraph,
    UnknownComponent,
    Vertex,
    affine_dual_graph,
    augment_by_place,
    graph_invariants,
)
from polyfibers.resolution import BranchRecord, PlaceAtInfinity

x, y = BPoly.gens()
Q = AlgebraicNumber.rational


def _graph(n, edges):
    g = DualGraph([Vertex(f"A{i}", "affine-component") for i in range(n)])
    for a, b in edges:
        g.add_edge(f"A{a}", f"A{b}")
    return g


def _place(*owners):
    br = tuple(BranchRecord(o, 1, 1, 1, "E0") for o in owners)
    return PlaceAtInfinity("D0", None, None, (), br, 0)


def test_graph_invariants_examples():
    assert graph_invariants(_graph(3, [(0, 1), (1, 2), (2, 0)])) == (1, 1)
    assert graph_invariants(_graph(2, [(0, 1), (0, 1)])) == (1, 1)
    assert graph_invariants(_graph(1, [(0, 0)])) == (1, 1)
    assert graph_invariants(_graph(4, [(0, 1)])) == (3, 0)
    assert graph_invariants(DualGraph()) == (0, 0)


def test_edge_to_unknown_vertex_is_rejected():
    with pytest.raises(UnknownComponent):
        _graph(1, [(0, 3)])
    with pytest.raises(UnknownComponent):
        augment_by_place(_graph(1, []), _place(0, 2))


def test_divisor_vertices_need_a_multiplicity():
    with pytest.raises(ValueError):
        Vertex("E0", "divisor-component")
    with pytest.raises(ValueError):
        Vertex("Z", "nonsense")


def test_affine_graph_examples():
    g = affine_dual_graph(x * (x * y + 1), Q(0))
    assert (len(g.vertices), len(g.edges)) == (2, 0)
    g = affine_dual_graph(x * y, Q(0))
    assert (len(g.vertices), len(g.edges), g.betti1) == (2, 1, 0)
    # nodal cubic: the node joins the only component to itself
    g = affine_dual_graph(y**2 - x**3 - x**2, Q(0))
    assert (len(g.vertices), g.edges) == (1, [("A0", "A0")])
    # three concurrent lines, then a triangle of lines
    g = affine_dual_graph(x * y * (x - y), Q(0))
    assert graph_invariants(g) == (1, 0) and len(g.edges) == 2
    g = affine_dual_graph(x**3 + y**3 - 3 * x * y, Q(-1))
    assert graph_invariants(g) == (1, 1) and len(g.vertices) == 3


def test_conjugate_components_are_separate_vertices():
    # x^2 + y^2 = 0 splits into two lines over Q(i)
    g = affine_dual_graph(x**2 + y**2, Q(0))
    assert (len(g.vertices), len(g.edges)) == (2, 1)


def test_tree_pattern_does_not_change_betti():
    f = x * y * (x - y) * (x + y)
    path, star = affine_dual_graph(f, Q(0)), affine_dual_graph(f, Q(0), pattern="star")
    assert path.edges != star.edges
    assert graph_invariants(path) == graph_invariants(star) == (1, 0)


def test_augment_examples():
    g = _graph(2, [])
    assert graph_invariants(augment_by_place(g, _place(0, 1))) == (1, 0)
    h = _graph(1, [])
    assert augment_by_place(h, _place(0, 0)).betti1 == 1
    assert augment_by_place(h, _place(0)).edges == []


def test_dot_output_lists_every_vertex():
    g = _graph(2, [(0, 1)])
    g.add_vertex(Vertex("E7", "divisor-component", 6))
    g.add_edge("A1", "E7")
    dot = g.to_dot("G")
    assert dot.count("[label=") == 3
    assert '"E7" [label="E7 +6", shape=box]' in dot
    assert g.to_json()["vertices"][2] == {"id": "E7", "kind": "divisor-component", "mult": 6}


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                                            max_size=10))))
def test_betti_matches_euler_count(data):
    n, edges = data
    g = _graph(n, edges)
    comps, b1 = graph_invariants(g)
    assert b1 == len(edges) - n + comps >= 0
    owners = sorted({a for a, _ in edges} | {0})
    aug = augment_by_place(g, _place(*owners))
    # a place over k branches adds k-1 edges and may merge components
    assert len(aug.edges) == len(edges) + len(owners) - 1
    assert aug.betti1 >= b1
