from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from sinkext import fixtures
from sinkext.graph import (Edge, Graph, GraphFormatError, Path, condition_K, find_path,
                           maximal_tails, maximal_tails_scc, parse_graph, reaches,
                           return_path_count, serialize_graph, shortest_cycle,
                           strongly_connected_components, to_dot, vertex_matrix, vertex_roles)


def base(name):
    return fixtures.load(name).base


def graph_of(edges, vertices=None):
    vs = set(vertices or ()) | {u for u, _ in edges} | {v for _, v in edges}
    return Graph(frozenset(vs), tuple(Edge(f"x{i}", u, v) for i, (u, v) in enumerate(edges)))


@st.composite
def graphs(draw, max_vertices=5):
    k = draw(st.integers(1, max_vertices))
    names = [f"u{i}" for i in range(k)]
    pairs = draw(st.lists(st.tuples(st.sampled_from(names), st.sampled_from(names)), max_size=12))
    return graph_of(pairs, names)


def test_parse_one_loop():
    G = parse_graph("v w1\ne a w1 w1\n")
    assert G.vertices == {"w1"}
    assert G.edges == (Edge("a", "w1", "w1"),)


def test_parse_intro_fixture():
    G = base("G_intro")
    assert len(G.vertices) == 3 and len(G.edges) == 4


@pytest.mark.parametrize("text, fragment", [
    ("v a\ne x a b\n", "dangling"),
    ("v a\nv a\n", "duplicate vertex"),
    ("v a\ne x a a\ne x a a\n", "duplicate edge"),
    ("v a\nq a\n", "malformed"),
])
def test_parse_errors_carry_line_numbers(text, fragment):
    with pytest.raises(GraphFormatError) as err:
        parse_graph(text)
    assert fragment in str(err.value)
    assert err.value.line is not None


def test_comments_and_blank_lines():
    G = parse_graph("# header\nv a  # trailing\n\ne x a a\n")
    assert G.edge("x").source == "a"


@given(graphs())
def test_serialization_roundtrip(G):
    assert parse_graph(serialize_graph(G)) == G


def test_vertex_matrices():
    assert vertex_matrix(base("G_ex26")).tolist() == [[2, 1], [0, 2]]
    assert vertex_matrix(base("G_intro")).tolist() == [[1, 1, 0], [0, 0, 1], [0, 1, 0]]
    assert vertex_matrix(graph_of([], ["a", "b"])).tolist() == [[0, 0], [0, 0]]


def test_reaches():
    G = base("G_ex26")
    assert reaches(G, "w1", {"w2"})
    assert not reaches(G, "w2", {"w1"})
    assert reaches(G, "w2", {"w2"})


def test_vertex_roles():
    E = fixtures.load("E1_ex26").graph
    assert vertex_roles(E) == ({"v1"}, frozenset())
    assert vertex_roles(graph_of([], ["v"])) == ({"v"}, {"v"})
    assert vertex_roles(base("G_intro")) == (frozenset(), frozenset())


def test_find_path():
    G = base("G_ex26")
    assert find_path(G, "w1", {"w2"}).edges == ("b",)
    assert find_path(G, "w1", {"w1"}) == Path.at("w1")
    assert find_path(G, "w2", {"w1"}) is None


def test_find_path_prefers_least_edge_ids():
    G = graph_of([("a", "b"), ("a", "b"), ("b", "c")])
    assert find_path(G, "a", {"c"}).edges == ("x0", "x2")


def test_path_algebra():
    G = base("G_intro")
    cyc = Path.from_edges(G, ["c", "d"])
    assert (cyc.start, cyc.end) == ("w2", "w2")
    assert cyc.power(2).edges == ("c", "d", "c", "d")
    assert cyc.power(0) == Path.at("w2")
    assert cyc.rotate_to_end_at(G, "w3").edges == ("d", "c")
    assert cyc.ranges(G) == ["w3", "w2"]
    with pytest.raises(ValueError):
        Path.from_edges(G, ["c", "c"])


def test_shortest_cycle():
    G = base("G_intro")
    assert shortest_cycle(G).edges == ("a",)
    assert shortest_cycle(G.induced({"w2", "w3"})).edges == ("c", "d")
    assert shortest_cycle(graph_of([("a", "b")])) is None


def brute_tails(G):
    """Direct check of the three defining conditions over all subsets."""
    sinks, _ = vertex_roles(G)
    order = G.order
    found = []
    for k in range(1, len(order) + 1):
        for S in combinations(order, k):
            S = frozenset(S)
            if S & sinks:
                continue
            cofinal = all(G.reachable_from(u) & G.reachable_from(v) & S for u in S for v in S)
            back = all(u in S for v in S for u in order if v in G.reachable_from(u))
            exits = all(any(e.range in S for e in G.out_edges(v)) for v in S)
            if cofinal and back and exits:
                found.append(S)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def test_maximal_tails_examples():
    assert set(maximal_tails(base("G_ex26"))) == {frozenset({"w1"}), frozenset({"w1", "w2"})}
    assert set(maximal_tails(base("G_intro"))) == {frozenset({"w1"}),
                                                  frozenset({"w1", "w2", "w3"})}
    assert maximal_tails(graph_of([], ["s"])) == []


@given(graphs())
def test_tail_enumerations_agree(G):
    assert sorted(maximal_tails(G), key=sorted) == sorted(maximal_tails_scc(G), key=sorted)
    assert sorted(maximal_tails(G), key=sorted) == sorted(brute_tails(G), key=sorted)


def test_return_paths_and_condition_K():
    assert return_path_count(base("G_ex26"), "w1") == 2
    assert return_path_count(base("G_intro"), "w1") == 1
    assert return_path_count(graph_of([("a", "s")]), "s") == 0
    assert condition_K(base("G_ex26"))
    assert not condition_K(base("G_intro"))
    assert condition_K(graph_of([], ["a", "b"]))


@given(graphs())
def test_scc_partition(G):
    comps = strongly_connected_components(G)
    assert frozenset().union(*comps) == G.vertices
    assert sum(len(c) for c in comps) == len(G.vertices)


def test_dot_is_deterministic():
    G = base("G_intro")
    assert to_dot(G) == to_dot(parse_graph(serialize_graph(G)))
