import random

import pytest
from hypothesis import given, strategies as st

from sinkext import fixtures
from sinkext.extension import (ExtensionError, MoveError, Outsplit, OutsplitAlongPath, Simplify,
                               Star, TraceError, apply_trace, as_extension, boundary,
                               canonical_simple, canonically_equal, extension_to_dot,
                               format_move, is_forest_extension, is_tree_extension, outsplit,
                               outsplit_along_path, parse_extension, parse_move, saturation,
                               serialize_extension, simplify, star, strip_sink, validate_extension,
                               wojciech_vector, wojciech_vectors, z_paths)
from sinkext.generators import (GraphConfig, admissible_boundary_edges, random_graph,
                                random_move_walk, random_simple_extension)
from sinkext.graph import Edge, Graph
from sinkext.intlattice import IntVector

load = fixtures.load


def W(ext, i=1):
    v = wojciech_vector(ext, i)
    return dict(zip(v.labels, v.values))


@st.composite
def walked_extensions(draw, sinks=1):
    rng = random.Random(draw(st.integers(0, 2**32)))
    G = random_graph(rng, GraphConfig(max_vertices=5, max_parallel=2))
    ext = random_simple_extension(rng, G, sinks)
    return random_move_walk(rng, ext, draw(st.integers(0, 5)))


def test_fixture_wojciech_vectors():
    assert W(load("E1_ex26")) == {"w1": 1, "w2": 0}
    assert W(load("E2_ex26")) == {"w1": 0, "w2": 1}
    assert W(load("E1_intro")) == {"w1": 1, "w2": 1, "w3": 2}
    assert W(load("E2_intro")) == {"w1": 1, "w2": 0, "w3": 3}
    assert W(load("F_intro")) == {"w1": 2, "w2": 0, "w3": 3}
    assert W(load("Z_fig")) == {"z": 1, "w": 0}
    assert W(load("Z_fig_split")) == {"z": 1, "w": 1}


def test_valid_fixtures():
    assert load("E1_ex26").sinks == ("v1",)
    assert load("E1_intro").H == {"v1"}


def clause_numbers(exc):
    return {v.clause for v in exc.violations}


def test_clause_1_source_in_H():
    E = Graph(frozenset({"a", "s", "t"}), (Edge("x", "t", "s"), Edge("l", "a", "a"), Edge("y", "a", "s")))
    with pytest.raises(ExtensionError) as err:
        validate_extension(E, {"a"}, {"l"}, ["s"])
    assert 1 in clause_numbers(err.value)


def test_clause_2_cycle_in_H():
    E = Graph(frozenset({"a", "s", "t", "u"}),
              (Edge("l", "a", "a"), Edge("x", "a", "t"), Edge("y", "t", "u"), Edge("z", "u", "t"),
               Edge("q", "t", "s")))
    with pytest.raises(ExtensionError) as err:
        validate_extension(E, {"a"}, {"l"}, ["s"])
    assert 2 in clause_numbers(err.value)


def test_clause_3_edge_from_H_into_G():
    E = Graph(frozenset({"a", "s", "t"}),
              (Edge("l", "a", "a"), Edge("x", "a", "t"), Edge("y", "t", "s"), Edge("z", "t", "a")))
    with pytest.raises(ExtensionError) as err:
        validate_extension(E, {"a"}, {"l"}, ["s"])
    assert 3 in clause_numbers(err.value)
    assert str(err.value).startswith("CLAUSE(3)")


def test_clause_4_base_sink_emits():
    E = Graph(frozenset({"a", "b", "s"}), (Edge("l", "a", "b"), Edge("x", "b", "s")))
    with pytest.raises(ExtensionError) as err:
        validate_extension(E, {"a", "b"}, {"l"}, ["s"])
    assert 4 in clause_numbers(err.value)


def test_unlisted_sink_rejected():
    E = Graph(frozenset({"a", "s", "t"}), (Edge("l", "a", "a"), Edge("x", "a", "s"), Edge("y", "a", "t")))
    with pytest.raises(ExtensionError):
        validate_extension(E, {"a"}, {"l"}, ["s"])


def test_saturation():
    assert saturation(load("E1_intro"), {"v1"}) == {"v1"}
    assert saturation(load("Z_fig_split"), {"v"}) == {"v", "v'"}
    assert saturation(load("E1_intro"), set()) == frozenset()


def test_boundary():
    assert boundary(load("E2_ex26")) == ({"w2"}, ("s",))
    assert boundary(load("E1_intro"))[0] == {"w1", "w2", "w3"}


def test_z_paths():
    assert len(z_paths(load("E1_intro"), "w3", 1)) == 2
    assert [p.edges for p in z_paths(load("Z_fig_split"), "w", 1)] == [("g'", "e'")]
    assert z_paths(load("E2_ex26"), "w1", 1) == []


def test_tree_extensions():
    assert is_tree_extension(load("E1_intro"))
    assert is_tree_extension(load("Z_fig_split"))
    E = Graph(frozenset({"a", "t", "s"}),
              (Edge("l", "a", "a"), Edge("x", "a", "t"), Edge("y1", "t", "s"), Edge("y2", "t", "s")))
    assert not is_tree_extension(validate_extension(E, {"a"}, {"l"}, ["s"]))


def test_outsplit_figure():
    split, move = outsplit(load("Z_fig"), "e")
    assert move == Outsplit("e")
    assert serialize_extension(split) == serialize_extension(load("Z_fig_split"))


def test_outsplit_rejects_non_boundary_edges():
    with pytest.raises(MoveError):
        outsplit(load("Z_fig"), "h")
    with pytest.raises(MoveError):
        outsplit(load("Z_fig"), "nope")


def test_outsplit_rejects_base_sources():
    E = parse_extension("v a\nv b\nv s ext\ne x a b\ne l b b\ne y a s ext\nsink s\n")
    with pytest.raises(MoveError, match="source"):
        outsplit(E, "y")


def test_outsplit_along_path():
    E = load("E2_intro")
    same, trace = outsplit_along_path(E, "q2", ())
    assert same == E and trace == ()
    new, trace = outsplit_along_path(E, "q2", ("c",))
    assert len(trace) == 1
    assert "w2" in boundary(new)[0]
    # |alpha| = 2 along b.c ending at w3
    new, trace = outsplit_along_path(E, "q2", ("b", "c"))
    A = E.A.minus_identity()
    expected = wojciech_vector(E) + A.column("w2") + A.column("w3")
    assert wojciech_vector(new) == expected


def test_outsplit_along_path_checks_the_path():
    with pytest.raises(MoveError):
        outsplit_along_path(load("E2_intro"), "q2", ("b",))


def test_simplify():
    S, move = simplify(load("Z_fig_split"))
    assert move == Simplify()
    assert S.is_simple()
    assert W(S) == {"z": 1, "w": 1}
    E = load("E1_intro")
    assert simplify(E)[0] == E


def test_star_and_strip():
    G = as_extension(load("G_ex26").base)
    E = star(G, {"w1": 1, "w2": 0})
    assert canonically_equal(E, load("E1_ex26"))
    two = star(load("E1_ex26"), {"w1": 0, "w2": 1})
    assert [v.values for v in wojciech_vectors(two)] == [(1, 0), (0, 1)]
    assert strip_sink(load("E1_ex26")) == G
    assert canonically_equal(star(strip_sink(two), {"w1": 0, "w2": 1}), two)
    with pytest.raises(ExtensionError):
        star(G, {"w1": 0, "w2": 0})
    with pytest.raises(MoveError):
        strip_sink(load("Z_fig_split"))


def test_canonical_simple():
    G = load("G_ex26").base
    assert canonically_equal(canonical_simple(G, [(1, 0)]), load("E1_ex26"))
    assert canonically_equal(canonical_simple(load("G_intro").base, [(2, 0, 3)]), load("F_intro"))
    with pytest.raises(MoveError):
        canonical_simple(G, [(0, 0)])


def test_traces():
    E = load("Z_fig")
    assert apply_trace(E, []) == E
    assert serialize_extension(apply_trace(E, [Outsplit("e")])) == serialize_extension(load("Z_fig_split"))
    S = load("Z_fig_split")
    assert canonically_equal(apply_trace(S, [Simplify(), Simplify()]), apply_trace(S, [Simplify()]))
    with pytest.raises(TraceError) as err:
        apply_trace(E, [Simplify(), Outsplit("missing")])
    assert err.value.index == 1


@pytest.mark.parametrize("move", [
    Outsplit("e"), OutsplitAlongPath("e", ("g", "f")), OutsplitAlongPath("e", ()), Simplify(),
    Star(IntVector.of([1, 0], ("w", "z"))),
])
def test_move_text_roundtrip(move):
    assert parse_move(format_move(move)) == move


def test_canonical_equality_ignores_names():
    a = load("Z_fig_split")
    text = serialize_extension(a).replace("v'", "fresh").replace("h'", "k")
    assert canonically_equal(a, parse_extension(text))
    assert not canonically_equal(a, load("Z_fig"))


def test_extension_roundtrip_and_dot():
    for name in fixtures.NAMES:
        E = load(name)
        again = parse_extension(serialize_extension(E))
        assert again == E
        assert extension_to_dot(again) == extension_to_dot(E)


@given(walked_extensions())
def test_outsplit_wojciech_change(ext):
    # W_{E(e)} = W_E + (A_G - I) delta_{s(e)} on tree extensions
    if not is_tree_extension(ext):
        return
    A = ext.A.minus_identity()
    for e in admissible_boundary_edges(ext):
        new, _ = outsplit(ext, e)
        assert wojciech_vector(new) == wojciech_vector(ext) + A.column(ext.graph.edge(e).source)
        assert is_tree_extension(new)


@given(walked_extensions(sinks=2))
def test_moves_preserve_validity_and_forests(ext):
    assert is_forest_extension(ext)
    S = simplify(ext)[0]
    assert S.is_simple()
    assert simplify(S)[0] == S
    assert wojciech_vectors(S) == wojciech_vectors(ext)
    assert saturation(ext, ext.sinks) == ext.H
