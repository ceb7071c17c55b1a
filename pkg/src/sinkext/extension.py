"""Sink extensions of a fixed base graph and the moves acting on them.

A :class:`SinkExtension` is a graph E together with a designated base
subgraph G and an ordered list of sinks outside G.  The moves here
(simplification, boundary outsplitting, outsplitting along a path, adjoining
a sink) never touch G itself; they only rearrange how the sinks hang off it.

Fresh names are generated deterministically so that a recorded trace of
moves replays to byte-identical graphs:

* outsplitting ``e`` creates the vertex ``<r(e)>'``, the edge ``<e>'`` and one
  edge ``<f>'`` per edge ``f`` entering ``s(e)``;
* a name already in use gets a numeric suffix instead: ``x'2``, ``x'3``, ...;
* simplification names the edge collapsing path ``alpha`` from ``w`` as
  ``<w>|<alpha joined by .>``;
* adjoining a sink names the k-th new edge from ``w`` as ``<w>:<sink>:<k>``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

import networkx as nx

from .graph import (Edge, Graph, GraphFormatError, Path, _dot_quote, _tokens,
                    strongly_connected_components, vertex_matrix, vertex_roles)
from .intlattice import IntMatrix, IntVector


@dataclass(frozen=True)
class Violation:
    clause: int
    message: str

    def __str__(self) -> str:
        tag = "SUBGRAPH" if self.clause == 0 else f"CLAUSE({self.clause})"
        return f"{tag}: {self.message}"


class ExtensionError(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class MoveError(ValueError):
    pass


class TraceError(ValueError):
    def __init__(self, index: int, reason: str):
        self.index = index
        self.reason = reason
        super().__init__(f"move {index}: {reason}")


@dataclass(frozen=True)
class SinkExtension:
    graph: Graph
    base_vertices: frozenset[str]
    base_edges: frozenset[str]
    sinks: tuple[str, ...]

    @cached_property
    def base(self) -> Graph:
        return self.graph.subgraph(self.base_vertices, self.base_edges)

    @cached_property
    def H(self) -> frozenset[str]:
        return self.graph.vertices - self.base_vertices

    @property
    def n(self) -> int:
        return len(self.sinks)

    @property
    def order(self) -> tuple[str, ...]:
        """Canonical order of the base vertices."""
        return self.base.order

    @cached_property
    def A(self) -> IntMatrix:
        return vertex_matrix(self.base)

    def is_simple(self) -> bool:
        return self.H == frozenset(self.sinks)

    def sink(self, i: int) -> str:
        if not 1 <= i <= self.n:
            raise IndexError(f"sink index {i} outside 1..{self.n}")
        return self.sinks[i - 1]


def _find_cycle(G: Graph) -> list[str] | None:
    for comp in strongly_connected_components(G):
        if len(comp) > 1 or any(e.range in comp for v in comp for e in G.out_edges(v)):
            return sorted(comp)
    return None


def extension_violations(E: Graph, base_vertices: Iterable[str], base_edges: Iterable[str],
                         sinks: Sequence[str]) -> list[Violation]:
    """Every way in which the data fails to be a sink extension."""
    bv, be, sinks = frozenset(base_vertices), frozenset(base_edges), tuple(sinks)
    out: list[Violation] = []
    for v in sorted(bv - E.vertices):
        out.append(Violation(0, f"base vertex {v} is not in E"))
    for x in sorted(be - set(E.edge_map)):
        out.append(Violation(0, f"base edge {x} is not in E"))
    for x in sorted(be & set(E.edge_map)):
        e = E.edge(x)
        if e.source not in bv or e.range not in bv:
            out.append(Violation(0, f"base edge {x} leaves the base vertices"))
    if out:
        return out
    H = E.vertices - bv
    e_sinks, e_sources = vertex_roles(E)
    for v in sorted(H & e_sources):
        out.append(Violation(1, f"vertex {v} in H is a source"))
    if len(set(sinks)) != len(sinks):
        out.append(Violation(1, f"sink list {list(sinks)} repeats a vertex"))
    for v in sinks:
        if v not in H:
            out.append(Violation(1, f"listed sink {v} is not in H"))
        elif v not in e_sinks:
            out.append(Violation(1, f"listed sink {v} emits edges"))
    for v in sorted((H & e_sinks) - set(sinks)):
        out.append(Violation(1, f"vertex {v} in H is an unlisted sink"))
    cyc = _find_cycle(E.induced(H))
    if cyc is not None:
        out.append(Violation(2, f"cycle inside H through {{{','.join(cyc)}}}"))
    for e in E.edges:
        if e.id not in be and e.range not in H:
            out.append(Violation(3, f"edge {e.id} ({e.source}->{e.range}) is not in G but ends outside H"))
    base = E.subgraph(bv, be)
    g_sinks, _ = vertex_roles(base)
    for w in sorted(g_sinks):
        if E.out_edges(w):
            out.append(Violation(4, f"sink {w} of G emits {E.out_edges(w)[0].id} in E"))
    return out


def validate_extension(E: Graph, base_vertices: Iterable[str], base_edges: Iterable[str],
                       sinks: Sequence[str]) -> SinkExtension:
    problems = extension_violations(E, base_vertices, base_edges, sinks)
    if problems:
        raise ExtensionError(problems)
    return SinkExtension(E, frozenset(base_vertices), frozenset(base_edges), tuple(sinks))


def as_extension(G: Graph) -> SinkExtension:
    """G viewed as a 0-sink extension of itself."""
    return SinkExtension(G, G.vertices, frozenset(G.edge_map), ())


def revalidate(ext: SinkExtension) -> SinkExtension:
    return validate_extension(ext.graph, ext.base_vertices, ext.base_edges, ext.sinks)


# -- invariants ----------------------------------------------------------------


def saturation(ext: SinkExtension, X: Iterable[str]) -> frozenset[str]:
    """Least saturated set containing the hereditary set X."""
    E = ext.graph
    sat = set(X)
    for v in sorted(sat):
        E._require(v)
        for e in E.out_edges(v):
            if e.range not in sat:
                raise ValueError(f"set is not hereditary: edge {e.id} leaves it at {v}")
    changed = True
    while changed:
        changed = False
        for w in E.order:
            outs = E.out_edges(w)
            if w not in sat and outs and all(e.range in sat for e in outs):
                sat.add(w)
                changed = True
    return frozenset(sat)


def boundary(ext: SinkExtension) -> tuple[frozenset[str], tuple[str, ...]]:
    """(boundary vertices, boundary edges): edges from G^0 into H."""
    edges = tuple(e.id for e in ext.graph.edges
                  if e.source in ext.base_vertices and e.range in ext.H)
    return frozenset(ext.graph.edge(x).source for x in edges), edges


def boundary_edges_at(ext: SinkExtension, w: str) -> list[str]:
    return [e.id for e in ext.graph.out_edges(w) if e.range in ext.H]


def _paths_in_H(ext: SinkExtension, x: str, target: str) -> list[tuple[str, ...]]:
    if x == target:
        return [()]
    out = []
    for e in ext.graph.out_edges(x):
        for rest in _paths_in_H(ext, e.range, target):
            out.append((e.id,) + rest)
    return out


def z_paths(ext: SinkExtension, w: str, i: int) -> list[Path]:
    """Paths from w to sink i whose first edge already leaves G."""
    target = ext.sink(i)
    if w not in ext.base_vertices:
        raise ValueError(f"{w} is not a base vertex")
    out = []
    for x in boundary_edges_at(ext, w):
        for rest in _paths_in_H(ext, ext.graph.edge(x).range, target):
            out.append(Path(w, target, (x,) + rest))
    return out


def _path_counts(ext: SinkExtension, target: str) -> dict[str, int]:
    counts: dict[str, int] = {}

    def count(x: str) -> int:
        if x == target:
            return 1
        if x not in counts:
            counts[x] = sum(count(e.range) for e in ext.graph.out_edges(x))
        return counts[x]

    for x in ext.H:
        count(x)
    counts[target] = 1
    return counts


def wojciech_vector(ext: SinkExtension, i: int = 1) -> IntVector:
    """Per base vertex, the number of paths to sink i leaving G at once."""
    counts = _path_counts(ext, ext.sink(i))
    W = {w: 0 for w in ext.order}
    for e in ext.graph.edges:
        if e.source in ext.base_vertices and e.range in ext.H:
            W[e.source] += counts[e.range]
    return IntVector(ext.order, tuple(W[w] for w in ext.order))


def wojciech_vectors(ext: SinkExtension) -> list[IntVector]:
    return [wojciech_vector(ext, i) for i in range(1, ext.n + 1)]


def is_tree_extension(ext: SinkExtension) -> bool:
    if ext.n != 1:
        raise ValueError(f"tree extensions have one sink, not {ext.n}")
    counts = _path_counts(ext, ext.sinks[0])
    return all(counts[x] == 1 for x in ext.H)


def is_forest_extension(ext: SinkExtension) -> bool:
    """Every vertex of H has exactly one path to exactly one sink."""
    totals = {x: 0 for x in ext.H}
    for s in ext.sinks:
        for x, c in _path_counts(ext, s).items():
            totals[x] += c
    return all(c == 1 for c in totals.values())


# -- moves -----------------------------------------------------------------------


@dataclass(frozen=True)
class Outsplit:
    edge: str


@dataclass(frozen=True)
class OutsplitAlongPath:
    edge: str
    path: tuple[str, ...]


@dataclass(frozen=True)
class Simplify:
    pass


@dataclass(frozen=True)
class Star:
    vector: IntVector


Move = Union[Outsplit, OutsplitAlongPath, Simplify, Star]
MoveTrace = tuple  # tuple of Move


def _fresh(stem: str, taken: set[str]) -> str:
    name = f"{stem}'"
    k = 2
    while name in taken:
        name = f"{stem}'{k}"
        k += 1
    taken.add(name)
    return name


@dataclass
class _Split:
    ext: SinkExtension
    vertex: str
    edge: str
    copies: dict[str, str] = field(default_factory=dict)


def _outsplit(ext: SinkExtension, eid: str) -> _Split:
    E = ext.graph
    if eid not in E.edge_map:
        raise MoveError(f"no edge {eid}")
    e = E.edge(eid)
    if e.source not in ext.base_vertices or e.range not in ext.H:
        raise MoveError(f"{eid} is not a boundary edge")
    if not ext.base.in_edges(e.source):
        raise MoveError(f"{e.source} = s({eid}) is a source of G")
    vnames = set(E.vertices)
    enames = set(E.edge_map)
    v_new = _fresh(e.range, vnames)
    e_new = _fresh(eid, enames)
    edges = [x for x in E.edges if x.id != eid]
    edges.append(Edge(e_new, v_new, e.range))
    copies = {}
    for f in E.in_edges(e.source):
        copies[f.id] = _fresh(f.id, enames)
        edges.append(Edge(copies[f.id], f.source, v_new))
    graph = Graph(E.vertices | {v_new}, tuple(edges))
    new = SinkExtension(graph, ext.base_vertices, ext.base_edges, ext.sinks)
    return _Split(new, v_new, e_new, copies)


def outsplit(ext: SinkExtension, e: str) -> tuple[SinkExtension, Outsplit]:
    """Boundary outsplitting of ext at the boundary edge e."""
    return _outsplit(ext, e).ext, Outsplit(e)


def _as_path(ext: SinkExtension, alpha) -> Path:
    if isinstance(alpha, Path):
        return alpha
    return Path.from_edges(ext.graph, alpha)


def outsplit_along_path(ext: SinkExtension, e: str, alpha) -> tuple[SinkExtension, MoveTrace]:
    """Outsplit at e, then along alpha backwards until s(alpha) is a boundary
    vertex.  Performs exactly len(alpha) outsplittings; the empty path is a
    no-op."""
    edges = alpha.edges if isinstance(alpha, Path) else tuple(alpha)
    if e not in ext.graph.edge_map:
        raise MoveError(f"no edge {e}")
    for x in edges:
        if x not in ext.base_edges:
            raise MoveError(f"path edge {x} is not an edge of G")
    if edges:
        path = Path.from_edges(ext.graph, edges)
        if path.end != ext.graph.edge(e).source:
            raise MoveError(f"path ends at {path.end}, but s({e}) = {ext.graph.edge(e).source}")
    trace = []
    cur = e
    for x in reversed(edges):
        split = _outsplit(ext, cur)
        trace.append(Outsplit(cur))
        ext, cur = split.ext, split.copies[x]
    return ext, tuple(trace)


def simplify(ext: SinkExtension) -> tuple[SinkExtension, Simplify]:
    """Collapse every path that leaves G and ends at a sink into one edge.

    A simple extension is returned unchanged.
    """
    if ext.is_simple():
        return ext, Simplify()
    E = ext.graph
    edges = [E.edge(x) for x in sorted(ext.base_edges)]
    names = set(ext.base_edges)
    for w in ext.order:
        for i in range(1, ext.n + 1):
            for p in z_paths(ext, w, i):
                name = f"{w}|{'.'.join(p.edges)}"
                if name in names:
                    name = _fresh(name, names)
                names.add(name)
                edges.append(Edge(name, w, p.end))
    graph = Graph(ext.base_vertices | set(ext.sinks), tuple(edges))
    return SinkExtension(graph, ext.base_vertices, ext.base_edges, ext.sinks), Simplify()


def _vector_on_base(ext: SinkExtension, m) -> IntVector:
    if isinstance(m, IntVector):
        if m.labels != ext.order:
            m = IntVector.from_mapping(ext.order, dict(zip(m.labels, m.values)))
        return m
    if isinstance(m, Mapping):
        return IntVector.from_mapping(ext.order, m)
    return IntVector(ext.order, tuple(int(x) for x in m))


def _attach_sink(graph: Graph, vertices_taken: set[str], sink_stem: str,
                 m: IntVector) -> tuple[Graph, str]:
    sink = sink_stem if sink_stem not in vertices_taken else _fresh(sink_stem, set(vertices_taken))
    names = set(graph.edge_map)
    edges = list(graph.edges)
    for w, k in zip(m.labels, m.values):
        for j in range(1, k + 1):
            name = f"{w}:{sink}:{j}"
            if name in names:
                name = _fresh(name, names)
            names.add(name)
            edges.append(Edge(name, w, sink))
    return Graph(graph.vertices | {sink}, tuple(edges)), sink


def star(ext: SinkExtension, m) -> SinkExtension:
    """Adjoin a new last sink with m(w) edges from each base vertex w."""
    m = _vector_on_base(ext, m)
    if not m.nonnegative():
        raise MoveError(f"negative entry in {m.format()}")
    graph, sink = _attach_sink(ext.graph, set(ext.graph.vertices), f"v{ext.n + 1}", m)
    return validate_extension(graph, ext.base_vertices, ext.base_edges, ext.sinks + (sink,))


def strip_sink(ext: SinkExtension) -> SinkExtension:
    """Remove the last sink and every edge into it (simple extensions only)."""
    if not ext.is_simple():
        raise MoveError("strip_sink needs a simple extension")
    if not ext.n:
        raise MoveError("no sink to strip")
    last = ext.sinks[-1]
    graph = Graph(ext.graph.vertices - {last}, tuple(e for e in ext.graph.edges if e.range != last))
    return SinkExtension(graph, ext.base_vertices, ext.base_edges, ext.sinks[:-1])


def canonical_simple(G: Graph, Ws: Sequence) -> SinkExtension:
    """The simple extension of G with exactly W_i(w) edges from w to sink i."""
    ext = as_extension(G)
    for W in Ws:
        W = _vector_on_base(ext, W)
        if W.is_zero():
            raise MoveError("a zero Wojciech vector would make the sink a source")
        ext = star(ext, W)
    return ext


def apply_move(ext: SinkExtension, move: Move) -> SinkExtension:
    if isinstance(move, Outsplit):
        return outsplit(ext, move.edge)[0]
    if isinstance(move, OutsplitAlongPath):
        return outsplit_along_path(ext, move.edge, move.path)[0]
    if isinstance(move, Simplify):
        return simplify(ext)[0]
    if isinstance(move, Star):
        return star(ext, move.vector)
    raise TypeError(f"not a move: {move!r}")


def apply_trace(ext: SinkExtension, trace: Iterable[Move]) -> SinkExtension:
    for k, move in enumerate(trace):
        try:
            ext = apply_move(ext, move)
        except (MoveError, ExtensionError, ValueError, KeyError) as exc:
            raise TraceError(k, str(exc)) from exc
    return ext


def format_move(move: Move) -> str:
    if isinstance(move, Outsplit):
        return f"outsplit {move.edge}"
    if isinstance(move, OutsplitAlongPath):
        return f"along {move.edge} {','.join(move.path) if move.path else '-'}"
    if isinstance(move, Simplify):
        return "simplify"
    if isinstance(move, Star):
        return "star " + ",".join(f"{k}={x}" for k, x in zip(move.vector.labels, move.vector.values))
    raise TypeError(f"not a move: {move!r}")


def parse_move(text: str) -> Move:
    tok = text.split()
    if tok == ["simplify"]:
        return Simplify()
    if len(tok) == 2 and tok[0] == "outsplit":
        return Outsplit(tok[1])
    if len(tok) == 3 and tok[0] == "along":
        return OutsplitAlongPath(tok[1], () if tok[2] == "-" else tuple(tok[2].split(",")))
    if len(tok) == 2 and tok[0] == "star":
        pairs = [p.split("=") for p in tok[1].split(",")]
        return Star(IntVector(tuple(k for k, _ in pairs), tuple(int(x) for _, x in pairs)))
    raise ValueError(f"cannot parse move {text!r}")


# -- comparison ------------------------------------------------------------------


def _node_label(ext: SinkExtension, v: str):
    if v in ext.base_vertices:
        return ("base", v)
    if v in ext.sinks:
        return ("sink", ext.sinks.index(v))
    return ("inner",)


def canonically_equal(a: SinkExtension, b: SinkExtension) -> bool:
    """Equal up to renaming the vertices of H and the edges outside G.

    The base graph and the order of the sinks are held fixed.  For simple
    extensions this is equality of all Wojciech vectors.
    """
    if a.base != b.base or a.n != b.n or len(a.H) != len(b.H):
        return False
    if len(a.graph.edges) != len(b.graph.edges):
        return False
    if a.is_simple() and b.is_simple():
        return wojciech_vectors(a) == wojciech_vectors(b)

    def build(ext):
        g = nx.MultiDiGraph()
        for v in ext.graph.vertices:
            g.add_node(v, label=_node_label(ext, v))
        for e in ext.graph.edges:
            if e.id not in ext.base_edges:
                g.add_edge(e.source, e.range)
        return g

    return nx.is_isomorphic(build(a), build(b), node_match=lambda x, y: x["label"] == y["label"])


def canonical_form(ext: SinkExtension) -> SinkExtension:
    """Simple extensions only: the canonically named copy of ext."""
    if not ext.is_simple():
        raise ValueError("canonical form is defined for simple extensions")
    return canonical_simple(ext.base, wojciech_vectors(ext)) if ext.n else as_extension(ext.base)


# -- text format -----------------------------------------------------------------


def parse_extension(text: str) -> SinkExtension:
    """Parse the extension format; untagged lines count as ``base``."""
    vertices: dict[str, str] = {}
    edges: list[tuple[int, Edge, str]] = []
    sinks: list[str] = []
    ids: set[str] = set()
    for no, tok in _tokens(text):
        kind = tok[0]
        if kind == "v" and len(tok) in (2, 3):
            tag = tok[2] if len(tok) == 3 else "base"
            if tag not in ("base", "ext"):
                raise GraphFormatError(f"tag must be base or ext, not {tag!r}", no)
            if tok[1] in vertices:
                raise GraphFormatError(f"duplicate vertex {tok[1]!r}", no)
            vertices[tok[1]] = tag
        elif kind == "e" and len(tok) in (4, 5):
            tag = tok[4] if len(tok) == 5 else "base"
            if tag not in ("base", "ext"):
                raise GraphFormatError(f"tag must be base or ext, not {tag!r}", no)
            if tok[1] in ids:
                raise GraphFormatError(f"duplicate edge {tok[1]!r}", no)
            ids.add(tok[1])
            edges.append((no, Edge(*tok[1:4]), tag))
        elif kind == "sink" and len(tok) == 2:
            sinks.append(tok[1])
        else:
            raise GraphFormatError(f"malformed line {' '.join(tok)!r}", no)
    for no, e, _ in edges:
        for end in (e.source, e.range):
            if end not in vertices:
                raise GraphFormatError(f"edge {e.id!r} has dangling endpoint {end!r}", no)
    for v in sinks:
        if v not in vertices:
            raise GraphFormatError(f"sink {v!r} is not a declared vertex")
    try:
        graph = Graph(frozenset(vertices), tuple(e for _, e, _ in edges))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc
    base_v = [v for v, t in vertices.items() if t == "base"]
    base_e = [e.id for _, e, t in edges if t == "base"]
    return validate_extension(graph, base_v, base_e, sinks)


def serialize_extension(ext: SinkExtension) -> str:
    E = ext.graph
    lines = [f"v {v} {'base' if v in ext.base_vertices else 'ext'}" for v in E.order]
    lines += [f"e {e.id} {e.source} {e.range} {'base' if e.id in ext.base_edges else 'ext'}"
              for e in E.edges]
    lines += [f"sink {v}" for v in ext.sinks]
    return "\n".join(lines) + "\n"


def extension_to_dot(ext: SinkExtension, name: str = "E") -> str:
    E = ext.graph
    lines = [f"digraph {_dot_quote(name)} {{"]
    for v in E.order:
        if v in ext.base_vertices:
            style = "color=black"
        elif v in ext.sinks:
            style = "color=red, shape=doublecircle"
        else:
            style = "color=red"
        lines.append(f"  {_dot_quote(v)} [{style}];")
    for e in E.edges:
        color = "black" if e.id in ext.base_edges else "red"
        lines.append(f"  {_dot_quote(e.source)} -> {_dot_quote(e.range)} "
                     f"[label={_dot_quote(e.id)}, color={color}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
