"""Finite directed multigraphs with named vertices and edges.

Parallel edges are kept as separate identified edges.  Vertex order is
always the lexicographic order of the identifiers; matrices and vectors
built from a graph are indexed that way.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple

from .intlattice import IntMatrix


class GraphFormatError(ValueError):
    """Problem in a graph document; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class UnknownVertex(KeyError):
    pass


class BoundExceeded(ValueError):
    pass


class Edge(NamedTuple):
    id: str
    source: str
    range: str


def check_identifier(name: str) -> None:
    if not name or any(c.isspace() for c in name) or "#" in name:
        raise ValueError(f"bad identifier {name!r}")


@dataclass(frozen=True)
class Graph:
    vertices: frozenset[str]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        edges = tuple(sorted((Edge(*e) for e in self.edges), key=lambda e: e.id))
        object.__setattr__(self, "edges", edges)
        for v in self.vertices:
            check_identifier(v)
        seen = set()
        for e in edges:
            check_identifier(e.id)
            if e.id in seen:
                raise ValueError(f"duplicate edge id {e.id!r}")
            seen.add(e.id)
            for end in (e.source, e.range):
                if end not in self.vertices:
                    raise ValueError(f"edge {e.id!r} has dangling endpoint {end!r}")

    @cached_property
    def order(self) -> tuple[str, ...]:
        return tuple(sorted(self.vertices))

    @cached_property
    def edge_map(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _out(self) -> dict[str, tuple[Edge, ...]]:
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.source].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def _in(self) -> dict[str, tuple[Edge, ...]]:
        inc: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.range].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        """Edges leaving v, sorted by id."""
        self._require(v)
        return self._out[v]

    def in_edges(self, v: str) -> tuple[Edge, ...]:
        self._require(v)
        return self._in[v]

    def edge(self, eid: str) -> Edge:
        return self.edge_map[eid]

    def _require(self, v: str) -> None:
        if v not in self.vertices:
            raise UnknownVertex(v)

    def induced(self, vertices: Iterable[str]) -> "Graph":
        keep = frozenset(vertices)
        return Graph(keep, tuple(e for e in self.edges if e.source in keep and e.range in keep))

    def subgraph(self, vertices: Iterable[str], edge_ids: Iterable[str]) -> "Graph":
        ids = set(edge_ids)
        return Graph(frozenset(vertices), tuple(e for e in self.edges if e.id in ids))

    def successors(self, v: str) -> set[str]:
        return {e.range for e in self.out_edges(v)}

    @cached_property
    def _reach(self) -> dict[str, frozenset[str]]:
        reach = {}
        for v in self.vertices:
            seen = {v}
            todo = [v]
            while todo:
                x = todo.pop()
                for e in self._out[x]:
                    if e.range not in seen:
                        seen.add(e.range)
                        todo.append(e.range)
            reach[v] = frozenset(seen)
        return reach

    def reachable_from(self, v: str) -> frozenset[str]:
        """All w with v >= w, including v itself."""
        self._require(v)
        return self._reach[v]


@dataclass(frozen=True)
class Path:
    """A composable edge sequence; an empty path sits at ``start``."""

    start: str
    end: str
    edges: tuple[str, ...] = field(default=())

    @classmethod
    def at(cls, v: str) -> "Path":
        return cls(v, v, ())

    @classmethod
    def from_edges(cls, G: Graph, edges: Iterable[str], start: str | None = None) -> "Path":
        edges = tuple(edges)
        if not edges:
            if start is None:
                raise ValueError("empty path needs an anchor vertex")
            G._require(start)
            return cls.at(start)
        es = [G.edge(x) for x in edges]
        for a, b in zip(es, es[1:]):
            if a.range != b.source:
                raise ValueError(f"edges {a.id!r} and {b.id!r} are not composable")
        if start is not None and start != es[0].source:
            raise ValueError(f"path does not start at {start!r}")
        return cls(es[0].source, es[-1].range, edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __add__(self, other: "Path") -> "Path":
        if self.end != other.start:
            raise ValueError("paths are not composable")
        return Path(self.start, other.end, self.edges + other.edges)

    def ranges(self, G: Graph) -> list[str]:
        """r(alpha_1), ..., r(alpha_n)."""
        return [G.edge(x).range for x in self.edges]

    def vertices(self, G: Graph) -> list[str]:
        return [self.start] + self.ranges(G)

    def power(self, k: int) -> "Path":
        if k and self.start != self.end:
            raise ValueError("only loops can be repeated")
        return Path(self.start, self.end if k else self.start, self.edges * k)

    def rotate_to_end_at(self, G: Graph, v: str) -> "Path":
        """The loop relabelled so that it begins and ends at v."""
        if self.start != self.end or not self.edges:
            raise ValueError("rotation needs a non-empty loop")
        starts = [G.edge(x).source for x in self.edges]
        k = starts.index(v)
        e = self.edges[k:] + self.edges[:k]
        return Path(v, v, e)

    def __str__(self) -> str:
        return ".".join(self.edges) if self.edges else f"<{self.start}>"


# -- text format -----------------------------------------------------------


def _tokens(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def parse_graph(text: str) -> Graph:
    """Parse ``v <id>`` / ``e <id> <src> <dst>`` lines; ``#`` starts a comment."""
    vertices: dict[str, int] = {}
    edges: list[tuple[int, Edge]] = []
    ids: set[str] = set()
    for no, tok in _tokens(text):
        kind = tok[0]
        if kind == "v" and len(tok) == 2:
            if tok[1] in vertices:
                raise GraphFormatError(f"duplicate vertex {tok[1]!r}", no)
            vertices[tok[1]] = no
        elif kind == "e" and len(tok) == 4:
            if tok[1] in ids:
                raise GraphFormatError(f"duplicate edge {tok[1]!r}", no)
            ids.add(tok[1])
            edges.append((no, Edge(*tok[1:])))
        else:
            raise GraphFormatError(f"malformed line {' '.join(tok)!r}", no)
    for no, e in edges:
        for end in (e.source, e.range):
            if end not in vertices:
                raise GraphFormatError(f"edge {e.id!r} has dangling endpoint {end!r}", no)
    try:
        return Graph(frozenset(vertices), tuple(e for _, e in edges))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def serialize_graph(G: Graph) -> str:
    lines = [f"v {v}" for v in G.order]
    lines += [f"e {e.id} {e.source} {e.range}" for e in G.edges]
    return "\n".join(lines) + "\n"


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(G: Graph, name: str = "G") -> str:
    lines = [f"digraph {_dot_quote(name)} {{"]
    lines += [f"  {_dot_quote(v)};" for v in G.order]
    lines += [f"  {_dot_quote(e.source)} -> {_dot_quote(e.range)} [label={_dot_quote(e.id)}];"
              for e in G.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- structure ---------------------------------------------------------------


def vertex_matrix(G: Graph, order: tuple[str, ...] | None = None) -> IntMatrix:
    """A[u][v] = number of edges u -> v."""
    order = G.order if order is None else tuple(order)
    if set(order) != G.vertices or len(order) != len(G.vertices):
        raise ValueError("order must list every vertex exactly once")
    pos = {v: i for i, v in enumerate(order)}
    rows = [[0] * len(order) for _ in order]
    for e in G.edges:
        rows[pos[e.source]][pos[e.range]] += 1
    return IntMatrix(tuple(map(tuple, rows)), order, order)


def reaches(G: Graph, v: str, target: Iterable[str]) -> bool:
    target = set(target)
    for t in target:
        G._require(t)
    return not G.reachable_from(v).isdisjoint(target)


def vertex_roles(G: Graph) -> tuple[frozenset[str], frozenset[str]]:
    """(sinks, sources): vertices emitting no edge / receiving no edge."""
    sinks = frozenset(v for v in G.vertices if not G.out_edges(v))
    sources = frozenset(v for v in G.vertices if not G.in_edges(v))
    return sinks, sources


def find_path(G: Graph, start: str, into: Iterable[str]) -> Path | None:
    """Shortest path from ``start`` into ``into``; ties go to the
    lexicographically least edge-id sequence.  None when unreachable."""
    into = set(into)
    G._require(start)
    if start in into:
        return Path.at(start)
    parent: dict[str, Edge] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for e in G.out_edges(x):
            if e.range in seen:
                continue
            seen.add(e.range)
            parent[e.range] = e
            if e.range in into:
                chain = []
                y = e.range
                while y != start:
                    chain.append(parent[y].id)
                    y = parent[y].source
                return Path(start, e.range, tuple(reversed(chain)))
            queue.append(e.range)
    return None


def shortest_cycle(G: Graph, through: str | None = None) -> Path | None:
    """Shortest non-empty simple loop, least edge-id sequence among equals.

    With ``through`` the loop must start and end at that vertex.
    """
    best = None
    starts = G.order if through is None else (through,)
    for v in starts:
        for e in G.out_edges(v):
            p = find_path(G, e.range, {v})
            if p is None:
                continue
            cand = Path(v, v, (e.id,) + p.edges)
            if best is None or (len(cand), cand.edges) < (len(best), best.edges):
                best = cand
    return best


def strongly_connected_components(G: Graph) -> list[frozenset[str]]:
    """SCCs in canonical order (sorted by least member)."""
    comps = {}
    for v in G.order:
        if v in comps:
            continue
        comp = frozenset(w for w in G.reachable_from(v) if v in G.reachable_from(w))
        for w in comp:
            comps[w] = comp
    return sorted(set(comps.values()), key=min)


def _is_cyclic_component(G: Graph, comp: frozenset[str]) -> bool:
    return any(e.range in comp for v in comp for e in G.out_edges(v))


def _is_tail(G: Graph, gamma: frozenset[str]) -> bool:
    if not gamma:
        return False
    for w in gamma:
        if not any(e.range in gamma for e in G.out_edges(w)):
            return False
    for v in G.vertices - gamma:
        if not G.reachable_from(v).isdisjoint(gamma):
            return False
    for v, w in combinations(sorted(gamma), 2):
        common = G.reachable_from(v) & G.reachable_from(w) & gamma
        if not common:
            return False
    return True


def _sort_sets(sets: Iterable[frozenset[str]]) -> list[frozenset[str]]:
    return sorted(set(sets), key=lambda s: (len(s), sorted(s)))


def maximal_tails(G: Graph, bound: int = 20) -> list[frozenset[str]]:
    """All maximal tails by subset enumeration.

    Only backwards-hereditary candidates are tested: a subset is extended by
    adding vertices in canonical order and each candidate is closed under
    predecessors before the remaining conditions are checked.
    """
    if len(G.vertices) > bound:
        raise BoundExceeded(
            f"{len(G.vertices)} vertices exceed the enumeration bound {bound}; "
            "use maximal_tails_scc")
    order = G.order
    preds = {v: frozenset(w for w in G.vertices if v in G.reachable_from(w)) for v in order}
    found: set[frozenset[str]] = set()
    seen: set[frozenset[str]] = set()

    def grow(current: frozenset[str], start: int):
        for i in range(start, len(order)):
            v = order[i]
            if v in current:
                continue
            nxt = current | preds[v]
            if nxt in seen:
                continue
            seen.add(nxt)
            if _is_tail(G, nxt):
                found.add(nxt)
            grow(nxt, i + 1)

    grow(frozenset(), 0)
    return _sort_sets(found)


def maximal_tails_scc(G: Graph) -> list[frozenset[str]]:
    """Maximal tails of a finite graph via its cyclic strongly connected
    components: each is {v : v >= C} for exactly one such component C."""
    tails = []
    for comp in strongly_connected_components(G):
        if _is_cyclic_component(G, comp):
            c = next(iter(comp))
            tails.append(frozenset(v for v in G.vertices if c in G.reachable_from(v)))
    return _sort_sets(tails)


def return_path_count(G: Graph, v: str, cap: int = 2) -> int:
    """Number of first-return paths at v, saturated at ``cap``."""
    G._require(v)
    # vertices other than v that can get back to v without passing through v
    back = {v}
    changed = True
    while changed:
        changed = False
        for e in G.edges:
            if e.source != v and e.source not in back and e.range in back:
                back.add(e.source)
                changed = True
    live = back - {v}
    inner = G.induced(live)
    entry = {e.range for e in G.out_edges(v) if e.range in live}
    seen = set(entry)
    for x in entry:
        seen |= inner.reachable_from(x)
    if any(_is_cyclic_component(inner, c) for c in strongly_connected_components(inner.induced(seen))):
        return cap
    memo: dict[str, int] = {}

    def count(x: str) -> int:
        if x == v:
            return 1
        if x not in memo:
            memo[x] = min(cap, sum(count(e.range) for e in G.out_edges(x) if e.range in back))
        return memo[x]

    return min(cap, sum(count(e.range) for e in G.out_edges(v) if e.range in back))


def condition_K(G: Graph) -> bool:
    """Every vertex has zero or at least two first-return paths."""
    return all(return_path_count(G, v) != 1 for v in G.order)
