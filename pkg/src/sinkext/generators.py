"""Random graphs and extensions for the property suites and scripts.

Every generator takes a ``random.Random`` so runs are reproducible from a
single seed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .extension import (SinkExtension, as_extension, boundary, outsplit, outsplit_along_path,
                        simplify, star)
from .graph import Edge, Graph, Path, vertex_roles
from .intlattice import IntVector


@dataclass
class GraphConfig:
    max_vertices: int = 6
    min_vertices: int = 1
    max_parallel: int = 3
    edge_prob: float = 0.35
    source_free: bool = True
    allow_sinks: bool = False


def random_graph(rng: random.Random, cfg: GraphConfig = GraphConfig()) -> Graph:
    k = rng.randint(cfg.min_vertices, cfg.max_vertices)
    names = [f"w{i}" for i in range(1, k + 1)]
    edges = []

    def add(u, v):
        edges.append(Edge(f"g{len(edges) + 1}", u, v))

    for u in names:
        for v in names:
            if rng.random() < cfg.edge_prob:
                for _ in range(rng.randint(1, cfg.max_parallel)):
                    add(u, v)
    if not cfg.allow_sinks:
        for u in names:
            if not any(e.source == u for e in edges):
                add(u, rng.choice(names))
    if cfg.source_free:
        for v in names:
            if not any(e.range == v for e in edges):
                add(rng.choice(names), v)
    return Graph(frozenset(names), tuple(edges))


def random_acyclic_graph(rng: random.Random, max_vertices: int = 6,
                         max_parallel: int = 3) -> Graph:
    k = rng.randint(1, max_vertices)
    names = [f"w{i}" for i in range(1, k + 1)]
    edges = []
    for i, u in enumerate(names):
        for v in names[i + 1:]:
            if rng.random() < 0.4:
                for _ in range(rng.randint(1, max_parallel)):
                    edges.append(Edge(f"g{len(edges) + 1}", u, v))
    return Graph(frozenset(names), tuple(edges))


def random_vector(rng: random.Random, G: Graph, lo: int = 0, hi: int = 3,
                  positive_somewhere: bool = True) -> IntVector:
    values = [rng.randint(lo, hi) for _ in G.order]
    if positive_somewhere and not any(values):
        values[rng.randrange(len(values))] = max(1, hi)
    return IntVector.of(values, G.order)


def random_simple_extension(rng: random.Random, G: Graph, sinks: int = 1,
                            hi: int = 3) -> SinkExtension:
    ext = as_extension(G)
    G_sinks, _ = vertex_roles(G)
    for _ in range(sinks):
        m = random_vector(rng, G, 0, hi)
        m = IntVector.of([0 if v in G_sinks else x for v, x in zip(G.order, m.values)], G.order)
        if m.is_zero():
            live = [v for v in G.order if v not in G_sinks]
            if not live:
                raise ValueError("every base vertex is a sink; no sink can be attached")
            m = IntVector.delta(G.order, rng.choice(live))
        ext = star(ext, m)
    return ext


def admissible_boundary_edges(ext: SinkExtension) -> list[str]:
    """Boundary edges whose source is not a source of the base."""
    _, sources = vertex_roles(ext.base)
    return [e for e in boundary(ext)[1] if ext.graph.edge(e).source not in sources]


def random_outsplit(rng: random.Random, ext: SinkExtension) -> tuple[SinkExtension, str] | None:
    edges = admissible_boundary_edges(ext)
    if not edges:
        return None
    e = rng.choice(edges)
    return outsplit(ext, e)[0], e


def random_path_into(rng: random.Random, G: Graph, end: str, max_len: int = 4) -> Path:
    """A random path of G ending at ``end`` (walking edges backwards)."""
    p = Path.at(end)
    for _ in range(rng.randint(0, max_len)):
        ins = G.in_edges(p.start)
        if not ins:
            break
        f = rng.choice(ins)
        p = Path(f.source, p.end, (f.id,) + p.edges)
    return p


def random_move_walk(rng: random.Random, ext: SinkExtension, steps: int = 4) -> SinkExtension:
    """Apply random standard moves: outsplits, outsplits along paths, simplifications."""
    for _ in range(steps):
        roll = rng.random()
        if roll < 0.2:
            ext = simplify(ext)[0]
            continue
        edges = admissible_boundary_edges(ext)
        if not edges:
            continue
        e = rng.choice(edges)
        if roll < 0.6:
            ext = outsplit(ext, e)[0]
        else:
            alpha = random_path_into(rng, ext.base, ext.graph.edge(e).source)
            ext = outsplit_along_path(ext, e, alpha)[0]
    return ext


def random_gap_pair(rng: random.Random, G: Graph, n_range: int = 2, hi: int = 3,
                    tries: int = 50) -> tuple[SinkExtension, SinkExtension, IntVector] | None:
    """Two simple 1-sink extensions with W1 - W2 = (A_G - I) n for a random n."""
    A = as_extension(G).A.minus_identity()
    for _ in range(tries):
        W1 = random_vector(rng, G, 0, hi)
        n = IntVector.of([rng.randint(-n_range, n_range) for _ in G.order], G.order)
        W2 = W1 - A @ n
        if not W2.nonnegative() or W2.is_zero():
            continue
        e1 = star(as_extension(G), W1)
        e2 = star(as_extension(G), W2)
        return e1, e2, n
    return None


def is_source_free(G: Graph) -> bool:
    return not vertex_roles(G)[1]


__all__ = [
    "GraphConfig", "random_graph", "random_acyclic_graph", "random_vector",
    "random_simple_extension", "admissible_boundary_edges", "random_outsplit",
    "random_path_into", "random_move_walk", "random_gap_pair", "is_source_free",
]
