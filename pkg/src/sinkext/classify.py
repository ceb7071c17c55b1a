"""Decision procedures for sink extensions.

The classifiers are constructive: given two extensions of the same base
graph they produce replayable move traces carrying both to a common simple
extension, packaged as a :class:`Certificate`.  The remaining functions
compute the combinatorial invariants that can rule such a certificate out:
closures of sinks, the ideal lattice, the K_0 presentation and the
kernel-orthogonality obstruction.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Union

from .extension import (ExtensionError, MoveError, Outsplit, OutsplitAlongPath, Simplify,
                        SinkExtension, apply_move, boundary,
                        boundary_edges_at, canonical_simple, canonically_equal, format_move,
                        is_forest_extension, is_tree_extension, outsplit, outsplit_along_path,
                        parse_extension, parse_move, revalidate, serialize_extension, simplify,
                        wojciech_vector, wojciech_vectors)
from .graph import (BoundExceeded, Graph, Path, find_path, maximal_tails_scc, serialize_graph,
                    shortest_cycle, vertex_roles)
from .intlattice import (AbelianGroup, IntMatrix, IntVector, cokernel, image_membership,
                         kernel_basis, restricted_membership)

MODES = ("essential", "closure", "af", "nsink")


class ClassificationError(ValueError):
    """A hypothesis of a classification procedure does not hold."""


class PreconditionError(ClassificationError):
    pass


@dataclass(frozen=True)
class CandidateFound:
    vector: IntVector
    hypothesis_ok: bool = True

    def describe(self) -> str:
        flag = "" if self.hypothesis_ok else " (orthogonality hypothesis fails)"
        return f"CandidateFound: n = {self.vector}{flag}"


@dataclass(frozen=True)
class Obstructed:
    reason: str

    def describe(self) -> str:
        return f"Obstructed: {self.reason}"


@dataclass(frozen=True)
class Inconclusive:
    reason: str

    def describe(self) -> str:
        return f"Inconclusive: {self.reason}"


Verdict = Union[CandidateFound, Obstructed, Inconclusive]


@dataclass(frozen=True)
class Certificate:
    mode: str
    trace1: tuple
    trace2: tuple
    F: SinkExtension


def _same_base(a: SinkExtension, b: SinkExtension) -> Graph:
    if a.base != b.base:
        raise ClassificationError("the extensions have different base graphs")
    return a.base


def _one_sink(*exts: SinkExtension) -> None:
    for e in exts:
        if e.n != 1:
            raise ClassificationError(f"expected a 1-sink extension, got {e.n} sinks")


# -- essentiality, tails, closures ---------------------------------------------


def is_essential(ext: SinkExtension) -> bool:
    """Every base vertex reaches every sink."""
    E = ext.graph
    return all(s in E.reachable_from(w) for w in ext.order for s in ext.sinks)


def closure_of_sink(ext: SinkExtension, i: int = 1) -> frozenset[str]:
    """Union of the maximal tails of G all of whose vertices reach sink i."""
    s = ext.sink(i)
    E = ext.graph
    out: set[str] = set()
    for tail in maximal_tails_scc(ext.base):
        if all(s in E.reachable_from(w) for w in tail):
            out |= tail
    return frozenset(out)


def same_closure(ext1: SinkExtension, ext2: SinkExtension, i: int = 1) -> bool:
    _same_base(ext1, ext2)
    return closure_of_sink(ext1, i) == closure_of_sink(ext2, i)


@dataclass(frozen=True)
class TailFamily:
    """Maximal tails plus the sets lambda_v = {w : w >= v} of the sinks."""

    graph: Graph
    tails: tuple[frozenset[str], ...]
    sink_tails: dict = field(hash=False)

    @property
    def members(self) -> list[frozenset[str]]:
        return list(self.tails) + [self.sink_tails[v] for v in sorted(self.sink_tails)]

    def _geq(self, lam: frozenset[str], X: frozenset[str]) -> bool:
        return all(not self.graph.reachable_from(v).isdisjoint(X) for v in lam)

    def closure(self, S: Iterable[frozenset[str]]) -> list[frozenset[str]]:
        """All lambda with lambda >= (union of S)."""
        union = frozenset().union(*S)
        if not union:
            return []
        return [lam for lam in self.members if self._geq(lam, union)]


def prim_skeleton(ext: SinkExtension) -> TailFamily:
    _one_sink(ext)
    E = ext.graph
    sinks, _ = vertex_roles(E)
    lam = {v: frozenset(w for w in E.vertices if v in E.reachable_from(w)) for v in sinks}
    return TailFamily(E, tuple(maximal_tails_scc(E)), lam)


def saturated_hereditary_subsets(E: Graph, bound: int = 20) -> list[frozenset[str]]:
    """Every hereditary saturated vertex set, the empty set and E^0 included."""
    if len(E.vertices) > bound:
        raise BoundExceeded(f"{len(E.vertices)} vertices exceed the enumeration bound {bound}")
    order = E.order
    bit = {v: 1 << i for i, v in enumerate(order)}
    succ = [sum(bit[w] for w in E.successors(v)) for v in order]
    out = []
    for mask in range(1 << len(order)):
        ok = True
        for i in range(len(order)):
            if mask >> i & 1:
                if succ[i] & ~mask:
                    ok = False
                    break
            elif succ[i] and not succ[i] & ~mask:
                ok = False
                break
        if ok:
            out.append(frozenset(v for i, v in enumerate(order) if mask >> i & 1))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


# -- Wojciech gaps ---------------------------------------------------------------


def wojciech_gap(ext1: SinkExtension, ext2: SinkExtension, i: int = 1,
                 support: Iterable[str] | None = None) -> Verdict:
    """Is W_1 - W_2 in the image of A_G - I (optionally with n supported
    on ``support``)?"""
    _same_base(ext1, ext2)
    d = wojciech_vector(ext1, i) - wojciech_vector(ext2, i)
    M = ext1.A.minus_identity()
    n = image_membership(M, d) if support is None else restricted_membership(M, d, support)
    if n is None:
        where = "" if support is None else f" with support in {{{','.join(sorted(support))}}}"
        return Obstructed(f"gap {d} not in image of A_G - I{where}")
    return CandidateFound(n)


def _loop_sum(G: Graph, A_minus: IntMatrix, gamma: Path, a: int) -> IntVector:
    total = IntVector.zeros(G.order)
    for r in gamma.ranges(G):
        total = total + A_minus.column(r)
    return total * a


# -- loop balancing ----------------------------------------------------------------


def _mutual_boundaries(G: Graph, B1: frozenset[str], B2: frozenset[str]):
    """Largest subsets of B1, B2 between which one can walk to and fro."""
    b1, b2 = set(B1), set(B2)
    while True:
        nb1 = {x for x in b1 if not G.reachable_from(x).isdisjoint(b2)}
        nb2 = {y for y in b2 if not G.reachable_from(y).isdisjoint(nb1)}
        if nb1 == b1 and nb2 == b2:
            return b1, b2
        b1, b2 = nb1, nb2


def _drop_last(p: Path, G: Graph) -> Path:
    if not p.edges:
        raise ValueError("empty path")
    return Path(p.start, G.edge(p.edges[-1]).source, p.edges[:-1])


def _balance_positive(E1: SinkExtension, E2: SinkExtension, gamma: Path, a: int):
    G = E1.base
    B1, _ = boundary(E1)
    B2, _ = boundary(E2)
    B1s, B2s = _mutual_boundaries(G, B1, B2)
    if not B1s:
        raise PreconditionError(
            f"no boundary vertex of the first extension ({','.join(sorted(B1)) or 'none'}) "
            f"reaches the second boundary ({','.join(sorted(B2)) or 'none'}) and back")
    x0 = gamma.start
    alpha = find_path(G, x0, B1s)
    if alpha is None:
        raise PreconditionError(f"loop vertex {x0} does not reach the first boundary {sorted(B1s)}")
    loop_a = gamma.power(a)
    trace1: list = []
    trace2: list = []

    def finish(E1, E2, P: Path):
        u = P.end
        f1 = boundary_edges_at(E1, u)[0]
        f2 = boundary_edges_at(E2, u)[0]
        P1 = loop_a + P
        E1, t1 = outsplit_along_path(E1, f1, P1)
        E2, t2 = outsplit_along_path(E2, f2, P)
        if P1.edges:
            trace1.append(OutsplitAlongPath(f1, P1.edges))
        if P.edges:
            trace2.append(OutsplitAlongPath(f2, P.edges))
        return E1, E2

    # to-and-fro walk: x_0 -> y_0 -> x_1 -> ... with x_k in B1 and y_k in B2
    walked = alpha  # path from r(gamma) to the current vertex
    first_visit: dict[str, Path] = {}
    cur = alpha.end
    while True:
        if cur in B2:
            return (*finish(E1, E2, walked), (tuple(trace1), tuple(trace2)))
        first_visit[cur] = walked
        hop = find_path(G, cur, B2s)
        walked = walked + hop
        y = hop.end
        if y in B1:
            return (*finish(E1, E2, walked), (tuple(trace1), tuple(trace2)))
        hop = find_path(G, y, B1s)
        walked = walked + hop
        cur = hop.end
        if cur in first_visit:
            break

    # case (a): a loop mu through both boundaries, entered along beta
    prefix = first_visit[cur]
    mu = Path(cur, cur, walked.edges[len(prefix.edges):])
    on_mu = set(mu.vertices(G))
    e1 = next(x for x in sorted(boundary(E1)[1]) if E1.graph.edge(x).source in on_mu)
    e2 = next(x for x in sorted(boundary(E2)[1]) if E2.graph.edge(x).source in on_mu)
    mu1 = mu.rotate_to_end_at(G, E1.graph.edge(e1).source)
    mu2 = mu.rotate_to_end_at(G, E2.graph.edge(e2).source)
    E1, _ = outsplit_along_path(E1, e1, mu1)
    E2, _ = outsplit_along_path(E2, e2, mu2)
    trace1.append(OutsplitAlongPath(e1, mu1.edges))
    trace2.append(OutsplitAlongPath(e2, mu2.edges))
    common = boundary(E1)[0] & boundary(E2)[0]
    if prefix.edges:
        P = _drop_last(prefix, G)
        if P.end in common:
            return (*finish(E1, E2, P), (tuple(trace1), tuple(trace2)))
    P = find_path(G, x0, common)
    if P is not None:
        return (*finish(E1, E2, P), (tuple(trace1), tuple(trace2)))
    if _loop_sum(G, E1.A.minus_identity(), gamma, a).is_zero():
        return E1, E2, (tuple(trace1), tuple(trace2))
    raise ClassificationError(
        f"after outsplitting along the loop {mu} no common boundary vertex is reachable from {x0}")


def balance_loop(ext1: SinkExtension, ext2: SinkExtension, gamma, a: int):
    """Boundary outsplittings changing W_1 - W_2 by a * sum_j (A_G - I) delta_{r(gamma_j)}.

    Both extensions must be 1-sink tree extensions of the same base and
    ``gamma`` a loop in the base.  Returns ``(ext1', ext2', (trace1, trace2))``.
    """
    G = _same_base(ext1, ext2)
    _one_sink(ext1, ext2)
    if not (is_tree_extension(ext1) and is_tree_extension(ext2)):
        raise PreconditionError("balance_loop needs tree extensions")
    if not isinstance(gamma, Path):
        gamma = Path.from_edges(G, gamma)
    if not gamma.edges or gamma.start != gamma.end:
        raise PreconditionError(f"{gamma} is not a loop")
    for x in gamma.edges:
        if x not in ext1.base_edges:
            raise PreconditionError(f"loop edge {x} is not in G")
    return _balance(ext1, ext2, gamma, a)


def _balance(ext1: SinkExtension, ext2: SinkExtension, gamma: Path, a: int):
    # The bases may differ in edges into sinks other than the active one
    # (per-sink views); such edges are dead ends and never enter the walk.
    if a == 0:
        return ext1, ext2, ((), ())
    G = ext1.base
    before = wojciech_vector(ext1) - wojciech_vector(ext2)
    if a > 0:
        new1, new2, traces = _balance_positive(ext1, ext2, gamma, a)
    else:
        new2, new1, (t2, t1) = _balance_positive(ext2, ext1, gamma, -a)
        traces = (t1, t2)
    after = wojciech_vector(new1) - wojciech_vector(new2)
    expected = before + _loop_sum(G, ext1.A.minus_identity(), gamma, a)
    if after != expected:
        raise AssertionError(f"loop balancing produced gap {after}, expected {expected}")
    return new1, new2, traces


# -- 1-sink classification ------------------------------------------------------


def _equalize(E1: SinkExtension, E2: SinkExtension, n: IntVector):
    """Outsplit two tree extensions with W1 - W2 = (A - I) n until W1 = W2."""
    G = E1.base
    M = E1.A.minus_identity()
    if wojciech_vector(E1) - wojciech_vector(E2) != M @ n:
        raise AssertionError("candidate does not solve the gap equation")
    t1: list = []
    t2: list = []
    while not n.is_zero():
        supp = n.support()
        D = G.induced(supp)
        d_sinks = [v for v in sorted(supp) if not D.out_edges(v)]
        if d_sinks:
            w = d_sinks[0]
            a = n[w]
            for _ in range(abs(a)):
                if a > 0:
                    e = boundary_edges_at(E2, w)[0]
                    E2 = outsplit(E2, e)[0]
                    t2.append(Outsplit(e))
                else:
                    e = boundary_edges_at(E1, w)[0]
                    E1 = outsplit(E1, e)[0]
                    t1.append(Outsplit(e))
            n = n - IntVector.delta(n.labels, w) * a
        else:
            gamma = shortest_cycle(D)
            w = gamma.start
            a = n[w]
            E1, E2, (s1, s2) = _balance(E1, E2, gamma, -a)
            t1.extend(s1)
            t2.extend(s2)
            for v in set(gamma.vertices(G)):
                n = n - IntVector.delta(n.labels, v) * a
        if len(n.support()) >= len(supp):
            raise AssertionError("support of the candidate did not shrink")
        if wojciech_vector(E1) - wojciech_vector(E2) != M @ n:
            raise AssertionError("gap equation lost during equalization")
    return E1, E2, t1, t2


def _check_mode(ext1: SinkExtension, ext2: SinkExtension, mode: str) -> IntVector:
    """Check the hypotheses of ``mode`` and return the candidate n."""
    G = ext1.base
    M = ext1.A.minus_identity()
    d = wojciech_vector(ext1) - wojciech_vector(ext2)
    _, sources = vertex_roles(G)
    if mode == "essential":
        for name, e in (("first", ext1), ("second", ext2)):
            if not is_essential(e):
                bad = next(w for w in e.order if e.sinks[0] not in e.graph.reachable_from(w))
                raise PreconditionError(f"{name} extension is not essential: {bad} does not reach the sink")
        if sources:
            raise PreconditionError(f"G has sources: {','.join(sorted(sources))}")
        n = image_membership(M, d)
    elif mode == "af":
        cyc = shortest_cycle(G)
        if cyc is not None:
            raise PreconditionError(f"G has a loop {cyc}, so C*(G) is not AF")
        n = image_membership(M, d)
    elif mode == "closure":
        c1, c2 = closure_of_sink(ext1), closure_of_sink(ext2)
        if c1 != c2:
            raise PreconditionError(
                f"closure mismatch: {{{','.join(sorted(c1))}}} vs {{{','.join(sorted(c2))}}}")
        n = restricted_membership(M, d, c1)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if n is None:
        raise PreconditionError(wojciech_gap(ext1, ext2, support=c1 if mode == "closure" else None)
                                .describe())
    return n


def classify_1sink(ext1: SinkExtension, ext2: SinkExtension, mode: str = "essential") -> Certificate:
    """Carry two 1-sink extensions to a common simple extension.

    ``mode`` selects which set of hypotheses is checked: ``essential``,
    ``af`` (base without loops), ``closure`` (equal sink closures, candidate
    supported in the closure) or ``auto`` (tries af, essential, closure in
    that order).
    """
    G = _same_base(ext1, ext2)
    _one_sink(ext1, ext2)
    if mode == "auto":
        failures = []
        for m in ("af", "essential", "closure"):
            try:
                return classify_1sink(ext1, ext2, m)
            except ClassificationError as exc:
                failures.append(f"{m}: {exc}")
        raise ClassificationError("no mode applies; " + "; ".join(failures))
    n = _check_mode(ext1, ext2, mode)
    S1, S2 = simplify(ext1)[0], simplify(ext2)[0]
    try:
        E1, E2, t1, t2 = _equalize(S1, S2, n)
    except MoveError as exc:
        raise ClassificationError(str(exc)) from exc
    F = canonical_simple(G, [wojciech_vector(E1)])
    return Certificate(mode, (Simplify(), *t1, Simplify()), (Simplify(), *t2, Simplify()), F)


def _view(ext: SinkExtension, k: int) -> SinkExtension:
    """A simple n-sink extension as a 1-sink extension of G plus the other sinks."""
    s = ext.sink(k)
    others = [v for v in ext.sinks if v != s]
    base_e = set(ext.base_edges) | {e.id for e in ext.graph.edges if e.range in others}
    return SinkExtension(ext.graph, ext.base_vertices | set(others), frozenset(base_e), (s,))


def _unview(view: SinkExtension, like: SinkExtension) -> SinkExtension:
    return SinkExtension(view.graph, like.base_vertices, like.base_edges, like.sinks)


def classify_nsink(ext1: SinkExtension, ext2: SinkExtension) -> Certificate:
    """Essential n-sink classification.

    Sinks are equalized one at a time.  At stage k the extensions are simple
    with sinks 1..k-1 already matched; they are regarded as 1-sink
    extensions of the graph G plus the other sinks, the 1-sink procedure is
    run for sink k with the candidate supported on G^0, and the result is
    simplified again.  Since adjoining a sink commutes with outsplitting and
    simplification, this is the induction on the number of sinks unrolled.
    """
    G = _same_base(ext1, ext2)
    if ext1.n != ext2.n:
        raise ClassificationError(f"sink count mismatch: {ext1.n} vs {ext2.n}")
    if ext1.n == 0:
        raise ClassificationError("no sinks to classify")
    if ext1.n == 1:
        return classify_1sink(ext1, ext2, "essential")
    for name, e in (("first", ext1), ("second", ext2)):
        if not is_essential(e):
            bad = next(k for k in range(1, e.n + 1)
                       if any(e.sink(k) not in e.graph.reachable_from(w) for w in e.order))
            raise PreconditionError(f"{name} extension is not essential at sink {bad}")
    _, sources = vertex_roles(G)
    if sources:
        raise PreconditionError(f"G has sources: {','.join(sorted(sources))}")
    M = ext1.A.minus_identity()
    for k in range(1, ext1.n + 1):
        d = wojciech_vector(ext1, k) - wojciech_vector(ext2, k)
        if image_membership(M, d) is None:
            raise PreconditionError(f"sink {k}: gap {d} not in image of A_G - I")
    E, F = simplify(ext1)[0], simplify(ext2)[0]
    t1: list = [Simplify()]
    t2: list = [Simplify()]
    for k in range(1, ext1.n + 1):
        V1, V2 = _view(E, k), _view(F, k)
        c1, c2 = closure_of_sink(V1), closure_of_sink(V2)
        if not (c1 == c2 == G.vertices):
            raise PreconditionError(f"sink {k}: closure is not all of G^0")
        d = wojciech_vector(V1) - wojciech_vector(V2)
        n = restricted_membership(V1.A.minus_identity(), d, G.vertices)
        if n is None:
            raise PreconditionError(f"sink {k}: gap {d} has no candidate supported on G^0")
        try:
            V1, V2, s1, s2 = _equalize(V1, V2, n)
        except MoveError as exc:
            raise ClassificationError(f"sink {k}: {exc}") from exc
        E = simplify(_unview(V1, E))[0]
        F = simplify(_unview(V2, F))[0]
        t1 += [*s1, Simplify()]
        t2 += [*s2, Simplify()]
    target = canonical_simple(G, wojciech_vectors(E))
    return Certificate("nsink", tuple(t1), tuple(t2), target)


def classify(ext1: SinkExtension, ext2: SinkExtension, mode: str = "auto") -> Certificate:
    if mode == "nsink":
        return classify_nsink(ext1, ext2)
    if mode == "auto" and (ext1.n != 1 or ext2.n != 1):
        return classify_nsink(ext1, ext2)
    return classify_1sink(ext1, ext2, mode)


# -- K-theory and the converse ----------------------------------------------------


def k0_presentation(ext: SinkExtension) -> AbelianGroup:
    """Cokernel of z -> ((A_G^t - I) z, W_E . z)."""
    _one_sink(ext)
    sinks, _ = vertex_roles(ext.base)
    if sinks:
        raise ClassificationError(f"G has sinks: {','.join(sorted(sinks))}")
    M = ext.A.transpose().minus_identity().stack(wojciech_vector(ext), ext.sinks[0])
    return cokernel(M)


def embedding_obstruction(ext1: SinkExtension, ext2: SinkExtension) -> Verdict:
    """Necessary condition for a common embedded extension.

    When both Wojciech vectors are orthogonal to ker(A_G^t - I) (always the
    case if that kernel is zero), a common target forces the gap into the
    image of A_G - I, so a failed membership test is a genuine obstruction.
    Otherwise a failed test proves nothing.
    """
    _one_sink(ext1, ext2)
    G = _same_base(ext1, ext2)
    sinks, _ = vertex_roles(G)
    if sinks:
        raise ClassificationError(f"G has sinks: {','.join(sorted(sinks))}")
    kernel = kernel_basis(ext1.A.transpose().minus_identity())
    W1, W2 = wojciech_vector(ext1), wojciech_vector(ext2)
    hyp = all(W1.dot(k) == 0 and W2.dot(k) == 0 for k in kernel)
    M = ext1.A.minus_identity()
    d = W1 - W2
    n = image_membership(M, d)
    if n is not None:
        return CandidateFound(n, hyp)
    shown = "[" + "; ".join(" ".join(str(x) for x in r) for r in M.rows) + "]"
    if hyp:
        return Obstructed(f"gap {d} not in image of {shown}")
    witness = next(k for k in kernel if W1.dot(k) or W2.dot(k))
    return Inconclusive(f"gap {d} not in image of {shown}, but the Wojciech vectors "
                        f"are not orthogonal to the kernel vector {witness}")


# -- certificates ---------------------------------------------------------------------


def base_hash(G: Graph) -> str:
    return hashlib.sha256(serialize_graph(G).encode()).hexdigest()


def serialize_certificate(cert: Certificate) -> str:
    lines = [f"certificate {cert.mode}", f"base-sha256 {base_hash(cert.F.base)}"]
    for k, trace in ((1, cert.trace1), (2, cert.trace2)):
        lines.append(f"trace {k} {len(trace)}")
        lines += [f"  {format_move(m)}" for m in trace]
    lines.append("target")
    lines += ["  " + x for x in serialize_extension(cert.F).splitlines()]
    lines.append("end")
    return "\n".join(lines) + "\n"


class CertificateFormatError(ValueError):
    pass


def parse_certificate(text: str) -> tuple[Certificate, str]:
    """Returns the certificate and the base hash recorded in its header."""
    lines = [x for x in text.splitlines() if x.strip()]
    try:
        head = lines[0].split()
        if head[0] != "certificate" or len(head) != 2:
            raise CertificateFormatError("missing certificate header")
        mode = head[1]
        tag, digest = lines[1].split()
        if tag != "base-sha256":
            raise CertificateFormatError("missing base-sha256 line")
        pos = 2
        traces = []
        for k in (1, 2):
            tok = lines[pos].split()
            if tok[:2] != ["trace", str(k)] or len(tok) != 3:
                raise CertificateFormatError(f"expected 'trace {k} <count>'")
            count = int(tok[2])
            traces.append(tuple(parse_move(x.strip()) for x in lines[pos + 1: pos + 1 + count]))
            pos += 1 + count
        if lines[pos].strip() != "target" or lines[-1].strip() != "end":
            raise CertificateFormatError("missing target/end section")
        F = parse_extension("\n".join(x.strip() for x in lines[pos + 1:-1]))
    except (IndexError, ValueError) as exc:
        if isinstance(exc, CertificateFormatError):
            raise
        raise CertificateFormatError(str(exc)) from exc
    if mode not in MODES:
        raise CertificateFormatError(f"unknown mode {mode!r}")
    return Certificate(mode, traces[0], traces[1], F), digest


def _expected_change(before: SinkExtension, move, after: SinkExtension) -> list[str]:
    """Check the Wojciech change of an outsplitting move on a forest extension."""
    if not isinstance(move, (Outsplit, OutsplitAlongPath)) or not before.n:
        return []
    if not is_forest_extension(before):
        return []
    G = before.base
    M = before.A.minus_identity()
    e = before.graph.edge(move.edge)
    if isinstance(move, Outsplit):
        points = [e.source]
    else:
        points = [G.edge(x).range for x in move.path]
    target = next(s for s in before.sinks if s in before.graph.reachable_from(e.range))
    problems = []
    for k, s in enumerate(before.sinks, 1):
        delta = IntVector.zeros(G.order)
        if s == target:
            for p in points:
                delta = delta + M.column(p)
        got = wojciech_vector(after, k) - wojciech_vector(before, k)
        if got != delta:
            problems.append(f"{format_move(move)}: sink {k} changed by {got}, expected {delta}")
    return problems


def certificate_problems(cert: Certificate, ext1: SinkExtension, ext2: SinkExtension,
                         digest: str | None = None) -> list[str]:
    """Everything wrong with ``cert`` as a witness for (ext1, ext2); empty if valid."""
    problems = []
    if ext1.base != ext2.base:
        return ["the extensions have different base graphs"]
    if cert.F.base != ext1.base:
        problems.append("target F has a different base graph")
    if digest is not None and digest != base_hash(ext1.base):
        problems.append("base hash does not match the inputs")
    if not cert.F.is_simple():
        problems.append("target F is not simple")
    results = []
    for k, (ext, trace) in enumerate(((ext1, cert.trace1), (ext2, cert.trace2)), 1):
        cur = ext
        try:
            for idx, move in enumerate(trace):
                nxt = apply_move(cur, move)
                revalidate(nxt)
                problems += [f"trace {k} move {idx}: {p}" for p in _expected_change(cur, move, nxt)]
                cur = nxt
        except (MoveError, ExtensionError, ValueError, KeyError) as exc:
            problems.append(f"trace {k} move {idx} ({format_move(move)}): {exc}")
            return problems
        results.append(cur)
    R1, R2 = results
    if R1.n != R2.n or wojciech_vectors(R1) != wojciech_vectors(R2):
        problems.append("replayed extensions have different Wojciech vectors")
    for k, R in enumerate(results, 1):
        if not R.is_simple():
            problems.append(f"trace {k} does not end in a simple extension")
        elif not canonically_equal(R, cert.F):
            problems.append(f"trace {k} ends in an extension different from F")
    return problems


def verify_certificate(cert: Certificate, ext1: SinkExtension, ext2: SinkExtension,
                       digest: str | None = None) -> bool:
    return not certificate_problems(cert, ext1, ext2, digest)
