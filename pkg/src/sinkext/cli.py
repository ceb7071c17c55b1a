"""Command-line front end.

Exit codes: 0 success or positive verdict, 1 negative verdict (invalid
extension, obstruction, failed classification or verification), 2 usage or
parse errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path as FilePath

from . import fixtures
from .classify import (CertificateFormatError, ClassificationError, Obstructed,
                       certificate_problems, classify, closure_of_sink, embedding_obstruction,
                       is_essential, k0_presentation, parse_certificate, prim_skeleton,
                       saturated_hereditary_subsets, serialize_certificate)
from .extension import (ExtensionError, MoveError, SinkExtension, boundary, extension_to_dot,
                        is_tree_extension, outsplit, outsplit_along_path, parse_extension,
                        serialize_extension, simplify, star, wojciech_vectors)
from .graph import BoundExceeded, GraphFormatError, UnknownVertex, condition_K, maximal_tails
from .intlattice import IntVector

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path: str) -> SinkExtension:
    try:
        text = FilePath(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_extension(text)


def _set(s) -> str:
    return "{" + ",".join(sorted(s)) + "}"


def _vector_arg(ext: SinkExtension, text: str) -> IntVector:
    """Either ``w1=1,w2=0`` or positional ``1,0`` in base vertex order."""
    parts = [p for p in text.split(",") if p]
    try:
        if all("=" in p for p in parts):
            pairs = dict(p.split("=", 1) for p in parts)
            unknown = set(pairs) - set(ext.order)
            if unknown:
                raise UsageError(f"not base vertices: {_set(unknown)}")
            return IntVector.from_mapping(ext.order, {k: int(v) for k, v in pairs.items()})
        values = [int(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"bad vector {text!r}") from exc
    if len(values) != len(ext.order):
        raise UsageError(f"vector needs {len(ext.order)} entries, got {len(values)}")
    return IntVector.of(values, ext.order)


def cmd_validate(args, out) -> int:
    ext = _load(args.file)
    B0, B1 = boundary(ext)
    out.write("valid\n")
    out.write(f"sinks: {' '.join(ext.sinks) or '-'}\n")
    out.write(f"base vertices: {len(ext.base_vertices)}\n")
    out.write(f"H: {_set(ext.H)}\n")
    out.write(f"boundary vertices: {_set(B0)}\n")
    out.write(f"boundary edges: {_set(B1)}\n")
    out.write(f"simple: {'yes' if ext.is_simple() else 'no'}\n")
    out.write(f"tree: {'yes' if ext.n == 1 and is_tree_extension(ext) else 'no'}\n")
    return EXIT_OK


def cmd_wojciech(args, out) -> int:
    ext = _load(args.file)
    for k, W in enumerate(wojciech_vectors(ext), 1):
        out.write(f"W[{k}] sink {ext.sink(k)}: {W.format()}\n")
    return EXIT_OK


def cmd_simplify(args, out) -> int:
    out.write(serialize_extension(simplify(_load(args.file))[0]))
    return EXIT_OK


def cmd_outsplit(args, out) -> int:
    ext = _load(args.file)
    if args.along is None:
        new, _ = outsplit(ext, args.edge)
    else:
        path = tuple(x for x in args.along.split(",") if x and x != "-")
        new, _ = outsplit_along_path(ext, args.edge, path)
    out.write(serialize_extension(new))
    return EXIT_OK


def cmd_star(args, out) -> int:
    ext = _load(args.file)
    out.write(serialize_extension(star(ext, _vector_arg(ext, args.vector))))
    return EXIT_OK


def cmd_classify(args, out) -> int:
    e1, e2 = _load(args.first), _load(args.second)
    try:
        cert = classify(e1, e2, args.mode)
    except ClassificationError as exc:
        out.write(f"failed: {exc}\n")
        return EXIT_NEGATIVE
    text = serialize_certificate(cert)
    out.write(f"mode: {cert.mode}\n")
    out.write(f"trace 1: {len(cert.trace1)} moves\n")
    out.write(f"trace 2: {len(cert.trace2)} moves\n")
    for k, W in enumerate(wojciech_vectors(cert.F), 1):
        out.write(f"common W[{k}]: {W.format()}\n")
    if args.cert:
        FilePath(args.cert).write_text(text)
        out.write(f"certificate: {args.cert}\n")
    else:
        out.write(text)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    e1, e2 = _load(args.first), _load(args.second)
    try:
        text = FilePath(args.cert).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.cert}: {exc.strerror}") from exc
    try:
        cert, digest = parse_certificate(text)
    except CertificateFormatError as exc:
        out.write(f"rejected: malformed certificate: {exc}\n")
        return EXIT_NEGATIVE
    problems = certificate_problems(cert, e1, e2, digest)
    if problems:
        out.write("rejected\n")
        out.writelines(f"  {p}\n" for p in problems)
        return EXIT_NEGATIVE
    out.write(f"verified ({cert.mode})\n")
    return EXIT_OK


def cmd_k0(args, out) -> int:
    ext = _load(args.file)
    try:
        group = k0_presentation(ext)
    except ClassificationError as exc:
        out.write(f"failed: {exc}\n")
        return EXIT_NEGATIVE
    out.write(f"K0: {group}\n")
    out.write(f"free rank: {group.free_rank}\n")
    out.write(f"torsion: {' '.join(map(str, group.torsion)) or '-'}\n")
    return EXIT_OK


def cmd_ideals(args, out) -> int:
    ext = _load(args.file)
    subsets = saturated_hereditary_subsets(ext.graph, bound=args.bound)
    nonempty = [s for s in subsets if s]
    out.write(f"saturated hereditary subsets: {len(subsets)} ({len(nonempty)} nonempty)\n")
    out.writelines(f"  {_set(s)}\n" for s in subsets)
    out.write(f"essential: {'yes' if is_essential(ext) else 'no'}\n")
    for k in range(1, ext.n + 1):
        out.write(f"closure of sink {ext.sink(k)}: {_set(closure_of_sink(ext, k))}\n")
    return EXIT_OK


def cmd_prim(args, out) -> int:
    fam = prim_skeleton(_load(args.file))
    out.write(f"maximal tails: {len(fam.tails)}\n")
    out.writelines(f"  {_set(t)}\n" for t in fam.tails)
    for v in sorted(fam.sink_tails):
        out.write(f"sink {v}: {_set(fam.sink_tails[v])}\n")
    return EXIT_OK


def cmd_tails(args, out) -> int:
    ext = _load(args.file)
    tails = maximal_tails(ext.graph, bound=args.bound)
    out.write(f"maximal tails: {len(tails)}\n")
    out.writelines(f"  {_set(t)}\n" for t in tails)
    out.write(f"condition K: {'yes' if condition_K(ext.graph) else 'no'}\n")
    return EXIT_OK


def cmd_obstruct(args, out) -> int:
    e1, e2 = _load(args.first), _load(args.second)
    try:
        verdict = embedding_obstruction(e1, e2)
    except ClassificationError as exc:
        out.write(f"failed: {exc}\n")
        return EXIT_NEGATIVE
    out.write(verdict.describe() + "\n")
    return EXIT_NEGATIVE if isinstance(verdict, Obstructed) else EXIT_OK


def cmd_dot(args, out) -> int:
    ext = _load(args.file)
    out.write(extension_to_dot(ext, FilePath(args.file).stem))
    return EXIT_OK


def cmd_fixtures(args, out) -> int:
    for path in fixtures.write_fixtures(args.write):
        out.write(f"{path}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sinkext", description="Sink extensions of directed graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def one(name, func, help):
        s = sub.add_parser(name, help=help)
        s.add_argument("file")
        s.set_defaults(func=func)
        return s

    def two(name, func, help):
        s = sub.add_parser(name, help=help)
        s.add_argument("first")
        s.add_argument("second")
        s.set_defaults(func=func)
        return s

    one("validate", cmd_validate, "check the extension clauses")
    one("wojciech", cmd_wojciech, "print Wojciech vectors")
    one("simplify", cmd_simplify, "print the simplification")
    s = one("outsplit", cmd_outsplit, "boundary outsplitting")
    s.add_argument("--edge", required=True)
    s.add_argument("--along", help="comma-separated edge ids of a path ending at s(edge)")
    s = one("star", cmd_star, "adjoin a sink")
    s.add_argument("--vector", required=True, help="w1=1,w2=0 or 1,0 in sorted vertex order")
    s = two("classify", cmd_classify, "find a common simple extension")
    s.add_argument("--mode", default="auto",
                   choices=("auto", "essential", "closure", "af", "nsink"))
    s.add_argument("--cert")
    s = two("verify", cmd_verify, "replay a certificate")
    s.add_argument("--cert", required=True)
    one("k0", cmd_k0, "K0 presentation of a 1-sink extension")
    s = one("ideals", cmd_ideals, "saturated hereditary subsets")
    s.add_argument("--bound", type=int, default=20)
    one("prim", cmd_prim, "maximal tails and sink sets")
    s = one("tails", cmd_tails, "maximal tails of the whole graph")
    s.add_argument("--bound", type=int, default=20)
    two("obstruct", cmd_obstruct, "kernel-orthogonality obstruction")
    one("dot", cmd_dot, "Graphviz export")
    s = sub.add_parser("fixtures", help="write the bundled fixtures")
    s.add_argument("--write", required=True, metavar="DIR")
    s.set_defaults(func=cmd_fixtures)
    return p


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except ExtensionError as exc:
        out.writelines(f"{v}\n" for v in exc.violations)
        return EXIT_NEGATIVE
    except GraphFormatError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except (UsageError, BoundExceeded) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (MoveError, UnknownVertex, KeyError) as exc:
        out.write(f"failed: {exc}\n")
        return EXIT_NEGATIVE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
