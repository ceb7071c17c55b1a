"""Recompute the worked examples from the bundled fixtures and print a report."""
import argparse

from sinkext import fixtures
from sinkext.classify import (classify_1sink, classify_nsink, closure_of_sink,
                              embedding_obstruction, is_essential, k0_presentation,
                              saturated_hereditary_subsets, serialize_certificate,
                              verify_certificate, wojciech_gap)
from sinkext.extension import as_extension, outsplit, serialize_extension, star, wojciech_vector
from sinkext.graph import vertex_matrix


def fmt(sets):
    return ", ".join("{" + ",".join(sorted(s)) + "}" for s in sets)


def intro(show_cert):
    E1, E2, F = (fixtures.load(n) for n in ("E1_intro", "E2_intro", "F_intro"))
    print("== three-vertex base ==")
    print("A_G =", vertex_matrix(E1.base).tolist())
    print("W(E1) =", wojciech_vector(E1).format(), " W(E2) =", wojciech_vector(E2).format())
    print("gap:", wojciech_gap(E1, E2).describe())
    cert = classify_1sink(E1, E2, "essential")
    print("common simple extension W =", wojciech_vector(cert.F).format(),
          " verified:", verify_certificate(cert, E1, E2))
    print("W(F_intro) =", wojciech_vector(F).format(),
          " gap to E1:", wojciech_gap(F, E1).describe())
    if show_cert:
        print(serialize_certificate(cert))
    two1 = star(star(as_extension(E1.base), (1, 1, 2)), (1, 0, 3))
    two2 = star(star(as_extension(E1.base), (1, 1, 2)), (2, 0, 3))
    c2 = classify_nsink(two1, two2)
    print("2-sink pair:", len(c2.trace1), "+", len(c2.trace2), "moves, verified:",
          verify_certificate(c2, two1, two2))


def outsplit_figure():
    print("== single outsplitting ==")
    Z = fixtures.load("Z_fig")
    split, _ = outsplit(Z, "e")
    print(serialize_extension(split), end="")
    print("matches fixture:", serialize_extension(split) == serialize_extension(fixtures.load("Z_fig_split")))
    print("W:", wojciech_vector(Z).format(), "->", wojciech_vector(split).format())


def two_vertex_example():
    E1, E2 = fixtures.load("E1_ex26"), fixtures.load("E2_ex26")
    print("== two-vertex base ==")
    print("A_G =", vertex_matrix(E1.base).tolist())
    print("gap:", wojciech_gap(E1, E2).describe())
    print("essential:", is_essential(E1), is_essential(E2))
    print("closures:", fmt([closure_of_sink(E1)]), "vs", fmt([closure_of_sink(E2)]))
    for name, E in (("E1", E1), ("E2", E2)):
        sets = [s for s in saturated_hereditary_subsets(E.graph) if s]
        print(f"ideals of {name} ({len(sets)}):", fmt(sets))
    print("K0:", k0_presentation(E1), "and", k0_presentation(E2))


def three_loops():
    a, b = fixtures.load("o3_w1"), fixtures.load("o3_w2")
    print("== one vertex, three loops ==")
    print("K0:", k0_presentation(a), "and", k0_presentation(b))
    print(embedding_obstruction(a, b).describe())


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--show-cert", action="store_true")
    args = ap.parse_args()
    intro(args.show_cert)
    outsplit_figure()
    two_vertex_example()
    three_loops()


if __name__ == "__main__":
    main()
