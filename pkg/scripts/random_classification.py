"""Run the classifiers on random pairs with a known solution and tabulate outcomes.

Pairs are built as two simple extensions whose Wojciech gap is (A_G - I) n
for a random n, then scrambled by random outsplittings and simplifications.
"""
import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

from sinkext.classify import ClassificationError, classify, verify_certificate
from sinkext.generators import GraphConfig, random_gap_pair, random_graph, random_move_walk


@dataclass
class Config:
    seed: int = 0
    trials: int = 200
    max_vertices: int = 5
    max_parallel: int = 2
    walk: int = 3
    mode: str = "auto"


def run(cfg: Config) -> Counter:
    rng = random.Random(cfg.seed)
    tally: Counter = Counter()
    for _ in range(cfg.trials):
        G = random_graph(rng, GraphConfig(max_vertices=cfg.max_vertices,
                                          max_parallel=cfg.max_parallel, edge_prob=0.3))
        pair = random_gap_pair(rng, G)
        if pair is None:
            tally["no pair"] += 1
            continue
        E1 = random_move_walk(rng, pair[0], cfg.walk)
        E2 = random_move_walk(rng, pair[1], cfg.walk)
        try:
            cert = classify(E1, E2, cfg.mode)
        except ClassificationError:
            tally["hypotheses fail"] += 1
            continue
        ok = verify_certificate(cert, E1, E2)
        tally[f"{cert.mode}: {'verified' if ok else 'REJECTED'}"] += 1
    return tally


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--max-vertices", type=int, default=5)
    ap.add_argument("--mode", default="auto", choices=("auto", "essential", "closure", "af", "nsink"))
    args = ap.parse_args()
    cfg = Config(seed=args.seed, trials=args.trials, max_vertices=args.max_vertices, mode=args.mode)
    t0 = time.perf_counter()
    tally = run(cfg)
    for key in sorted(tally):
        print(f"{key:24s} {tally[key]}")
    print(f"elapsed {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
