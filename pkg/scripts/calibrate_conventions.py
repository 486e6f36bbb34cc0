"""Pin the reading conventions of the evaluator and of the pi1 relations.

Two independent calibrations:

1. Reading convention.  The eight ways to read a circuit (swap which slot
   is role 1, reverse the walk, swap which sign is barred) are realized as
   graph transformations.  For each, the group-algebra invariant is compared
   with the homomorphism count on lens graphs and on random valid codes.
2. pi1 relations.  The per-vertex relations used by ``pi1`` are compared with
   the presentation read off the spine (arcs as generators, region boundary
   words as relators), whose hom count carries an extra factor |G|^(n-1).

Usage: python scripts/calibrate_conventions.py [--codes N] [--seed S]
"""

import argparse
import itertools
import random

from hopfz.evaluator import evaluate_sparse
from hopfz.groups import cyclic, quaternion8, symmetric3
from hopfz.homcount import count_homs
from hopfz.hopf import group_algebra
from hopfz.ograph import OGraph, lens, pi1, spine_presentation, validate


def random_valid(rng, count, max_n=4):
    out = []
    while len(out) < count:
        n = rng.randint(1, max_n)
        passes = [(v, s) for v in range(1, n + 1) for s in "ou"]
        rng.shuffle(passes)
        g = OGraph(n, tuple(rng.choice((1, -1)) for _ in range(n)), tuple(passes))
        if validate(g).ok:
            out.append(g)
    return out


def transform(g, swap_slots, flip_signs, reverse):
    circuit = list(g.circuit)
    if swap_slots:
        circuit = [(v, "u" if s == "o" else "o") for v, s in circuit]
    if reverse:
        circuit.reverse()
    signs = tuple(-s for s in g.signs) if flip_signs else g.signs
    return OGraph(g.n, signs, tuple(circuit))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--codes", type=int, default=40)
    ap.add_argument("--seed", type=int, default=5)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    groups = {"S3": symmetric3(), "Q8": quaternion8(), "Z4": cyclic(4)}
    algebras = {k: group_algebra(G) for k, G in groups.items()}
    lenses = [lens(p) for p in range(1, 7)]
    codes = random_valid(rng, args.codes)

    print("reading conventions (swap_slots, flip_signs, reverse): lens ok / random ok")
    for conv in itertools.product((False, True), repeat=3):
        def ok(gs):
            return all(evaluate_sparse(transform(g, *conv), algebras[k]) == count_homs(pi1(g), G)
                       for g in gs for k, G in groups.items())
        print(f"  {tuple(map(int, conv))}: {ok(lenses)!s:5} {ok(codes)}")

    agree = 0
    for g in codes:
        P, n = spine_presentation(g)
        agree += all(count_homs(pi1(g), G) * G.order ** (n - 1) == count_homs(P, G)
                     for G in groups.values())
    print(f"pi1 relations vs spine presentation: {agree}/{len(codes)} agree")


if __name__ == "__main__":
    main()
