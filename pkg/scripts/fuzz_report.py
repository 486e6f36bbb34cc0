"""Seeded move walks with the invariant tracked for every builtin algebra.

Usage: python scripts/fuzz_report.py [--steps N] [--seed S] [--vertex-budget V]
"""

import argparse
import collections
import time

from hopfz.evaluator import EvalConfig, invariant
from hopfz.groups import builtin_groups
from hopfz.homcount import count_homs
from hopfz.hopf import builtin_algebras
from hopfz.moves import fuzz
from hopfz.ograph import lens, pi1, validate


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--steps", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--vertex-budget", type=int, default=10)
    args = ap.parse_args()
    algebras = builtin_algebras()
    groups = builtin_groups()
    quick = EvalConfig(cross_check=False)
    for start in (lens(2), lens(3)):
        t0 = time.perf_counter()
        trail = fuzz(start, args.seed, args.steps, args.vertex_budget)
        ref = {k: invariant(start, H) for k, H in algebras.items()}
        bad = []
        for i, step in enumerate(trail):
            g = step.graph
            if not validate(g).ok:
                bad.append((i, "invalid"))
            for k, H in algebras.items():
                if invariant(g, H, quick) != ref[k]:
                    bad.append((i, k))
            for k, G in groups.items():
                if count_homs(pi1(g), G) != ref[k]:
                    bad.append((i, f"hom {k}"))
        kinds = collections.Counter(s.kind.rsplit("-", 1)[0] for s in trail[1:])
        print(f"{start.name}: {len(trail) - 1} steps, max vertices "
              f"{max(s.graph.n for s in trail)}, {time.perf_counter() - t0:.1f}s")
        print(f"  moves: {dict(sorted(kinds.items()))}")
        print(f"  violations: {bad or 'none'}")


if __name__ == "__main__":
    main()
