"""Exhaustive search for p-vertex all-positive codes behaving like L(p,1).

For p = 3 and 4 every Gauss code with p positive vertices is tested for
validity and for |Hom(pi1, G)| = #{g : g^p = 1} over several groups.  The
shipped ``lens`` family must be among the survivors.
"""

import itertools
import sys

from hopfz.groups import cyclic, dihedral4, quaternion8, symmetric3
from hopfz.homcount import count_homs
from hopfz.ograph import OGraph, lens, pi1, validate

GROUPS = [symmetric3(), quaternion8(), dihedral4(), cyclic(6), cyclic(8)]


def survivors(p):
    passes = [(v, s) for v in range(1, p + 1) for s in "ou"]
    found = set()
    for rest in itertools.permutations(passes[1:]):
        g = OGraph(p, (1,) * p, (passes[0],) + rest)
        if not validate(g).ok:
            continue
        P = pi1(g)
        if all(count_homs(P, G) == G.count_roots(p) for G in GROUPS):
            found.add(g.canonical())
    return found


def main(ps=(3, 4)):
    for p in ps:
        found = survivors(p)
        mine = lens(p).canonical()
        print(f"p={p}: {len(found)} canonical codes survive; lens({p}) among them: {mine in found}")
        for key in sorted(found):
            print("   ", " ".join(f"{v}{s}" for v, s in key[1]))


if __name__ == "__main__":
    main(tuple(int(a) for a in sys.argv[1:]) or (3, 4))
