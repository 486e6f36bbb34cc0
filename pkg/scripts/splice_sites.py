"""Which arcs can be cut to form a connected sum.

Part 1 splices lens(2) with lens(2) at every pair of arcs and reports
validity and whether Z is multiplicative over the group algebras.  Part 2
checks every compatible kink site for lens(1..4) against all builtin
algebras.
"""

import itertools

from hopfz.evaluator import EvalConfig, invariant
from hopfz.hopf import builtin_algebras
from hopfz.ograph import OGraph, compatible_sites, connected_sum, lens, validate


def plain_splice(g1, g2, k1, k2):
    """Cut g1 after position k1 and g2 after k2, then cross-join."""
    shift = g1.n
    c2 = [(v + shift, s) for v, s in g2.circuit]
    c2 = c2[k2 + 1:] + c2[:k2 + 1]
    circuit = g1.circuit[:k1 + 1] + tuple(c2) + g1.circuit[k1 + 1:]
    return OGraph(g1.n + g2.n, g1.signs + g2.signs, circuit)


def main():
    algebras = builtin_algebras()
    quick = EvalConfig(cross_check=False)
    g = lens(2)
    print("lens2 # lens2 by plain splice (k1, k2): valid, multiplicative")
    for k1, k2 in itertools.product(range(g.length), repeat=2):
        h = plain_splice(g, g, k1, k2)
        ok = validate(h).ok
        mult = ok and all(invariant(h, H, quick) == invariant(g, H) ** 2
                          for H in algebras.values())
        print(f"  ({k1}, {k2}): {ok!s:5} {mult}")

    print("compatible kink sites, lens(a) # lens(b):")
    for a, b in itertools.product(range(1, 5), repeat=2):
        g1, g2 = lens(a), lens(b)
        sites = compatible_sites(g1, g2)
        good = 0
        for s1, s2 in sites:
            h = connected_sum(g1, g2, s1, s2)
            good += validate(h).ok and all(
                invariant(h, H, quick) == invariant(g1, H, quick) * invariant(g2, H, quick)
                for H in algebras.values())
        print(f"  ({a}, {b}): {good}/{len(sites)} sites valid and multiplicative")


if __name__ == "__main__":
    main()
