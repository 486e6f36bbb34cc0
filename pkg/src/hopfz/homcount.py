"""Counting homomorphisms from a finitely presented group into a finite group."""

from __future__ import annotations

from dataclasses import dataclass

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from .groups import GroupTable
from .ograph import Pi1Presentation, Word

DEFAULT_NODE_BUDGET = 2_000_000


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class HomSearch:
    count: int
    nodes: int
    witnesses: tuple[tuple[int, ...], ...]


def _merge_equalities(P: Pi1Presentation) -> tuple[list[int], list[Word]]:
    parent = list(range(P.ngens))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    rest = []
    for lhs, rhs in P.relations:
        if len(lhs) == 1 and len(rhs) == 1 and lhs[0][1] == rhs[0][1]:
            a, b = find(lhs[0][0]), find(rhs[0][0])
            if a != b:
                parent[max(a, b)] = min(a, b)
        else:
            rest.append(lhs + tuple((g, -e) for g, e in reversed(rhs)))
    rep = [find(g) for g in range(P.ngens)]
    return rep, [tuple((rep[g], e) for g, e in w) for w in rest]


def _eval(G: GroupTable, word, value) -> int:
    x = 0
    for g, e in word:
        y = value[g] if e > 0 else G.inverse[value[g]]
        x = G.table[x][y]
    return x


def search_homs(P: Pi1Presentation, G: GroupTable, node_budget: int = DEFAULT_NODE_BUDGET,
                max_witnesses: int = 0) -> HomSearch:
    """Depth-first enumeration of generator assignments satisfying every relation.

    Equalities between single generators are merged first.  Representatives
    are then assigned in increasing order; whenever a relator has a single
    unassigned generator occurring once, that generator is solved for.
    """
    rep, relators = _merge_equalities(P)
    free = sorted(set(rep))
    watching: dict[int, list[int]] = {g: [] for g in free}
    for r, w in enumerate(relators):
        for g in {g for g, _ in w}:
            watching[g].append(r)

    value: dict[int, int] = {}
    count = 0
    nodes = 0
    witnesses = []

    def solve(w) -> tuple[int, int] | None:
        unknown = [k for k, (g, _) in enumerate(w) if g not in value]
        if len(unknown) != 1:
            return None
        k = unknown[0]
        g, e = w[k]
        left = _eval(G, w[:k], value)
        right = _eval(G, w[k + 1:], value)
        # left * x^e * right = 1  =>  x^e = left^-1 right^-1
        xe = G.table[G.inverse[left]][G.inverse[right]]
        return g, xe if e > 0 else G.inverse[xe]

    def assign(g, x, trail) -> bool:
        value[g] = x
        trail.append(g)
        stack = [g]
        while stack:
            h = stack.pop()
            for r in watching[h]:
                w = relators[r]
                if all(a in value for a, _ in w):
                    if _eval(G, w, value) != 0:
                        return False
                    continue
                solved = solve(w)
                if solved is not None:
                    a, xa = solved
                    value[a] = xa
                    trail.append(a)
                    stack.append(a)
        return True

    def dfs(i):
        nonlocal count, nodes
        while i < len(free) and free[i] in value:
            i += 1
        if i == len(free):
            count += 1
            if len(witnesses) < max_witnesses:
                witnesses.append(tuple(value[rep[g]] for g in range(P.ngens)))
            return
        g = free[i]
        for x in range(G.order):
            nodes += 1
            if nodes > node_budget:
                raise SearchBudgetExceeded(f"homomorphism search exceeded {node_budget} nodes")
            trail: list[int] = []
            if assign(g, x, trail):
                dfs(i + 1)
            for a in trail:
                del value[a]

    dfs(0)
    return HomSearch(count, nodes, tuple(witnesses))


def count_homs(P: Pi1Presentation, G: GroupTable, node_budget: int = DEFAULT_NODE_BUDGET) -> int:
    return search_homs(P, G, node_budget).count


def relation_matrix(P: Pi1Presentation) -> list[list[int]]:
    rows = []
    for w in P.relators():
        row = [0] * P.ngens
        for g, e in w:
            row[g] += e
        rows.append(row)
    return rows


def abelianization(P: Pi1Presentation) -> tuple[int, tuple[int, ...]]:
    """``(rank, torsion)`` of the abelianized group; torsion factors are > 1."""
    rows = relation_matrix(P)
    if not rows:
        return P.ngens, ()
    factors = [abs(int(f)) for f in invariant_factors(Matrix(rows), domain=ZZ)]
    nonzero = [f for f in factors if f != 0]
    rank = P.ngens - len(nonzero)
    return rank, tuple(f for f in nonzero if f != 1)


def format_abelian(rank: int, torsion: tuple[int, ...]) -> str:
    parts = ["Z"] * rank + [f"Z/{t}" for t in torsion]
    return " + ".join(parts) if parts else "0"
