"""Finite groups as multiplication tables, plus the builtin registry."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class InvalidGroup(ValueError):
    pass


@dataclass(frozen=True)
class GroupTable:
    """Group on ``range(order)`` with ``table[g][h] = g*h`` and identity 0."""

    table: tuple[tuple[int, ...], ...]
    name: str = ""
    inverse: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        t = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", t)
        n = len(t)
        if n == 0 or any(len(r) != n for r in t):
            raise InvalidGroup("table must be a nonempty square")
        if any(not 0 <= x < n for r in t for x in r):
            raise InvalidGroup("table entries out of range")
        if any(t[0][g] != g or t[g][0] != g for g in range(n)):
            raise InvalidGroup("index 0 must be the identity")
        for g, h, k in itertools.product(range(n), repeat=3):
            if t[t[g][h]][k] != t[g][t[h][k]]:
                raise InvalidGroup(f"not associative at ({g},{h},{k})")
        inv = []
        for g in range(n):
            hs = [h for h in range(n) if t[g][h] == 0]
            if len(hs) != 1 or t[hs[0]][g] != 0:
                raise InvalidGroup(f"element {g} has no two-sided inverse")
            inv.append(hs[0])
        object.__setattr__(self, "inverse", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def power(self, g: int, k: int) -> int:
        x = 0
        for _ in range(k):
            x = self.table[x][g]
        return x

    def count_roots(self, k: int) -> int:
        """Number of g with g^k = e."""
        return sum(1 for g in range(self.order) if self.power(g, k) == 0)

    @classmethod
    def from_elements(cls, elements, op, name="") -> "GroupTable":
        """Build a table from a list of hashable elements (identity first)."""
        index = {x: i for i, x in enumerate(elements)}
        return cls(tuple(tuple(index[op(a, b)] for b in elements) for a in elements), name)


def cyclic(n: int) -> GroupTable:
    return GroupTable(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), f"Z{n}")


def _perm_group(gens, degree, name):
    ident = tuple(range(degree))
    elems = [ident]
    frontier = [ident]
    compose = lambda a, b: tuple(a[b[i]] for i in range(degree))  # noqa: E731
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in elems:
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    return GroupTable.from_elements(elems, compose, name)


def symmetric3() -> GroupTable:
    return _perm_group([(1, 0, 2), (1, 2, 0)], 3, "S3")


def dihedral4() -> GroupTable:
    # symmetries of the square acting on its corners
    return _perm_group([(1, 2, 3, 0), (3, 2, 1, 0)], 4, "D4")


def quaternion8() -> GroupTable:
    # elements (sign, unit) with unit in 1, i, j, k
    units = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
             ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
             ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
             ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1")}

    def op(a, b):
        s, u = units[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    elems = [(s, u) for s in (1, -1) for u in "1ijk"]
    return GroupTable.from_elements(elems, op, "Q8")


def builtin_groups() -> dict[str, GroupTable]:
    groups = {f"Z{n}": cyclic(n) for n in range(1, 9)}
    groups["S3"] = symmetric3()
    groups["D4"] = dihedral4()
    groups["Q8"] = quaternion8()
    return groups


def get_group(name: str) -> GroupTable:
    key = name.removeprefix("builtin:")
    if key.startswith("Q") and key[1:] in builtin_groups() and key != "Q8":
        key = key[1:]
    groups = builtin_groups()
    if key not in groups:
        raise KeyError(f"unknown group {name!r}; builtins: {', '.join(groups)}")
    return groups[key]
