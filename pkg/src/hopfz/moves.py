"""Table-driven local moves on signed Gauss codes.

A move replaces a few contiguous pieces of the circuit ("legs") by others.
Both sides are bead words, the same notation the algebraic identities are
written in, so every move in the table is backed by an exact identity in the
Heisenberg double (checked in the test suite).  Reidemeister-type moves do not
change a Gauss code and are therefore absent.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .heisenberg import Bead, load_mp_table, parse_side
from .ograph import OGraph, validate

DEFAULT_VERTEX_BUDGET = 12

_BEAD = re.compile(r"(Tb|T)([12])\[(\w+)\]")


class StaleSite(ValueError):
    pass


class MoveBrokeGraph(AssertionError):
    """A move produced a graph violating the o-graph conditions."""


def parse_pattern(text: str) -> tuple[tuple[Bead, ...], ...]:
    legs = []
    for part in text.split("|"):
        leg = []
        for tok in part.split():
            m = _BEAD.fullmatch(tok)
            if not m:
                raise ValueError(f"bad bead {tok!r}")
            leg.append(Bead(m.group(3), int(m.group(2)), m.group(1) == "Tb"))
        legs.append(tuple(leg))
    return tuple(legs)


def format_pattern(legs: Sequence[Sequence[Bead]]) -> str:
    return " | ".join(" ".join(f"T{'b' if b.barred else ''}{b.role}[{b.label}]" for b in leg)
                      for leg in legs)


def _check_pattern(legs) -> None:
    seen: dict[str, list[Bead]] = {}
    for leg in legs:
        for b in leg:
            seen.setdefault(b.label, []).append(b)
    for label, beads in seen.items():
        if sorted(b.role for b in beads) != [1, 2] or len({b.barred for b in beads}) != 1:
            raise ValueError(f"vertex {label!r} must appear once per role with one sign")


@dataclass(frozen=True)
class MoveKind:
    name: str
    source: tuple[tuple[Bead, ...], ...]
    target: tuple[tuple[Bead, ...], ...]

    def __post_init__(self):
        if len(self.source) != len(self.target):
            raise ValueError(f"{self.name}: leg counts differ")
        _check_pattern(self.source)
        _check_pattern(self.target)

    @property
    def family(self) -> str:
        return self.name.rsplit("-", 1)[0]

    @property
    def delta(self) -> int:
        """Change in vertex count."""
        return (sum(map(len, self.target)) - sum(map(len, self.source))) // 2


def _mp_legs(text: str):
    return tuple(tuple(leg) for leg in parse_side(text))


@lru_cache(maxsize=1)
def move_table() -> dict[str, MoveKind]:
    """All move kinds by name, each direction separately."""
    raw = json.loads(resources.files("hopfz.data").joinpath("moves.json").read_text())
    kinds: dict[str, MoveKind] = {}

    def add(base, lhs, rhs, fwd, bwd):
        kinds[f"{base}-{fwd}"] = MoveKind(f"{base}-{fwd}", lhs, rhs)
        kinds[f"{base}-{bwd}"] = MoveKind(f"{base}-{bwd}", rhs, lhs)

    for entry in raw["moves"]:
        lhs, rhs = parse_pattern(entry["lhs"]), parse_pattern(entry["rhs"])
        if entry["name"].startswith("ZeroTwo"):
            add(entry["name"], lhs, rhs, "insert", "delete")
        else:
            add(entry["name"], lhs, rhs, "forward", "backward")
    for mp in load_mp_table():
        add(mp.name, _mp_legs(mp.lhs), _mp_legs(mp.rhs), "forward", "backward")
    return kinds


def kind_names(family: str | None = None) -> list[str]:
    names = sorted(move_table())
    return [n for n in names if family is None or n.startswith(family)]


# ---------------------------------------------------------------- matching


@dataclass(frozen=True)
class MoveSite:
    """Where a move applies.

    ``starts[k]`` is the circuit position of the first pass of leg ``k``.
    Empty legs are insertion points: they go before the pass at
    ``starts[k]``, and ``order`` breaks ties between legs inserted at the
    same point.  ``binding`` maps source labels to vertices.
    """

    kind: str
    starts: tuple[int, ...]
    binding: tuple[tuple[str, int], ...]
    order: tuple[int, ...] = ()


def _slot(role: int) -> str:
    return "o" if role == 1 else "u"


def _segments(g: OGraph, kind: MoveKind, starts) -> list[set[int]]:
    n2 = g.length
    return [{(s + i) % n2 for i in range(len(leg))} for s, leg in zip(starts, kind.source)]


def find_sites(g: OGraph, name: str) -> list[MoveSite]:
    """All placements of the source side of ``name`` in ``g``, in a fixed order."""
    kind = move_table()[name]
    if all(len(leg) == 0 for leg in kind.source):
        return _insertion_sites(g, kind)
    n2 = g.length
    legs = kind.source
    where: dict[str, list[tuple[int, int, int]]] = {}
    for k, leg in enumerate(legs):
        for i, b in enumerate(leg):
            where.setdefault(b.label, []).append((k, i, b.role))
    sites: dict[tuple, MoveSite] = {}

    def propagate(starts: list) -> bool:
        while True:
            bind = _bind(g, kind, starts)
            if bind is None:
                return False
            changed = False
            for label, v in bind.items():
                for k, i, role in where[label]:
                    if starts[k] is None:
                        starts[k] = (g.positions(v)[_slot(role)] - i) % n2
                        changed = True
            if not changed:
                return True

    def extend(starts: list):
        if None not in starts:
            segs = _segments(g, kind, starts)
            if sum(map(len, segs)) == len(set().union(*segs)):
                bind = _bind(g, kind, starts)
                sites.setdefault(tuple(starts), MoveSite(name, tuple(starts), tuple(sorted(bind.items()))))
            return
        k = starts.index(None)
        for v in range(1, g.n + 1):
            trial = list(starts)
            trial[k] = g.positions(v)[_slot(legs[k][0].role)]
            if propagate(trial):
                extend(trial)

    extend([None] * len(legs))
    return [sites[key] for key in sorted(sites)]


def _bind(g: OGraph, kind: MoveKind, starts) -> dict | None:
    """Label binding for the legs whose start is known; None on a mismatch."""
    n2 = g.length
    bind: dict[str, int] = {}
    used: dict[int, str] = {}
    for s, leg in zip(starts, kind.source):
        if s is None:
            continue
        for i, b in enumerate(leg):
            v, slot = g.circuit[(s + i) % n2]
            if slot != _slot(b.role) or (g.sign(v) < 0) != b.barred:
                return None
            if bind.setdefault(b.label, v) != v or used.setdefault(v, b.label) != b.label:
                return None
    return bind


def _insertion_sites(g: OGraph, kind: MoveKind) -> list[MoveSite]:
    n2 = g.length
    sites = []
    for a in range(n2):
        for b in range(n2):
            if a == b:
                sites.append(MoveSite(kind.name, (a, b), (), (0, 1)))
                sites.append(MoveSite(kind.name, (a, b), (), (1, 0)))
            else:
                sites.append(MoveSite(kind.name, (a, b), ()))
    return sites


# ---------------------------------------------------------------- rewriting


def apply(g: OGraph, site: MoveSite, check: bool = True) -> OGraph:
    """Rewrite ``g`` at ``site``; the result is re-validated when ``check``."""
    kind = move_table()[site.kind]
    n2 = g.length
    if any(len(leg) for leg in kind.source):
        bind = _bind(g, kind, list(site.starts))
        if bind is None or tuple(sorted(bind.items())) != site.binding:
            raise StaleSite(f"{site.kind} does not match at {site.starts}")
    removed = {v for _, v in site.binding}
    keep = [v for v in range(1, g.n + 1) if v not in removed]
    new_id = {v: i + 1 for i, v in enumerate(keep)}
    labels = []
    for leg in kind.target:
        for b in leg:
            if b.label not in labels:
                labels.append(b.label)
    fresh = {label: len(keep) + i + 1 for i, label in enumerate(labels)}
    signs = [g.sign(v) for v in keep]
    for label in labels:
        barred = next(b.barred for leg in kind.target for b in leg if b.label == label)
        signs.append(-1 if barred else 1)

    covered = set().union(*_segments(g, kind, site.starts)) if kind.source else set()
    inserts: dict[int, list[int]] = {}
    order = site.order or tuple(range(len(kind.source)))
    for k in order:
        inserts.setdefault(site.starts[k] % n2, []).append(k)
    circuit = []
    for p in range(n2):
        for k in inserts.get(p, ()):
            circuit.extend((fresh[b.label], _slot(b.role)) for b in kind.target[k])
        if p in covered:
            continue
        v, slot = g.circuit[p]
        circuit.append((new_id[v], slot))
    if not circuit:
        raise MoveBrokeGraph(f"{site.kind} would remove every vertex")
    out = OGraph(len(signs), tuple(signs), tuple(circuit), g.name)
    if check and not validate(out).ok:
        raise MoveBrokeGraph(f"{site.kind} at {site.starts} broke the o-graph conditions")
    return out


def admissible_sites(g: OGraph, name: str) -> list[MoveSite]:
    """Sites whose rewrite is again a closed normal o-graph with at least one vertex."""
    out = []
    kind = move_table()[name]
    if g.n + kind.delta < 1:
        return out
    for site in find_sites(g, name):
        try:
            h = apply(g, site, check=False)
        except MoveBrokeGraph:
            continue
        if validate(h).ok:
            out.append(site)
    return out


@dataclass(frozen=True)
class FuzzStep:
    kind: str
    graph: OGraph


def fuzz(g: OGraph, seed: int, steps: int, vertex_budget: int = DEFAULT_VERTEX_BUDGET,
         kinds: Sequence[str] | None = None) -> list[FuzzStep]:
    """Seeded random walk; the first entry is the start graph with kind ``"start"``."""
    rng = random.Random(seed)
    names = list(kinds) if kinds is not None else kind_names()
    table = move_table()
    trail = [FuzzStep("start", g)]
    cur = g
    for _ in range(steps):
        options = [n for n in names if 1 <= cur.n + table[n].delta <= vertex_budget]
        rng.shuffle(options)
        for name in options:
            sites = admissible_sites(cur, name)
            if sites:
                cur = apply(cur, rng.choice(sites))
                trail.append(FuzzStep(name, cur))
                break
        else:
            break
    return trail
