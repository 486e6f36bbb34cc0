"""Closed normal o-graphs as signed Gauss codes.

An o-graph is stored as its single oriented circuit: a cyclic list of passes
``(vertex, slot)`` with ``slot`` either ``"o"`` (over) or ``"u"`` (under),
together with a sign per vertex.  Arc ``k`` is the piece of the circuit that
leaves pass ``k`` and enters pass ``k + 1`` (indices mod ``2n``).

The branched-spine conditions C2 and C3 are checked with a local sheet model
shipped as ``data/spine_rules.json``; the same model yields an independent
presentation of the fundamental group (:func:`spine_presentation`) used to
cross-check the vertex-relation presentation returned by :func:`pi1`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

SLOTS = ("o", "u")
Word = tuple[tuple[int, int], ...]


class ParseError(ValueError):
    """Malformed o-graph text; ``line`` is 1-based (0 when not line specific)."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class InvalidGraph(ValueError):
    pass


@dataclass(frozen=True)
class OGraph:
    n: int
    signs: tuple[int, ...]  # signs[v - 1] in {+1, -1}
    circuit: tuple[tuple[int, str], ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        object.__setattr__(self, "circuit", tuple((int(v), str(s)) for v, s in self.circuit))
        problems = structural_problems(self.n, self.signs, self.circuit)
        if problems:
            raise InvalidGraph("; ".join(problems))

    # ------------------------------------------------------------ accessors

    def sign(self, v: int) -> int:
        return self.signs[v - 1]

    @property
    def length(self) -> int:
        return len(self.circuit)

    def positions(self, v: int) -> dict[str, int]:
        """Circuit positions of the over and under passes of ``v``."""
        return {s: k for k, (w, s) in enumerate(self.circuit) if w == v}

    @property
    def pass_index(self) -> dict[tuple[int, str], int]:
        return {p: k for k, p in enumerate(self.circuit)}

    def rotated(self, shift: int) -> "OGraph":
        c = self.circuit
        shift %= len(c)
        return OGraph(self.n, self.signs, c[shift:] + c[:shift], self.name)

    def renamed(self, name: str) -> "OGraph":
        return OGraph(self.n, self.signs, self.circuit, name)

    def relabeled(self) -> "OGraph":
        """Vertices renumbered 1..n in order of first appearance along the circuit."""
        order: dict[int, int] = {}
        for v, _ in self.circuit:
            order.setdefault(v, len(order) + 1)
        signs = [0] * self.n
        for old, new in order.items():
            signs[new - 1] = self.signs[old - 1]
        return OGraph(self.n, tuple(signs), tuple((order[v], s) for v, s in self.circuit), self.name)

    def canonical(self) -> tuple:
        """Key identifying the code up to vertex relabeling and circuit rotation."""
        best = None
        for shift in range(self.length):
            g = self.rotated(shift).relabeled()
            key = (g.signs, g.circuit)
            if best is None or key < best:
                best = key
        return best

    def isomorphic(self, other: "OGraph") -> bool:
        return self.n == other.n and self.canonical() == other.canonical()

    def __str__(self) -> str:
        return serialize(self)


def structural_problems(n: int, signs: Sequence[int], circuit: Sequence[tuple[int, str]]) -> list[str]:
    problems = []
    if n < 1:
        problems.append("need at least one vertex")
    if len(signs) != n:
        problems.append(f"expected {n} signs, got {len(signs)}")
    if any(s not in (1, -1) for s in signs):
        problems.append("signs must be +1 or -1")
    if len(circuit) != 2 * n:
        problems.append(f"circuit has {len(circuit)} passes, expected {2 * n}")
    seen: dict[int, list[str]] = {}
    for v, s in circuit:
        if s not in SLOTS:
            problems.append(f"bad slot {s!r}")
        if not 1 <= v <= n:
            problems.append(f"vertex {v} out of range 1..{n}")
        seen.setdefault(v, []).append(s)
    for v in range(1, n + 1):
        slots = sorted(seen.get(v, []))
        if slots != ["o", "u"]:
            if "o" not in slots:
                problems.append(f"vertex {v} lacks an over pass")
            if "u" not in slots:
                problems.append(f"vertex {v} lacks an under pass")
            if len(slots) > 2 or len(set(slots)) < len(slots):
                problems.append(f"vertex {v} has a duplicate slot")
    return problems


# ---------------------------------------------------------------- text format

_PASS = re.compile(r"(\d+)([ou])")


def parse(text: str) -> OGraph:
    name, count, signs, passes = "", None, {}, []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        key, args = line[0], line[1:]
        if key == "ograph":
            if len(args) > 1:
                raise ParseError("ograph takes one name", lineno)
            name = args[0] if args else ""
        elif key == "n":
            if len(args) != 1 or not args[0].isdigit():
                raise ParseError("n takes one non-negative integer", lineno)
            count = int(args[0])
        elif key == "sign":
            if len(args) != 2 or not args[0].isdigit() or args[1] not in "+-" or len(args[1]) != 1:
                raise ParseError("expected 'sign <v> <+|->'", lineno)
            v = int(args[0])
            if v in signs:
                raise ParseError(f"sign of vertex {v} given twice", lineno)
            signs[v] = 1 if args[1] == "+" else -1
        elif key == "circuit":
            for tok in args:
                m = _PASS.fullmatch(tok)
                if not m:
                    raise ParseError(f"bad pass {tok!r}", lineno)
                passes.append((int(m.group(1)), m.group(2)))
        else:
            raise ParseError(f"unknown keyword {key!r}", lineno)
    if count is None:
        raise ParseError("missing 'n' line")
    if not passes:
        raise ParseError("empty circuit")
    for v in range(1, count + 1):
        if v not in signs:
            raise ParseError(f"sign missing for vertex {v}")
    extra = sorted(v for v in signs if not 1 <= v <= count)
    if extra:
        raise ParseError(f"sign given for unknown vertex {extra[0]}")
    problems = structural_problems(count, [signs[v] for v in range(1, count + 1)], passes)
    if problems:
        raise ParseError("; ".join(problems))
    return OGraph(count, tuple(signs[v] for v in range(1, count + 1)), tuple(passes), name)


def serialize(g: OGraph) -> str:
    lines = [f"ograph {g.name}" if g.name else "ograph", f"n {g.n}"]
    lines += [f"sign {v} {'+' if s > 0 else '-'}" for v, s in enumerate(g.signs, start=1)]
    lines.append("circuit " + " ".join(f"{v}{s}" for v, s in g.circuit))
    return "\n".join(lines) + "\n"


def from_code(code: str, signs: Iterable[int] | str | None = None, name: str = "") -> OGraph:
    """Shorthand constructor: ``from_code("1u 1o 2o 2u", "++")``."""
    passes = [(int(m.group(1)), m.group(2)) for m in map(_PASS.fullmatch, code.split())]
    n = len(passes) // 2
    if signs is None:
        signs = [1] * n
    elif isinstance(signs, str):
        signs = [1 if c == "+" else -1 for c in signs]
    return OGraph(n, tuple(signs), tuple(passes), name)


# ---------------------------------------------------------------- local sheet model


@lru_cache(maxsize=1)
def spine_rules() -> dict:
    raw = json.loads(resources.files("hopfz.data").joinpath("spine_rules.json").read_text())
    rules = {}
    for key, sign in (("+", 1), ("-", -1)):
        r = raw[key]
        rules[sign] = {
            "over": r["over"],
            "regions": [tuple(tuple(end.split(".")) for end in pair) for pair in r["regions"]],
            "chambers": {k: tuple(v) for k, v in r["chambers"].items()},
        }
    return rules


GERMS = ("R", "Llow", "Lhigh")


def _strand(sign: int, slot: str) -> str:
    over = spine_rules()[sign]["over"]
    if slot == "o":
        return over
    return "B" if over == "A" else "A"


def _half_edges(g: OGraph) -> dict[tuple[int, str], tuple[int, str]]:
    """``(vertex, "A_in")`` etc. -> ``(arc, "in"|"out")``; arcs enter at their end."""
    n2 = g.length
    out = {}
    for k, (v, slot) in enumerate(g.circuit):
        strand = _strand(g.sign(v), slot)
        out[(v, f"{strand}_in")] = ((k - 1) % n2, "end")
        out[(v, f"{strand}_out")] = (k, "start")
    return out


class _UnionFind:
    def __init__(self, items: Iterable):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def classes(self) -> int:
        return len({self.find(x) for x in self.parent})


def _region_links(g: OGraph) -> list[tuple[tuple[int, str, str], tuple[int, str, str]]]:
    """Germ joins at vertices as pairs of ``(arc, end, germ)``."""
    he = _half_edges(g)
    links = []
    for v in range(1, g.n + 1):
        for (h1, germ1), (h2, germ2) in spine_rules()[g.sign(v)]["regions"]:
            a1, e1 = he[(v, h1)]
            a2, e2 = he[(v, h2)]
            links.append(((a1, e1, germ1), (a2, e2, germ2)))
    return links


def region_count(g: OGraph) -> int:
    uf = _UnionFind((a, germ) for a in range(g.length) for germ in GERMS)
    for (a1, _, x1), (a2, _, x2) in _region_links(g):
        uf.union((a1, x1), (a2, x2))
    return uf.classes()


def chamber_graph_connected(g: OGraph) -> bool:
    """Connectivity of the trivalent graph dual to the local chambers."""
    uf = _UnionFind((v, c) for v in range(1, g.n + 1) for c in range(4))
    n2 = g.length
    for k, (v, slot) in enumerate(g.circuit):
        w, wslot = g.circuit[(k + 1) % n2]
        out_ch = spine_rules()[g.sign(v)]["chambers"][f"{_strand(g.sign(v), slot)}_out"]
        in_ch = spine_rules()[g.sign(w)]["chambers"][f"{_strand(g.sign(w), wslot)}_in"]
        for a, b in zip(out_ch, in_ch):
            uf.union((v, a), (w, b))
    return uf.classes() == 1


@dataclass(frozen=True)
class ValidationReport:
    N1: bool
    N2: bool
    C1: bool
    C2: bool
    C3: bool
    regions: int
    n: int

    @property
    def ok(self) -> bool:
        return all((self.N1, self.N2, self.C1, self.C2, self.C3))

    def items(self) -> list[tuple[str, bool]]:
        return [("N1", self.N1), ("N2", self.N2), ("C1", self.C1), ("C2", self.C2), ("C3", self.C3)]


def validate(g: OGraph) -> ValidationReport:
    n1 = len(g.signs) == g.n and all(s in (1, -1) for s in g.signs)
    n2 = all(sorted(s for w, s in g.circuit if w == v) == ["o", "u"] for v in range(1, g.n + 1))
    c1 = len(g.circuit) == 2 * g.n and {v for v, _ in g.circuit} == set(range(1, g.n + 1))
    regions = region_count(g)
    return ValidationReport(n1, n2, c1, chamber_graph_connected(g), regions == g.n + 1, regions, g.n)


# ---------------------------------------------------------------- builtin graphs


def lens(p: int) -> OGraph:
    """The p-vertex chain of positive crossings presenting L(p, 1).

    The circuit passes over vertices 1..p in order and then under p..1, so
    p = 1 and p = 2 read ``1u 1o`` and ``1u 1o 2o 2u``.
    """
    if p < 1:
        raise ValueError("lens(p) needs p >= 1")
    passes = [(1, "u")] + [(v, "o") for v in range(1, p + 1)] + [(v, "u") for v in range(p, 1, -1)]
    return OGraph(p, (1,) * p, tuple(passes), name=f"lens{p}")


@dataclass(frozen=True)
class SpliceSite:
    """An arc next to a kink, where another circuit may be inserted.

    A kink is a vertex whose two passes are consecutive along the circuit,
    over then under at a positive vertex or under then over at a negative
    one; its Fock operator is a rank-one projector.  ``side`` says whether
    the arc leaves the kink ("after") or enters it ("before").
    """

    arc: int
    vertex: int
    sign: int
    side: str


def splice_sites(g: OGraph) -> list[SpliceSite]:
    n2 = g.length
    sites = []
    for k, (v, slot) in enumerate(g.circuit):
        w, wslot = g.circuit[(k + 1) % n2]
        if w != v or n2 == 1:
            continue
        first = "o" if g.sign(v) > 0 else "u"
        if slot == first and wslot != first:
            sites.append(SpliceSite((k - 1) % n2, v, g.sign(v), "before"))
            sites.append(SpliceSite((k + 1) % n2, v, g.sign(v), "after"))
    return sorted(sites, key=lambda s: (s.side != "after", s.sign < 0, s.arc))


def compatible_sites(g1: OGraph, g2: OGraph) -> list[tuple[SpliceSite, SpliceSite]]:
    return [(a, b) for a in splice_sites(g1) for b in splice_sites(g2)
            if a.side == b.side and a.sign == b.sign]


def connected_sum(g1: OGraph, g2: OGraph, site1: SpliceSite | None = None,
                  site2: SpliceSite | None = None) -> OGraph:
    """Insert the circuit of ``g2`` into ``g1`` at a pair of matching kink arcs.

    Both arcs must sit on the same side of kinks of the same sign, so the two
    rank-one projectors separate the two circuits.  By default the first
    compatible pair is used (preferring arcs after positive kinks).
    """
    if site1 is None or site2 is None:
        pairs = compatible_sites(g1, g2)
        if site1 is not None:
            pairs = [p for p in pairs if p[0] == site1]
        if site2 is not None:
            pairs = [p for p in pairs if p[1] == site2]
        if not pairs:
            raise InvalidGraph("connected sum needs a kink of the same sign in both graphs")
        site1, site2 = pairs[0]
    elif (site1.side, site1.sign) != (site2.side, site2.sign):
        raise InvalidGraph("splice sites must have the same side and kink sign")
    for g, site in ((g1, site1), (g2, site2)):
        if site not in splice_sites(g):
            raise InvalidGraph(f"{site} is not a splice site of {g.name or 'graph'}")
    k1, k2 = site1.arc, site2.arc
    c2 = [(v + g1.n, s) for v, s in g2.circuit]
    c2 = c2[k2 + 1:] + c2[:k2 + 1]
    circuit = g1.circuit[:k1 + 1] + tuple(c2) + g1.circuit[k1 + 1:]
    name = f"{g1.name}#{g2.name}" if g1.name and g2.name else ""
    return OGraph(g1.n + g2.n, g1.signs + g2.signs, circuit, name)


# ---------------------------------------------------------------- fundamental group


@dataclass(frozen=True)
class Pi1Presentation:
    """Generators ``0..ngens-1`` with relations ``lhs = rhs`` between words.

    A word is a tuple of ``(generator, exponent)`` with exponent +1 or -1.
    """

    ngens: int
    relations: tuple[tuple[Word, Word], ...]
    names: tuple[str, ...] = field(default=())

    def relators(self) -> list[Word]:
        return [lhs + tuple((g, -e) for g, e in reversed(rhs)) for lhs, rhs in self.relations]

    def gen_name(self, g: int) -> str:
        return self.names[g] if self.names else f"x{g}"

    def format_word(self, w: Word) -> str:
        if not w:
            return "1"
        return "".join(self.gen_name(g) + ("" if e > 0 else "^-1") for g, e in w)

    def __str__(self) -> str:
        gens = ", ".join(self.gen_name(g) for g in range(self.ngens))
        rels = ", ".join(f"{self.format_word(l)}={self.format_word(r)}" for l, r in self.relations)
        return f"< {gens} | {rels} >"


def pi1(g: OGraph) -> Pi1Presentation:
    """Two relations per vertex on the arcs around it.

    With ``g_in, g_out`` the arcs entering and leaving the under pass and
    ``h_in, h_out`` those of the over pass: ``g_in = g_out`` always, and
    ``h_in g_in = h_out`` at a positive vertex, ``h_out g_in = h_in`` at a
    negative one.
    """
    n2 = g.length
    rels = []
    for v in range(1, g.n + 1):
        pos = g.positions(v)
        u, o = pos["u"], pos["o"]
        g_in, g_out = (u - 1) % n2, u
        h_in, h_out = (o - 1) % n2, o
        rels.append((((g_in, 1),), ((g_out, 1),)))
        if g.sign(v) > 0:
            rels.append((((h_in, 1), (g_in, 1)), ((h_out, 1),)))
        else:
            rels.append((((h_out, 1), (g_in, 1)), ((h_in, 1),)))
    return Pi1Presentation(n2, tuple(rels), tuple(f"a{k}" for k in range(n2)))


def spine_presentation(g: OGraph) -> tuple[Pi1Presentation, int]:
    """Cellular presentation of the 2-complex built from the sheet model.

    Generators are arcs (the 1-cells), relators are region boundaries read
    by walking each germ circuit.  Returns ``(presentation, vertex_count)``;
    the group is the edge-path groupoid, so hom counts must be divided by
    ``|G| ** (vertex_count - 1)``.
    """
    links = _region_links(g)
    partner = {}
    for a, b in links:
        partner[a] = b
        partner[b] = a
    seen = set()
    words = []
    for arc in range(g.length):
        for germ in GERMS:
            start = (arc, "start", germ)
            if start in seen:
                continue
            word = []
            cur = start
            while cur not in seen:
                a, end, x = cur
                other = "end" if end == "start" else "start"
                seen.add(cur)
                seen.add((a, other, x))
                word.append((a, 1 if end == "start" else -1))
                cur = partner[(a, other, x)]
            words.append(tuple(word))
    return Pi1Presentation(g.length, tuple((w, ()) for w in words)), g.n
