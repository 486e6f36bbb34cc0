"""Evaluation of Z(Gamma; H) for closed o-graphs.

Two independent backends are provided.  The bead backend multiplies the
Heisenberg-double elements read along the circuit and applies the integral
formula for the Fock character.  The network backend never forms elements of
the Heisenberg double: it pushes a row vector of the Fock space through the
operator of each pass, keeping one open index per crossing whose first pass
has been seen, and closes with a trace.
"""

from __future__ import annotations

import os
import string
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exact import Tensor, einsum
from .heisenberg import HeisenbergDouble
from .hopf import HopfAlgebra, normalize_integrals, require_admissible
from .ograph import OGraph, validate

DEFAULT_BEAD_CAP = int(os.environ.get("HOPFZ_BUDGET_BEAD", 8))
DEFAULT_WIDTH_ENTRIES = int(os.environ.get("HOPFZ_BUDGET_WIDTH", 1 << 24))


class GraphTooLarge(ValueError):
    pass


class WidthBudgetExceeded(MemoryError):
    def __init__(self, width: int, dim: int, budget: int):
        super().__init__(f"contraction needs width {width} (dim^(1+w) = {dim ** (1 + width)} "
                         f"entries) over budget {budget}")
        self.width = width


class BackendMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class Token:
    vertex: int
    role: int
    barred: bool

    def __str__(self):
        return f"T{'b' if self.barred else ''}{self.role}[{self.vertex}]"


def bead_word(g: OGraph) -> list[Token]:
    """Over passes carry role 1, under passes role 2; negative vertices are barred."""
    return [Token(v, 1 if slot == "o" else 2, g.sign(v) < 0) for v, slot in g.circuit]


def format_word(word: Sequence[Token]) -> str:
    primes: dict[int, str] = {}
    out = []
    for t in word:
        mark = primes.setdefault(t.vertex, "'" * len(primes))
        out.append(f"T{'b' if t.barred else ''}{t.role}{mark}")
    return " ".join(out)


# ---------------------------------------------------------------- bead backend


def evaluate_bead(g: OGraph, H: HopfAlgebra, cap: int = DEFAULT_BEAD_CAP, hd: HeisenbergDouble | None = None):
    """chi_Fock of the circuit product, summed over one basis index per vertex."""
    if g.n > cap:
        raise GraphTooLarge(f"{g.n} vertices exceed the bead-backend cap {cap}")
    hd = hd or HeisenbergDouble(H)
    word = bead_word(g)
    beads = hd.beads
    index: dict[int, int] = {}
    total = H.field.zero

    def walk(pos: int, prefix: dict):
        nonlocal total
        if not prefix:
            return
        if pos == len(word):
            total += hd.chi_fock(prefix)
            return
        t = word[pos]
        comps = beads[(t.role, t.barred)]
        if t.vertex in index:
            walk(pos + 1, hd.mul(prefix, comps[index[t.vertex]]))
            return
        for i in range(hd.d):
            index[t.vertex] = i
            walk(pos + 1, hd.mul(prefix, comps[i]))
        del index[t.vertex]

    walk(0, hd.unit)
    return total


# ---------------------------------------------------------------- kernels


def pass_operators(H: HopfAlgebra, hd: HeisenbergDouble | None = None) -> dict[tuple[int, bool], Tensor]:
    """``(role, barred) -> P`` with ``P[i, a, b]`` the Fock matrix of the i-th bead component."""
    hd = hd or HeisenbergDouble(H)
    out = {}
    for key, comps in hd.beads.items():
        out[key] = Tensor.from_scalars(H.field, [hd.fock_action(c) for c in comps])
    return out


def crossing_kernel(H: HopfAlgebra, sign: int) -> Tensor:
    """Operator on H* (x) H* as ``K[s1, s2, c1, c2]``.

    Leg 1 is the over strand (role 1), leg 2 the under strand (role 2):
    ``g (x) h -> sum_i (T1_i . g) (x) (T2_i . h)`` with the barred components
    at a negative vertex.
    """
    ops = pass_operators(H)
    barred = sign < 0
    return einsum("iac,ibd->abcd", ops[(1, barred)], ops[(2, barred)])


# ---------------------------------------------------------------- network backend


def open_profile(g: OGraph) -> list[int]:
    """Number of half-consumed vertices after each pass of the circuit walk."""
    seen: set[int] = set()
    profile = []
    for v, _ in g.circuit:
        seen ^= {v}
        profile.append(len(seen))
    return profile


def width(g: OGraph) -> int:
    return max(open_profile(g))


def rotate_for_width(g: OGraph) -> OGraph:
    best, best_w = 0, None
    for shift in range(g.length):
        w = width(g.rotated(shift))
        if best_w is None or w < best_w:
            best, best_w = shift, w
    return g.rotated(best)


_LETTERS = string.ascii_letters


def evaluate_network(g: OGraph, H: HopfAlgebra, budget: int = DEFAULT_WIDTH_ENTRIES,
                     ops: dict | None = None):
    """Transfer-matrix contraction along the circuit with dense exact tensors."""
    d = H.dim
    w = width(g)
    if d ** (1 + w) > budget:
        raise WidthBudgetExceeded(w, d, budget)
    ops = ops or pass_operators(H)
    word = bead_word(g)
    total = H.field.zero
    for c in range(d):
        start = np.zeros(d, dtype=np.int64)
        start[c] = 1
        state = Tensor(H.field, start)
        legs: list[int] = []  # vertex per open axis, state axes = legs + [row]
        for t in word:
            P = ops[(t.role, t.barred)]
            letters = _LETTERS[:len(legs)]
            row, new, col = _LETTERS[len(legs)], _LETTERS[len(legs) + 1], _LETTERS[len(legs) + 2]
            if t.vertex in legs:
                k = legs.index(t.vertex)
                i = letters[k]
                rest = letters[:k] + letters[k + 1:]
                state = einsum(f"{letters}{row},{i}{row}{col}->{rest}{col}", state, P)
                legs.pop(k)
            else:
                state = einsum(f"{letters}{row},{new}{row}{col}->{letters}{new}{col}", state, P)
                legs.append(t.vertex)
        total += state[c]
    return total


def _sparse_ops(ops: dict) -> dict:
    out = {}
    for key, P in ops.items():
        entries = []
        for i in range(P.shape[0]):
            nz = np.nonzero(P.num[i])
            entries.append([(int(a), int(b), P[i, int(a), int(b)]) for a, b in zip(*nz)])
        out[key] = entries
    return out


def is_sparse_friendly(ops: dict) -> bool:
    """True when every pass matrix has at most one nonzero per row (group-like algebras)."""
    for P in ops.values():
        for i in range(P.shape[0]):
            if np.any(np.count_nonzero(P.num[i], axis=1) > 1):
                return False
    return True


def evaluate_sparse(g: OGraph, H: HopfAlgebra, budget: int = DEFAULT_WIDTH_ENTRIES,
                    ops: dict | None = None):
    """Same contraction as :func:`evaluate_network` with a dictionary state.

    Efficient when the pass matrices are partial permutations with
    multiplicity, as for a group algebra acting on its function algebra.
    """
    d = H.dim
    w = width(g)
    if d ** (1 + w) > budget:
        raise WidthBudgetExceeded(w, d, budget)
    sops = _sparse_ops(ops or pass_operators(H))
    by_row = {key: [{} for _ in range(d)] for key in sops}
    for key, per_i in sops.items():
        for i, entries in enumerate(per_i):
            for a, b, v in entries:
                by_row[key][a].setdefault(i, []).append((b, v))
    # state: (start, open indices in leg order, row) -> coefficient
    state = {(c, (), c): H.field.one for c in range(d)}
    legs: list[int] = []
    for t in bead_word(g):
        rows = by_row[(t.role, t.barred)]
        nxt: dict = {}
        if t.vertex in legs:
            k = legs.index(t.vertex)
            for (c, idx, a), coeff in state.items():
                for b, v in rows[a].get(idx[k], ()):
                    key = (c, idx[:k] + idx[k + 1:], b)
                    nxt[key] = nxt.get(key, 0) + coeff * v
            legs.pop(k)
        else:
            for (c, idx, a), coeff in state.items():
                for i, entries in rows[a].items():
                    for b, v in entries:
                        key = (c, idx + (i,), b)
                        nxt[key] = nxt.get(key, 0) + coeff * v
            legs.append(t.vertex)
        state = {k: v for k, v in nxt.items() if v}
    total = H.field.zero
    for (c, _, a), coeff in state.items():
        if a == c:
            total += coeff
    return total


# ---------------------------------------------------------------- entry point


@dataclass(frozen=True)
class EvalConfig:
    bead_cap: int = DEFAULT_BEAD_CAP
    width_budget: int = DEFAULT_WIDTH_ENTRIES
    rotate: bool = True
    cross_check: bool = True


@dataclass
class InvariantResult:
    graph: str
    algebra: str
    field: str
    value: object
    width: int
    backends: tuple[str, ...]
    seconds: float
    warnings: list[str] = field(default_factory=list)


def invariant_record(g: OGraph, H: HopfAlgebra, config: EvalConfig = EvalConfig()) -> InvariantResult:
    t0 = time.perf_counter()
    require_admissible(H)
    normalize_integrals(H)
    report = validate(g)
    warnings = []
    if not (report.C2 and report.C3):
        warnings.append("not verified to present a closed 3-manifold (C2/C3 fail)")
    h = rotate_for_width(g) if config.rotate else g
    hd = HeisenbergDouble(H)
    ops = pass_operators(H, hd)
    if is_sparse_friendly(ops):
        value, backends = evaluate_sparse(h, H, config.width_budget, ops), ["sparse-network"]
    else:
        value, backends = evaluate_network(h, H, config.width_budget, ops), ["network"]
    if config.cross_check and g.n <= config.bead_cap:
        bead = evaluate_bead(g, H, config.bead_cap, hd)
        if bead != value:
            raise BackendMismatch(f"bead {bead} != network {value} on {g.name or g.circuit}")
        backends.append("bead")
    return InvariantResult(g.name, H.name, H.field.name, value, width(h), tuple(backends),
                           time.perf_counter() - t0, warnings)


def invariant(g: OGraph, H: HopfAlgebra, config: EvalConfig = EvalConfig()):
    return invariant_record(g, H, config).value
