"""The Heisenberg double H(H) = H* (x) H and its canonical element.

A degree-1 element is stored sparsely as ``{(i, j): c}`` meaning
``sum c * (e^i (x) e_j)``.  :class:`HeisenbergTensor` holds a dense element of
``H(H)^{(x) n}`` as an object array of shape ``(d, d) * n`` with axes ordered
``i1, j1, i2, j2, ...``.

Leg convention: ``T_{ab}`` puts the first tensor factor of ``T`` on leg ``a``
and the second on leg ``b``; every other leg carries the unit ``eps (x) 1``.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from typing import Sequence

import numpy as np

from .exact import Tensor, einsum, mat_mul
from .hopf import HopfAlgebra, UnsupportedAlgebra, is_involutory, normalize_integrals

DEFAULT_DIM_LIMIT = 8


class DegreeMismatch(ValueError):
    pass


def _add_into(acc: dict, key, c):
    v = acc.get(key)
    v = c if v is None else v + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class HeisenbergDouble:
    """Structure constants of H(H) and of its Fock representation on H*."""

    def __init__(self, H: HopfAlgebra, dim_limit: int = DEFAULT_DIM_LIMIT):
        from .hopf import AlgebraTooLarge
        if H.dim > dim_limit:
            raise AlgebraTooLarge(f"dimension {H.dim} exceeds limit {dim_limit}")
        self.H = H
        self.d = H.dim
        self.field = H.field

    # ------------------------------------------------------------ tables

    @cached_property
    def _table(self) -> dict:
        """``(i, a, j, b) -> {(s, t): c}`` for (e^i (x) e_a)(e^j (x) e_b)."""
        H = self.H
        # f.(a_(1) -> g) (x) a_(2) b with (e_p -> e^j) = sum_q M[q,p,j] e^q
        C = einsum("apr,qpj,siq,rbt->iajbst", H.comult, H.mult, H.comult, H.mult)
        table: dict = {}
        for idx in zip(*np.nonzero(C.num)):
            i, a, j, b, s, t = (int(x) for x in idx)
            table.setdefault((i, a, j, b), {})[(s, t)] = C[i, a, j, b, s, t]
        return table

    @cached_property
    def _fock_table(self) -> dict:
        """``(i, a) -> {(s, c): coeff}``: phi(e^i (x) e_a)(e^c) has e^s-coefficient coeff."""
        Phi = einsum("siq,qac->iasc", self.H.comult, self.H.mult)
        out: dict = {}
        for idx in zip(*np.nonzero(Phi.num)):
            i, a, s, c = (int(x) for x in idx)
            out.setdefault((i, a), {})[(s, c)] = Phi[i, a, s, c]
        return out

    # ------------------------------------------------------------ degree 1

    @property
    def unit(self) -> dict:
        eps, u = self.H.scalars("counit"), self.H.scalars("unit")
        return {(k, t): eps[k] * u[t] for k in range(self.d) for t in range(self.d)
                if eps[k] * u[t]}

    def basis(self, i: int, j: int) -> dict:
        return {(i, j): self.field.one}

    def mul(self, x: dict, y: dict) -> dict:
        table = self._table
        acc: dict = {}
        for (i, a), cx in x.items():
            for (j, b), cy in y.items():
                row = table.get((i, a, j, b))
                if row:
                    c = cx * cy
                    for key, v in row.items():
                        _add_into(acc, key, c * v)
        return acc

    def mul_many(self, factors: Sequence[dict]) -> dict:
        out = self.unit
        for f in factors:
            out = self.mul(out, f)
        return out

    @cached_property
    def beads(self) -> dict:
        """Components of T and Tbar: ``(role, barred) -> [element for index i]``."""
        d, H = self.d, self.H
        eps, u, S = H.scalars("counit"), H.scalars("unit"), H.S
        t1 = [{(k, i): eps[k] for k in range(d) if eps[k]} for i in range(d)]
        t2 = [{(i, t): u[t] for t in range(d) if u[t]} for i in range(d)]
        tb1 = [{(k, t): eps[k] * S[i][t] for k in range(d) for t in range(d) if eps[k] * S[i][t]}
               for i in range(d)]
        return {(1, False): t1, (2, False): t2, (1, True): tb1, (2, True): t2}

    # ------------------------------------------------------------ Fock space

    def fock_action(self, x: dict) -> list:
        """Matrix of g -> f.(a -> g) on H* in the dual basis (columns = images)."""
        d = self.d
        m = [[self.field.zero] * d for _ in range(d)]
        table = self._fock_table
        for (i, a), cx in x.items():
            for (s, c), v in table.get((i, a), {}).items():
                m[s][c] += cx * v
        return m

    def chi_fock(self, x: dict):
        """f(e_L) mu_R(a), summed over the terms of x."""
        if not is_involutory(self.H):
            raise UnsupportedAlgebra("chi_Fock via integrals needs an involutive antipode")
        data = normalize_integrals(self.H)
        return sum((c * data.e_L[i] * data.mu_R[a] for (i, a), c in x.items()),
                   start=self.field.zero)

    def lu_preimage(self, F: list) -> dict:
        """sum_{i,j} F(e^i) e^j (x) S^{-1}(e_j) e_i, an element mapped to F by phi."""
        H = self.H
        Ft = Tensor.from_scalars(self.field, F)
        Sinv = Tensor.from_scalars(self.field, H.S_inverse)
        X = einsum("ri,srj,jk,kit->st", Ft, H.comult, Sinv, H.mult)
        return {(int(s), int(t)): X[int(s), int(t)] for s, t in zip(*np.nonzero(X.num))}

    # ------------------------------------------------------------ degree n

    def h_mul(self, x: "HeisenbergTensor", y: "HeisenbergTensor") -> "HeisenbergTensor":
        """Factorwise product in H(H)^{(x) n}."""
        if x.degree != y.degree:
            raise DegreeMismatch(f"degrees {x.degree} and {y.degree}")
        table = self._table
        acc: dict = {}
        xs, ys = x.sparse(), y.sparse()
        for ka, ca in xs.items():
            for kb, cb in ys.items():
                rows = [table.get(a + b) for a, b in zip(ka, kb)]
                if not all(rows):
                    continue
                c = ca * cb
                for combo in itertools.product(*(r.items() for r in rows)):
                    v = c
                    for _, w in combo:
                        v = v * w
                    _add_into(acc, tuple(k for k, _ in combo), v)
        return HeisenbergTensor.from_sparse(self, x.degree, acc)

    def unit_tensor(self, n: int) -> "HeisenbergTensor":
        u = list(self.unit.items())
        acc = {}
        for combo in itertools.product(u, repeat=n):
            v = self.field.one
            for _, c in combo:
                v = v * c
            acc[tuple(k for k, _ in combo)] = v
        return HeisenbergTensor.from_sparse(self, n, acc)

    def embed(self, pairs: dict[int, dict], n: int) -> "HeisenbergTensor":
        """Simple tensor with the given degree-1 elements on the given legs (1-based)."""
        parts = [pairs.get(leg, self.unit) for leg in range(1, n + 1)]
        return HeisenbergTensor.from_sparse(self, n, _outer(parts))

    def canonical_T(self) -> "HeisenbergTensor":
        return self.word_sum([[Bead("T", 1, False)], [Bead("T", 2, False)]])

    def canonical_Tbar(self) -> "HeisenbergTensor":
        return self.word_sum([[Bead("T", 1, True)], [Bead("T", 2, True)]])

    def leg_embedded(self, barred: bool, a: int, b: int, n: int) -> "HeisenbergTensor":
        legs: list[list[Bead]] = [[] for _ in range(n)]
        legs[a - 1].append(Bead("T", 1, barred))
        legs[b - 1].append(Bead("T", 2, barred))
        return self.word_sum(legs)

    def word_sum(self, legs: Sequence[Sequence["Bead"]]) -> "HeisenbergTensor":
        """sum over one index per crossing label of the leg-wise bead products."""
        return HeisenbergTensor.from_sparse(self, len(legs), self.word_sum_sparse(legs))

    def word_sum_sparse(self, legs: Sequence[Sequence["Bead"]]) -> dict:
        labels: dict[str, bool] = {}
        for leg in legs:
            for bead in leg:
                if labels.setdefault(bead.label, bead.barred) != bead.barred:
                    raise ValueError(f"crossing {bead.label!r} used both barred and unbarred")
        order = sorted(labels)
        pos = {lab: k for k, lab in enumerate(order)}
        d = self.d
        comps = self.beads
        per_leg = []
        for leg in legs:
            leg_labels = sorted({b.label for b in leg}, key=pos.get)
            cache = {}
            for vals in itertools.product(range(d), repeat=len(leg_labels)):
                env = dict(zip(leg_labels, vals))
                el = self.mul_many([comps[(b.role, b.barred)][env[b.label]] for b in leg])
                if el:
                    cache[vals] = el
            per_leg.append(([pos[lab] for lab in leg_labels], cache))
        acc: dict = {}
        for vals in itertools.product(range(d), repeat=len(order)):
            parts = []
            for idxs, cache in per_leg:
                el = cache.get(tuple(vals[k] for k in idxs))
                if el is None:
                    break
                parts.append(el)
            else:
                for key, c in _outer(parts).items():
                    _add_into(acc, key, c)
        return acc


def _outer(parts: Sequence[dict]) -> dict:
    out = {(): None}
    for p in parts:
        nxt = {}
        for k, c in out.items():
            for kk, cc in p.items():
                nxt[k + (kk,)] = cc if c is None else c * cc
        out = nxt
    return out


@dataclass(frozen=True)
class Bead:
    """One tensor factor of a crossing: ``role`` 1 or 2 of T (or Tbar if barred)."""

    label: str
    role: int
    barred: bool

    def __str__(self):
        return f"T{'b' if self.barred else ''}{self.role}" + (f"[{self.label}]" if self.label else "")


class HeisenbergTensor:
    """Dense element of H(H)^{(x) n}; coefficient array of shape (d, d) * n."""

    def __init__(self, hd: HeisenbergDouble, degree: int, coeffs: np.ndarray):
        if coeffs.shape != (hd.d,) * (2 * degree):
            raise ValueError(f"expected shape {(hd.d,) * (2 * degree)}, got {coeffs.shape}")
        self.hd = hd
        self.degree = degree
        self.coeffs = coeffs

    @classmethod
    def from_sparse(cls, hd: HeisenbergDouble, degree: int, acc: dict) -> "HeisenbergTensor":
        arr = np.full((hd.d,) * (2 * degree), hd.field.zero, dtype=object)
        for key, c in acc.items():
            arr[tuple(x for pair in key for x in pair)] = c
        return cls(hd, degree, arr)

    def sparse(self) -> dict:
        out = {}
        for idx in zip(*np.nonzero(self.coeffs != 0)):
            idx = tuple(int(x) for x in idx)
            out[tuple(idx[k:k + 2] for k in range(0, len(idx), 2))] = self.coeffs[idx]
        return out

    def element(self) -> dict:
        if self.degree != 1:
            raise DegreeMismatch("element() needs degree 1")
        return {k[0]: c for k, c in self.sparse().items()}

    @property
    def nnz(self) -> int:
        return int(np.count_nonzero(self.coeffs != 0))

    def __mul__(self, other: "HeisenbergTensor") -> "HeisenbergTensor":
        return self.hd.h_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, HeisenbergTensor):
            return NotImplemented
        return self.degree == other.degree and bool(np.all(self.coeffs == other.coeffs))

    __hash__ = None

    def __repr__(self):
        return f"HeisenbergTensor(degree={self.degree}, nnz={self.nnz})"


# ---------------------------------------------------------------- formulas

_TOKEN = re.compile(r"(Tb|T)(\d)('*)")
_FACTOR = re.compile(r"(Tb|T)(\d)(\d)")


def parse_product(text: str) -> list[list[Bead]]:
    """``"Tb21 T13 T21"`` -> per-leg bead lists (3 legs); each factor is its own crossing."""
    legs: list[list[Bead]] = [[], [], []]
    for k, tok in enumerate(text.split()):
        m = _FACTOR.fullmatch(tok)
        if not m:
            raise ValueError(f"bad factor {tok!r}")
        barred = m.group(1) == "Tb"
        a, b = int(m.group(2)), int(m.group(3))
        label = f"x{k}"
        legs[a - 1].append(Bead(label, 1, barred))
        legs[b - 1].append(Bead(label, 2, barred))
    return legs


def parse_legs(text: str) -> list[list[Bead]]:
    """``"T2' T1 Tb2 | Tb1 T1' | T2"`` -> per-leg bead lists; primes name distinct crossings."""
    legs = []
    for part in text.split("|"):
        leg = []
        for tok in part.split():
            m = _TOKEN.fullmatch(tok)
            if not m:
                raise ValueError(f"bad bead {tok!r}")
            barred = m.group(1) == "Tb"
            leg.append(Bead(("b" if barred else "t") + m.group(3), int(m.group(2)), barred))
        legs.append(leg)
    return legs


def parse_side(text: str) -> list[list[Bead]]:
    return parse_legs(text) if "|" in text else parse_product(text)


@dataclass(frozen=True)
class MPIdentity:
    name: str
    lhs: str
    rhs: str

    @property
    def lhs_legs(self):
        return parse_side(self.lhs)

    @property
    def rhs_legs(self):
        return parse_side(self.rhs)


def load_mp_table() -> list[MPIdentity]:
    data = json.loads(resources.files("hopfz.data").joinpath("mp_identities.json").read_text())
    return [MPIdentity(e["name"], e["lhs"], e["rhs"]) for e in data["identities"]]


# ---------------------------------------------------------------- identity checks


def check_inverse(hd: HeisenbergDouble) -> bool:
    T, Tb = hd.canonical_T(), hd.canonical_Tbar()
    one = hd.unit_tensor(2)
    return hd.h_mul(T, Tb) == one and hd.h_mul(Tb, T) == one


def check_pentagon(hd: HeisenbergDouble) -> bool:
    """T12 T13 T23 == T23 T12 in H(H)^{(x) 3}."""
    return hd.word_sum(parse_product("T12 T13 T23")) == hd.word_sum(parse_product("T23 T12"))


def check_zero_two(hd: HeisenbergDouble) -> bool:
    """sum_{i,j} e^i e^j (x) S(e_j) e_i == eps (x) 1."""
    legs = [[Bead("t", 2, False), Bead("b", 2, True), Bead("b", 1, True), Bead("t", 1, False)]]
    return hd.word_sum_sparse(legs) == {(k,): c for k, c in hd.unit.items()}


def check_mp_identities(hd: HeisenbergDouble) -> dict[str, bool]:
    return {m.name: hd.word_sum(m.lhs_legs) == hd.word_sum(m.rhs_legs) for m in load_mp_table()}


def identity_report(hd: HeisenbergDouble) -> dict[str, bool]:
    report = {"pentagon": check_pentagon(hd), "zero-two": check_zero_two(hd)}
    report.update(check_mp_identities(hd))
    return report


def check_fock_homomorphism(hd: HeisenbergDouble, x: dict, y: dict) -> bool:
    return hd.fock_action(hd.mul(x, y)) == mat_mul(hd.fock_action(x), hd.fock_action(y))
