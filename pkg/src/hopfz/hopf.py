"""Finite-dimensional Hopf algebras given by structure constants.

Conventions (basis ``e_0 .. e_{d-1}``):

* ``mult[i, j, k]``: coefficient of ``e_k`` in ``e_i e_j``
* ``unit[k]``: coefficient of ``e_k`` in ``1``
* ``comult[k, i, j]``: coefficient of ``e_i (x) e_j`` in ``Delta(e_k)``
* ``counit[i]``: ``eps(e_i)``
* ``antipode[i, j]``: coefficient of ``e_j`` in ``S(e_i)``

Functionals on H are coordinate vectors in the dual basis ``e^i``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from pathlib import Path

import numpy as np

from .exact import Field, QQ, Tensor, einsum, solve_nullspace
from .groups import GroupTable, builtin_groups, get_group


class UnsupportedAlgebra(ValueError):
    """The algebra violates a hypothesis required by the invariant."""


class IntegralSpaceDimension(ValueError):
    pass


class DegeneratePairing(ValueError):
    pass


class AlgebraTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class IntegralData:
    mu_R: tuple
    mu_L: tuple
    e_L: tuple
    e_R: tuple


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    dim: int
    field: Field
    mult: Tensor
    unit: Tensor
    comult: Tensor
    counit: Tensor
    antipode: Tensor
    name: str = ""
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        d = self.dim
        expected = {"mult": (d, d, d), "unit": (d,), "comult": (d, d, d),
                    "counit": (d,), "antipode": (d, d)}
        for key, shp in expected.items():
            t = getattr(self, key)
            if t.shape != shp:
                raise ValueError(f"{key} has shape {t.shape}, expected {shp}")
            if t.field != self.field:
                raise ValueError(f"{key} is over {t.field.name}, algebra over {self.field.name}")

    def __eq__(self, other):
        if not isinstance(other, HopfAlgebra):
            return NotImplemented
        return (self.dim == other.dim and self.field == other.field
                and all(getattr(self, k) == getattr(other, k)
                        for k in ("mult", "unit", "comult", "counit", "antipode")))

    __hash__ = object.__hash__

    # ------------------------------------------------------------ structure

    def scalars(self, key: str):
        return getattr(self, key).to_scalars()

    @cached_property
    def S(self) -> list:
        return self.antipode.to_scalars()

    @cached_property
    def S_inverse(self) -> list:
        from .exact import inverse
        return inverse(self.S)

    def apply_antipode(self, v) -> list:
        """Coordinates of S(x) for x with coordinates v."""
        S = self.S
        d = self.dim
        return [sum((v[i] * S[i][j] for i in range(d)), start=self.field.zero) for j in range(d)]

    def to_json(self) -> dict:
        fmt = lambda t: np.vectorize(self.field.format, otypes=[object])(  # noqa: E731
            np.array(t.to_scalars(), dtype=object)).tolist()
        return {"name": self.name, "dim": self.dim, "field": self.field.to_json(),
                "mult": fmt(self.mult), "unit": fmt(self.unit), "comult": fmt(self.comult),
                "counit": fmt(self.counit), "antipode": fmt(self.antipode)}

    @classmethod
    def from_json(cls, data: dict) -> "HopfAlgebra":
        fld = Field.parse(data.get("field", "Q"))
        d = int(data["dim"])
        conv = lambda x: Tensor.from_scalars(  # noqa: E731
            fld, np.vectorize(fld.parse_scalar, otypes=[object])(np.array(x, dtype=object)))
        return cls(d, fld, conv(data["mult"]), conv(data["unit"]), conv(data["comult"]),
                   conv(data["counit"]), conv(data["antipode"]), data.get("name", ""))

    @classmethod
    def load(cls, path) -> "HopfAlgebra":
        data = json.loads(Path(path).read_text())
        if "table" in data:
            return group_algebra(group_from_json(data), Field.parse(data.get("field", "Q")))
        return cls.from_json(data)


def group_from_json(data: dict) -> GroupTable:
    g = GroupTable(tuple(tuple(r) for r in data["table"]), data.get("name", ""))
    if "order" in data and int(data["order"]) != g.order:
        raise ValueError("order does not match table size")
    return g


# ---------------------------------------------------------------- constructions


def group_algebra(G: GroupTable, field: Field = QQ) -> HopfAlgebra:
    n = G.order
    mult = np.zeros((n, n, n), dtype=np.int64)
    comult = np.zeros((n, n, n), dtype=np.int64)
    antipode = np.zeros((n, n), dtype=np.int64)
    for g in range(n):
        for h in range(n):
            mult[g, h, G.mul(g, h)] = 1
        comult[g, g, g] = 1
        antipode[g, G.inverse[g]] = 1
    unit = np.zeros(n, dtype=np.int64)
    unit[0] = 1
    return HopfAlgebra(n, field, Tensor(field, mult), Tensor(field, unit), Tensor(field, comult),
                       Tensor(field, np.ones(n, dtype=np.int64)), Tensor(field, antipode),
                       G.name or f"group{n}")


def dual(H: HopfAlgebra) -> HopfAlgebra:
    """The dual Hopf algebra H* in the dual basis."""
    name = H.name[:-1] if H.name.endswith("*") else (H.name + "*" if H.name else "")
    return HopfAlgebra(H.dim, H.field,
                       mult=H.comult.transpose(1, 2, 0),
                       unit=H.counit,
                       comult=H.mult.transpose(2, 0, 1),
                       counit=H.unit,
                       antipode=H.antipode.transpose(1, 0),
                       name=name)


def function_algebra(G: GroupTable, field: Field = QQ) -> HopfAlgebra:
    return dual(group_algebra(G, field))


def restricted_borel_f2() -> HopfAlgebra:
    """Restricted enveloping algebra of the 2-dim non-abelian Lie algebra over F_2.

    Basis ``1, x, y, xy`` with ``x^2 = x``, ``y^2 = 0``, ``yx = xy + y`` and
    ``x``, ``y`` primitive.  It is involutory and counimodular but not
    unimodular, which makes it a useful negative control.
    """
    f = Field(2)
    one, x, y, xy = range(4)
    products = {(x, x): [x], (x, y): [xy], (x, xy): [xy], (y, x): [xy, y]}
    mult = np.zeros((4, 4, 4), dtype=np.int64)
    for b in range(4):
        mult[one, b, b] = mult[b, one, b] = 1
    for (a, b), terms in products.items():
        for t in terms:
            mult[a, b, t] = 1
    comult = np.zeros((4, 4, 4), dtype=np.int64)
    comult[one, one, one] = 1
    for p in (x, y):
        comult[p, p, one] = comult[p, one, p] = 1
    for a, b in ((xy, one), (x, y), (y, x), (one, xy)):
        comult[xy, a, b] = 1
    antipode = np.eye(4, dtype=np.int64)
    antipode[xy, y] = 1
    unit = np.array([1, 0, 0, 0])
    return HopfAlgebra(4, f, Tensor(f, mult), Tensor(f, unit), Tensor(f, comult),
                       Tensor(f, unit.copy()), Tensor(f, antipode), "u(b)")


def builtin_algebras(field: Field = QQ) -> dict[str, HopfAlgebra]:
    """Q[Z/n] for n <= 8, Q[S3], Q[D4], Q[Q8] and the dual of each."""
    out = {}
    for name, G in builtin_groups().items():
        out[name] = group_algebra(G, field)
    for name in list(out):
        out[name + "*"] = dual(out[name])
    return out


def get_algebra(source: str, field: Field = QQ) -> HopfAlgebra:
    """Resolve ``builtin:S3``, ``S3*``, ``QS3``, ``dual(Z3)`` or a file path."""
    s = source.strip()
    if s.startswith("builtin:"):
        s = s[len("builtin:"):]
    if s.startswith("dual(") and s.endswith(")"):
        return dual(get_algebra(s[5:-1], field))
    if s.endswith("*") and not Path(s).exists():
        return dual(get_algebra(s[:-1], field))
    try:
        return group_algebra(get_group(s), field)
    except KeyError:
        pass
    if Path(s).exists():
        return HopfAlgebra.load(s)
    raise KeyError(f"unknown algebra {source!r}")


# ---------------------------------------------------------------- axioms


def validate_hopf(H: HopfAlgebra) -> dict[str, bool]:
    """Exact check of every Hopf algebra axiom; returns ``{axiom: verdict}``."""
    f, d = H.field, H.dim
    M, u, D, e, S = H.mult, H.unit, H.comult, H.counit, H.antipode
    I = Tensor.eye(f, d)
    u_e = einsum("l,k->kl", u, e)
    report = {
        "associativity": einsum("ijm,mkl->ijkl", M, M) == einsum("jkm,iml->ijkl", M, M),
        "unit": einsum("a,ajk->jk", u, M) == I and einsum("a,jak->jk", u, M) == I,
        "coassociativity": einsum("kmc,mab->kabc", D, D) == einsum("kam,mbc->kabc", D, D),
        "counit": einsum("a,kab->kb", e, D) == I and einsum("b,kab->ka", e, D) == I,
        "comult_multiplicative": einsum("ijk,kab->ijab", M, D)
        == einsum("ipq,jrs,pra,qsb->ijab", D, D, M, M),
        "comult_unital": einsum("k,kab->ab", u, D) == einsum("a,b->ab", u, u),
        "counit_multiplicative": einsum("ijk,k->ij", M, e) == einsum("i,j->ij", e, e),
        "counit_unital": einsum("k,k->", u, e) == Tensor(f, np.array(1)),
        "antipode_left": einsum("kab,ac,cbl->kl", D, S, M) == u_e,
        "antipode_right": einsum("kab,bc,acl->kl", D, S, M) == u_e,
    }
    return report


def is_valid(H: HopfAlgebra) -> bool:
    return all(validate_hopf(H).values())


def is_involutory(H: HopfAlgebra) -> bool:
    return einsum("ij,jk->ik", H.antipode, H.antipode) == Tensor.eye(H.field, H.dim)


# ---------------------------------------------------------------- integrals


def _one_dim(system, H: HopfAlgebra, what: str) -> list:
    basis = solve_nullspace(system, H.field)
    if len(basis) != 1:
        raise IntegralSpaceDimension(f"{what} space of {H.name or 'H'} has dimension {len(basis)}")
    v = basis[0]
    lead = next(x for x in v if x)
    return [x / lead for x in v]


def _integral_system(H: HopfAlgebra, right: bool) -> list:
    # right: mu(x_(1)) x_(2) = mu(x) 1 ; left: x_(1) mu(x_(2)) = mu(x) 1
    d, D, u = H.dim, H.scalars("comult"), H.scalars("unit")
    rows = []
    for k in range(d):
        for l in range(d):
            row = []
            for a in range(d):
                c = D[k][a][l] if right else D[k][l][a]
                if a == k:
                    c = c - u[l]
                row.append(c)
            rows.append(row)
    return rows


def _cointegral_system(H: HopfAlgebra, left: bool) -> list:
    # left: x e = eps(x) e ; right: e x = eps(x) e
    d, M, eps = H.dim, H.scalars("mult"), H.scalars("counit")
    rows = []
    for i in range(d):
        for l in range(d):
            row = []
            for j in range(d):
                c = M[i][j][l] if left else M[j][i][l]
                if j == l:
                    c = c - eps[i]
                row.append(c)
            rows.append(row)
    return rows


def right_integral(H: HopfAlgebra) -> list:
    return _one_dim(_integral_system(H, right=True), H, "right integral")


def left_integral(H: HopfAlgebra) -> list:
    return _one_dim(_integral_system(H, right=False), H, "left integral")


def left_cointegral(H: HopfAlgebra) -> list:
    return _one_dim(_cointegral_system(H, left=True), H, "left cointegral")


def right_cointegral(H: HopfAlgebra) -> list:
    return _one_dim(_cointegral_system(H, left=False), H, "right cointegral")


def _satisfies(system, v) -> bool:
    return all(not sum((c * x for c, x in zip(row, v)), start=0 * v[0]) for row in system)


def is_unimodular(H: HopfAlgebra) -> bool:
    return _satisfies(_cointegral_system(H, left=False), left_cointegral(H))


def is_counimodular(H: HopfAlgebra) -> bool:
    return _satisfies(_integral_system(H, right=True), left_integral(H))


def pair(functional, vector):
    return sum((a * b for a, b in zip(functional, vector)), start=0 * functional[0])


def normalize_integrals(H: HopfAlgebra) -> IntegralData:
    """Integral data scaled so that mu_R(e_L) = mu_L(e_L) = 1, with e_R = S(e_L)."""
    if "integrals" in H._cache:
        return H._cache["integrals"]
    e_L = left_cointegral(H)
    mu_R = right_integral(H)
    mu_L = left_integral(H)
    r, l = pair(mu_R, e_L), pair(mu_L, e_L)
    if not r or not l:
        raise DegeneratePairing(f"integral/cointegral pairing vanishes for {H.name or 'H'}")
    data = IntegralData(mu_R=tuple(x / r for x in mu_R), mu_L=tuple(x / l for x in mu_L),
                        e_L=tuple(e_L), e_R=tuple(H.apply_antipode(e_L)))
    H._cache["integrals"] = data
    return data


def cointegral_report(H: HopfAlgebra) -> dict[str, bool]:
    """Which cointegral conditions e_R = S(e_L) satisfies."""
    e_R = list(normalize_integrals(H).e_R)
    return {"left": _satisfies(_cointegral_system(H, left=True), e_R),
            "right": _satisfies(_cointegral_system(H, left=False), e_R)}


def cocommutes_on(H: HopfAlgebra, v) -> bool:
    """Delta^op(x) == Delta(x) for x with coordinates v."""
    t = Tensor.from_scalars(H.field, list(v))
    dx = einsum("k,kab->ab", t, H.comult)
    return dx == dx.transpose(1, 0)


def unimodular_ratio(H: HopfAlgebra):
    """k with e_R = k e_L (requires unimodularity), computed as mu_L(e_R)."""
    data = normalize_integrals(H)
    k = pair(data.mu_L, data.e_R)
    if [k * x for x in data.e_L] != list(data.e_R):
        raise UnsupportedAlgebra("e_R is not proportional to e_L")
    return k


def require_admissible(H: HopfAlgebra) -> None:
    """Raise UnsupportedAlgebra naming the first failed hypothesis."""
    if not is_valid(H):
        bad = [k for k, v in validate_hopf(H).items() if not v]
        raise UnsupportedAlgebra(f"not a Hopf algebra: {', '.join(bad)} fail")
    if not is_involutory(H):
        raise UnsupportedAlgebra("antipode is not involutive")
    if not is_unimodular(H):
        raise UnsupportedAlgebra("not unimodular")
    if not is_counimodular(H):
        raise UnsupportedAlgebra("not counimodular")
