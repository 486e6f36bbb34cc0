"""Exact scalars over Q or F_p, small dense matrices, and exact numpy tensors.

Rationals are :class:`fractions.Fraction`; prime-field elements are :class:`Fp`.
Matrices are plain lists of rows.  :class:`Tensor` wraps an integer numpy array
with a common denominator so that heavy contractions run on machine integers
whenever that is provably overflow-free and fall back to Python ints otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

_INT64_SAFE = 2**62


class ShapeError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Fp:
    """Element of the prime field F_p, always reduced to [0, p)."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> "Fp":
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"mixed characteristics {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return Fp(other, self.p)
        if isinstance(other, Fraction):
            return Fp(other.numerator, self.p) / Fp(other.denominator, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return Fp(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Fp(self.value - o.value, self.p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return Fp(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise ZeroDivisionError("inverse of 0 in F_%d" % self.p)
        return Fp(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Fp(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (other - self.value) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} mod {self.p}"

    __str__ = __repr__


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class Field:
    """The base field: ``Field()`` is Q, ``Field(p)`` is F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def parse(cls, text) -> "Field":
        """Accept ``"Q"``, ``"Fp:5"``, ``"F5"`` or ``{"Fp": 5}``."""
        if isinstance(text, Field):
            return text
        if isinstance(text, dict):
            return cls(int(text["Fp"]))
        t = str(text).strip()
        if t.upper() in ("Q", "QQ"):
            return cls()
        for prefix in ("Fp:", "FP:", "F_", "F"):
            if t.startswith(prefix):
                return cls(int(t[len(prefix):]))
        raise ValueError(f"unknown field {text!r}")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"F{self.p}"

    def to_json(self):
        return "Q" if self.p == 0 else {"Fp": self.p}

    def __call__(self, x):
        if self.p == 0:
            if isinstance(x, Fp):
                raise ValueError("F_p element used over Q")
            return Fraction(x)
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ValueError("wrong characteristic")
            return x
        x = Fraction(x)
        return Fp(x.numerator, self.p) / Fp(x.denominator, self.p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def format(self, x) -> str:
        x = self(x)
        if self.p == 0:
            return f"{x.numerator}/{x.denominator}"
        return f"{x.value} mod {self.p}"

    def parse_scalar(self, text):
        """Parse ``"p/q"``, a bare integer, or ``"k mod p"``."""
        if isinstance(text, (int, Fraction, Fp)):
            return self(text)
        t = str(text).strip()
        if "mod" in t:
            k, p = t.split("mod")
            if self.p != int(p):
                raise ValueError(f"scalar {t!r} is not in {self.name}")
            return Fp(int(k), self.p)
        return self(Fraction(t))

    def lift(self, x) -> tuple[int, int]:
        """Numerator/denominator pair of a scalar (denominator 1 over F_p)."""
        x = self(x)
        if self.p == 0:
            return x.numerator, x.denominator
        return x.value, 1


QQ = Field()


# ---------------------------------------------------------------- matrices

Matrix = list  # list of rows of scalars


def zeros(field: Field, rows: int, cols: int) -> Matrix:
    return [[field.zero] * cols for _ in range(rows)]


def identity(field: Field, n: int) -> Matrix:
    m = zeros(field, n, n)
    for i in range(n):
        m[i][i] = field.one
    return m


def shape(a: Matrix) -> tuple[int, int]:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(r) != cols for r in a):
        raise ShapeError("ragged matrix")
    return rows, cols


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ShapeError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    bt = list(zip(*b)) if rb else [()] * cb
    return [[sum((x * y for x, y in zip(row, col)), start=0 * row[0] if row else 0)
             for col in bt] for row in a]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise ShapeError(f"cannot add {shape(a)} and {shape(b)}")
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def trace(a: Matrix):
    r, c = shape(a)
    if r != c:
        raise ShapeError("trace of a non-square matrix")
    return sum((a[i][i] for i in range(r)), start=0 * a[0][0] if r else 0)


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; pivot is the first nonzero entry in a column."""
    m = [list(r) for r in a]
    rows, cols = shape(m)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def solve_nullspace(a: Matrix, field: Field | None = None, cols: int | None = None) -> list[list]:
    """Basis of ``{x : a x = 0}``, one vector per free column of the RREF."""
    if not a:
        if cols is None or field is None:
            raise ShapeError("empty matrix needs explicit column count and field")
        return [[field.one if j == i else field.zero for j in range(cols)] for i in range(cols)]
    r, c = shape(a)
    field = field or _field_of(a[0][0])
    m, pivots = rref(a)
    free = [j for j in range(c) if j not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * c
        v[f] = field.one
        for row, pc in enumerate(pivots):
            v[pc] = -m[row][f]
        basis.append(v)
    return basis


def rank(a: Matrix) -> int:
    if not a:
        return 0
    return len(rref(a)[1])


def inverse(a: Matrix) -> Matrix:
    n, c = shape(a)
    if n != c:
        raise ShapeError("inverse of a non-square matrix")
    field = _field_of(a[0][0])
    aug = [list(row) + ident for row, ident in zip(a, identity(field, n))]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in m]


def _field_of(x) -> Field:
    return Field(x.p) if isinstance(x, Fp) else QQ


# ---------------------------------------------------------------- tensors


class Tensor:
    """Exact dense array: ``num / den`` over Q, or ``num mod p`` over F_p.

    ``num`` is an int64 array when every entry fits comfortably, otherwise an
    object array of Python ints.  Instances are treated as immutable.
    """

    __slots__ = ("field", "num", "den")

    def __init__(self, field: Field, num: np.ndarray, den: int = 1):
        self.field = field
        if field.p:
            num = _as_int_array(num) % field.p
            den_inv = pow(int(den) % field.p, -1, field.p)
            if den_inv != 1:
                num = (num * den_inv) % field.p
            den = 1
        else:
            num = _as_int_array(num)
            if den < 0:
                num, den = -num, -den
            g = _array_gcd(num)
            g = math.gcd(g, den)
            if g > 1:
                num = num // g
                den //= g
        self.num = num
        self.den = int(den)

    # construction
    @classmethod
    def from_scalars(cls, field: Field, data) -> "Tensor":
        arr = np.array(data, dtype=object)
        if arr.size == 0:
            return cls(field, np.zeros(arr.shape, dtype=np.int64))
        lifted = [field.lift(x) for x in arr.flat]
        den = reduce(_lcm, (q for _, q in lifted), 1)
        num = np.array([p * (den // q) for p, q in lifted], dtype=object).reshape(arr.shape)
        return cls(field, num, den)

    @classmethod
    def zeros(cls, field: Field, shape) -> "Tensor":
        return cls(field, np.zeros(shape, dtype=np.int64))

    @classmethod
    def eye(cls, field: Field, n: int) -> "Tensor":
        return cls(field, np.eye(n, dtype=np.int64))

    # views
    @property
    def shape(self):
        return self.num.shape

    def __getitem__(self, idx):
        v = self.num[idx]
        if isinstance(v, np.ndarray):
            return Tensor(self.field, v, self.den)
        return self.field(Fraction(int(v), self.den)) if self.field.p == 0 else self.field(int(v))

    def reshape(self, *shape) -> "Tensor":
        return Tensor(self.field, self.num.reshape(*shape), self.den)

    def transpose(self, *axes) -> "Tensor":
        return Tensor(self.field, self.num.transpose(*axes), self.den)

    def to_scalars(self):
        out = np.empty(self.shape, dtype=object)
        for idx, v in np.ndenumerate(self.num):
            out[idx] = self.field(Fraction(int(v), self.den)) if self.field.p == 0 else self.field(int(v))
        return out.tolist()

    def is_zero(self) -> bool:
        return not np.any(self.num)

    def max_abs(self) -> int:
        if self.num.size == 0:
            return 0
        return int(np.max(np.abs(self.num)))

    # arithmetic
    def _check(self, other: "Tensor"):
        if self.field != other.field:
            raise ValueError("tensors over different fields")
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        l = _lcm(self.den, other.den)
        a = _scaled(self.num, l // self.den)
        b = _scaled(other.num, l // other.den)
        return Tensor(self.field, _safe_add(a, b), l)

    def __neg__(self) -> "Tensor":
        return Tensor(self.field, -self.num, self.den)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def scale(self, c) -> "Tensor":
        p, q = self.field.lift(c)
        return Tensor(self.field, _scaled(self.num, p), self.den * q)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        if self.field != other.field or self.shape != other.shape:
            return False
        return self.den == other.den and np.array_equal(self.num, other.num)

    __hash__ = None

    def __repr__(self):
        return f"Tensor({self.field.name}, shape={self.shape}, den={self.den})"


def einsum(subscripts: str, *ts: Tensor) -> Tensor:
    """Exact ``np.einsum`` over :class:`Tensor` operands."""
    field = ts[0].field
    if any(t.field != field for t in ts):
        raise ValueError("tensors over different fields")
    inputs, output = subscripts.replace(" ", "").split("->")
    in_terms = inputs.split(",")
    sizes: dict[str, int] = {}
    for term, t in zip(in_terms, ts):
        if len(term) != t.num.ndim:
            raise ShapeError(f"{term!r} does not match shape {t.shape}")
        for ch, n in zip(term, t.shape):
            if sizes.setdefault(ch, n) != n:
                raise ShapeError(f"index {ch} has inconsistent sizes")
    summed = set("".join(in_terms)) - set(output)
    bound = math.prod(sizes[ch] for ch in summed) if summed else 1
    for t in ts:
        bound *= max(t.max_abs(), 1)
    if bound < _INT64_SAFE:
        nums = [t.num.astype(np.int64, copy=False) for t in ts]
    else:
        nums = [t.num.astype(object) for t in ts]
    num = np.einsum(subscripts, *nums, optimize=len(ts) > 2)
    den = math.prod(t.den for t in ts)
    return Tensor(field, np.asarray(num), den)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _as_int_array(a) -> np.ndarray:
    a = np.asarray(a)
    if a.dtype == object:
        if a.size == 0:
            return a.astype(np.int64)
        m = max(abs(int(x)) for x in a.flat)
        if m < _INT64_SAFE:
            return a.astype(np.int64)
        return a
    if a.dtype.kind in "iub":
        return a.astype(np.int64, copy=False)
    raise TypeError(f"non-integer array dtype {a.dtype}")


def _array_gcd(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return reduce(math.gcd, (abs(int(x)) for x in a.flat), 0)
    return int(np.gcd.reduce(np.abs(a), axis=None))


def _scaled(a: np.ndarray, k: int) -> np.ndarray:
    if k == 1:
        return a
    m = int(np.max(np.abs(a))) if a.size else 0
    if a.dtype != object and m * abs(k) < _INT64_SAFE:
        return a * k
    return a.astype(object) * k


def _safe_add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ma = int(np.max(np.abs(a))) if a.size else 0
    mb = int(np.max(np.abs(b))) if b.size else 0
    if a.dtype != object and b.dtype != object and ma + mb < _INT64_SAFE:
        return a + b
    return a.astype(object) + b.astype(object)


def vector_dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ShapeError("length mismatch")
    return sum((x * y for x, y in zip(u, v)), start=0 * u[0] if u else 0)


def is_zero_vector(v: Iterable) -> bool:
    return not any(v)
