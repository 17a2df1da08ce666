"""Exact dense linear algebra over prime fields and the rationals.

Matrices are thin wrappers around numpy arrays.  Over ``F_p`` entries are
``int64`` residues in ``[0, p)`` (or Python ints for very large primes);
over ``Q`` entries are :class:`fractions.Fraction` objects stored in an
``object`` array.  Everything downstream reduces to :func:`rref`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

_SMALL_PRIME = 1 << 24


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """A prime field ``F_p`` (``char = p``) or the rationals (``char = 0``)."""

    __slots__ = ("char", "dtype")

    def __init__(self, char: int):
        char = int(char)
        if char != 0 and not (_is_prime(char) and char < 2**31):
            raise ValueError(f"characteristic must be 0 or a prime < 2^31, got {char}")
        self.char = char
        self.dtype = np.int64 if 0 < char < _SMALL_PRIME else object

    def __repr__(self) -> str:
        return "QQ" if self.char == 0 else f"GF({self.char})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self) -> int:
        return hash(("Field", self.char))

    @property
    def zero(self):
        return Fraction(0) if self.char == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.char == 0 else 1

    def __call__(self, x):
        """Coerce an int, Fraction or decimal string like ``"2/3"``."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.char == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            den = x.denominator % self.char
            if den == 0:
                raise ZeroDivisionError(f"{x} has no image in {self!r}")
            return (x.numerator * pow(den, self.char - 2, self.char)) % self.char
        return int(x) % self.char

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.char == 0:
            return Fraction(1) / x
        # Fermat inverse
        return pow(int(x), self.char - 2, self.char)

    def reduce(self, a: np.ndarray) -> np.ndarray:
        if self.char:
            return a % self.char
        return a

    def to_str(self, x) -> str:
        return str(Fraction(x)) if self.char == 0 else str(int(x))

    def elements(self) -> list:
        if self.char == 0:
            raise ValueError("QQ is infinite")
        return list(range(self.char))

    def random(self, rng, height: int = 3):
        if self.char == 0:
            return Fraction(int(rng.integers(-height, height + 1)))
        return int(rng.integers(0, self.char))


GF2 = Field(2)
QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


class Mat:
    """Immutable-by-convention dense matrix over a :class:`Field`."""

    __slots__ = ("field", "a")

    def __init__(self, field: Field, a):
        self.field = field
        arr = np.asarray(a, dtype=object) if not isinstance(a, np.ndarray) else a
        if arr.ndim != 2:
            raise ValueError(f"matrix data must be 2-dimensional, got shape {arr.shape}")
        if field.char == 0:
            if arr.dtype != object or any(type(x) is not Fraction for x in arr.flat):
                arr = _to_fraction_array(arr)
        else:
            if arr.dtype != field.dtype:
                if field.dtype is object:
                    arr = np.array([[int(v) % field.char for v in row] for row in arr.tolist()],
                                   dtype=object).reshape(arr.shape)
                else:
                    arr = np.array([[field(v) for v in row] for row in arr.tolist()],
                                   dtype=np.int64).reshape(arr.shape)
            else:
                arr = arr % field.char
        self.a = arr

    # construction -------------------------------------------------------
    @classmethod
    def _raw(cls, field: Field, arr: np.ndarray) -> "Mat":
        m = object.__new__(cls)
        m.field = field
        m.a = arr
        return m

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Mat":
        if field.char == 0:
            arr = np.empty((rows, cols), dtype=object)
            arr.fill(Fraction(0))
        else:
            arr = np.zeros((rows, cols), dtype=field.dtype)
        return cls._raw(field, arr)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.a[i, i] = field.one
        return m

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], ncols: Optional[int] = None) -> "Mat":
        rows = [list(r) for r in rows]
        if not rows:
            return cls.zeros(field, 0, ncols or 0)
        out = cls.zeros(field, len(rows), len(rows[0]))
        for i, r in enumerate(rows):
            if len(r) != out.cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(r):
                out.a[i, j] = field(v)
        return out

    @classmethod
    def hstack(cls, field: Field, mats: Sequence["Mat"], rows: Optional[int] = None) -> "Mat":
        mats = list(mats)
        if not mats:
            return cls.zeros(field, rows or 0, 0)
        return cls._raw(field, np.concatenate([m.a for m in mats], axis=1))

    @classmethod
    def vstack(cls, field: Field, mats: Sequence["Mat"], cols: Optional[int] = None) -> "Mat":
        mats = list(mats)
        if not mats:
            return cls.zeros(field, 0, cols or 0)
        return cls._raw(field, np.concatenate([m.a for m in mats], axis=0))

    @classmethod
    def block_diag(cls, field: Field, mats: Sequence["Mat"]) -> "Mat":
        r = sum(m.rows for m in mats)
        c = sum(m.cols for m in mats)
        out = cls.zeros(field, r, c)
        i = j = 0
        for m in mats:
            out.a[i:i + m.rows, j:j + m.cols] = m.a
            i += m.rows
            j += m.cols
        return out

    # shape ---------------------------------------------------------------
    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple:
        return self.a.shape

    # arithmetic ------------------------------------------------------------
    def _check(self, other: "Mat") -> None:
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Mat.zeros(self.field, self.rows, other.cols)
        return Mat._raw(self.field, self.field.reduce(self.a @ other.a))

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        return Mat._raw(self.field, self.field.reduce(self.a + other.a))

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        return Mat._raw(self.field, self.field.reduce(self.a - other.a))

    def __neg__(self) -> "Mat":
        return Mat._raw(self.field, self.field.reduce(-self.a))

    def scale(self, c) -> "Mat":
        c = self.field(c)
        if self.field.char == 0:
            return Mat._raw(self.field, self.a * c)
        return Mat._raw(self.field, self.field.reduce(self.a * int(c)))

    def __rmul__(self, c) -> "Mat":
        return self.scale(c)

    @property
    def T(self) -> "Mat":
        return Mat._raw(self.field, self.a.T.copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and bool(np.all(self.a == other.a))

    def __hash__(self):
        return hash((self.shape, tuple(self.a.flat)))

    def is_zero(self) -> bool:
        return self.a.size == 0 or not bool(np.any(self.a != 0))

    def copy(self) -> "Mat":
        return Mat._raw(self.field, self.a.copy())

    def __getitem__(self, key) -> "Mat":
        sub = self.a[key]
        if sub.ndim != 2:
            raise IndexError("use .a for scalar access")
        return Mat._raw(self.field, sub.copy())

    def entry(self, i: int, j: int):
        return self.a[i, j]

    def tolist(self) -> list:
        return [[self.field.to_str(v) for v in row] for row in self.a]

    def __repr__(self) -> str:
        return f"Mat({self.field!r}, {self.tolist()})"


def _to_fraction_array(arr: np.ndarray) -> np.ndarray:
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = Fraction(v) if not isinstance(v, str) else Fraction(v.strip())
    return out


# --------------------------------------------------------------------------
# Gaussian elimination
# --------------------------------------------------------------------------

def _rref_array(field: Field, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    a = a.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    p = field.char
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c] != 0)
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        piv = a[r, c]
        if piv != 1:
            inv = field.inv(piv)
            a[r] = a[r] * inv
            if p:
                a[r] %= p
        others = np.flatnonzero(a[:, c] != 0)
        others = others[others != r]
        if others.size:
            a[others] = a[others] - np.outer(a[others, c], a[r])
            if p:
                a[others] %= p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    arr, piv = _rref_array(m.field, m.a)
    return Mat._raw(m.field, arr), piv


def rank(m: Mat) -> int:
    if m.a.size == 0:
        return 0
    return len(_rref_array(m.field, m.a)[1])


def kernel_basis(m: Mat) -> Mat:
    """Columns spanning the right null space, one per free column.

    The column for free variable ``f`` has a 1 in row ``f`` and zeros in
    the other free rows, so the basis is echelon-canonical.
    """
    field = m.field
    n = m.cols
    if m.rows == 0:
        return Mat.identity(field, n)
    r, piv = _rref_array(field, m.a)
    free = [c for c in range(n) if c not in set(piv)]
    out = Mat.zeros(field, n, len(free))
    for k, f in enumerate(free):
        out.a[f, k] = field.one
        for i, pc in enumerate(piv):
            val = -r[i, f]
            out.a[pc, k] = val % field.char if field.char else val
    return out


def left_kernel_basis(m: Mat) -> Mat:
    """Rows spanning ``{y : y m = 0}``."""
    return kernel_basis(m.T).T


def solve(a: Mat, b: Mat) -> Optional[Mat]:
    """Echelon-canonical solution ``x`` of ``a x = b`` (free variables 0), or None."""
    if a.rows != b.rows:
        raise ValueError(f"solve: row mismatch {a.shape} vs {b.shape}")
    field = a.field
    n, k = a.cols, b.cols
    if a.rows == 0:
        return Mat.zeros(field, n, k)
    aug = np.concatenate([a.a, b.a], axis=1)
    r, piv = _rref_array(field, aug)
    if piv and piv[-1] >= n:
        return None
    x = Mat.zeros(field, n, k)
    for i, pc in enumerate(piv):
        x.a[pc] = r[i, n:]
    return x


def invert(m: Mat) -> Optional[Mat]:
    if m.rows != m.cols:
        raise ValueError("invert requires a square matrix")
    if m.rows == 0:
        return m.copy()
    n = m.rows
    aug = np.concatenate([m.a, Mat.identity(m.field, n).a], axis=1)
    r, piv = _rref_array(m.field, aug)
    if len(piv) < n or piv[n - 1] != n - 1:
        return None
    return Mat._raw(m.field, r[:, n:].copy())


def is_invertible(m: Mat) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def row_space_basis(m: Mat) -> Mat:
    """Nonzero rows of the rref, i.e. a canonical basis of the row space."""
    r, piv = rref(m)
    return r[: len(piv), :]


def column_space_basis(m: Mat) -> Mat:
    """Canonical basis (as columns) of the column space."""
    return row_space_basis(m.T).T


def complement_columns(sub: Mat, n: int) -> list[int]:
    """Standard basis indices whose unit vectors complete the columns of ``sub``."""
    field = sub.field
    if sub.cols == 0:
        return list(range(n))
    _, piv = _rref_array(field, np.concatenate([sub.a, Mat.identity(field, n).a], axis=1))
    return [c - sub.cols for c in piv if c >= sub.cols]


def intersect_columns(a: Mat, b: Mat) -> Mat:
    """Basis (as columns) of colspace(a) ∩ colspace(b)."""
    field = a.field
    if a.cols == 0 or b.cols == 0:
        return Mat.zeros(field, a.rows, 0)
    k = kernel_basis(Mat.hstack(field, [a, -b]))
    return column_space_basis(a @ k[: a.cols, :])


def in_column_space(a: Mat, v: Mat) -> bool:
    return solve(a, v) is not None


def vec(field: Field, values: Iterable) -> Mat:
    """Column vector."""
    values = list(values)
    return Mat.from_rows(field, [[v] for v in values], ncols=1) if values else Mat.zeros(field, 0, 1)


def kron(x: Mat, y: Mat) -> Mat:
    return Mat._raw(x.field, x.field.reduce(np.kron(x.a, y.a)))
