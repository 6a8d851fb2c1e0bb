"""Exact dense linear algebra over Q and Q(i).

Scalars are :class:`fractions.Fraction` for the field ``"Q"`` (identity
involution) and :class:`GaussianRational` for ``"Qi"`` (complex conjugation).
A matrix carries its field tag, and arithmetic between matrices of different
fields raises :class:`~coreinv.errors.MixedFieldError`.

Row reduction uses the first nonzero entry of each column as pivot, so every
result is deterministic and equality is plain value comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatchError,
    MixedFieldError,
    NotSquareError,
    SingularMatrixError,
)

Q = "Q"
QI = "Qi"
FIELDS = (Q, QI)


def _rational(x) -> Fraction:
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class GaussianRational:
    """Element ``re + im*i`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _rational(re)
        self.im = _rational(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return GaussianRational(other)
        if isinstance(other, Fraction):
            raise MixedFieldError("cannot mix Q and Q(i) scalars")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if not norm:
            raise ZeroDivisionError("division by zero in Q(i)")
        a, b, c, d = self.re, self.im, o.re, o.im
        return GaussianRational((a * c + b * d) / norm, (b * c - a * d) / norm)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, int) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash(("Qi", self.re, self.im))

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        from .fileio import format_scalar

        return format_scalar(self)


Scalar = "Fraction | GaussianRational"

_ZERO = {Q: Fraction(0), QI: GaussianRational(0)}
_ONE = {Q: Fraction(1), QI: GaussianRational(1)}


def field_of(s) -> str:
    if isinstance(s, GaussianRational):
        return QI
    if isinstance(s, Fraction):
        return Q
    raise TypeError(f"not a scalar: {s!r}")


def coerce_scalar(x, field: str):
    """Convert an int, Fraction or GaussianRational into ``field``."""
    if field == Q:
        if isinstance(x, GaussianRational):
            raise MixedFieldError("Q(i) scalar in a Q matrix")
        return _rational(x)
    if field == QI:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return GaussianRational(x)
    raise ValueError(f"unknown field {field!r}")


def zero(field: str):
    return _ZERO[field]


def one(field: str):
    return _ONE[field]


def conjugate(s):
    if isinstance(s, GaussianRational):
        return s.conjugate()
    return s


def scalar_arith(a, b, op: str):
    """Apply ``op`` in {"add", "sub", "mul", "div"} to two same-field scalars."""
    if field_of(a) != field_of(b):
        raise MixedFieldError("operands belong to different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


class Mat:
    """Immutable dense matrix over Q or Q(i).

    ``Mat([[1, 2], [3, 4]])`` builds a Q matrix; pass ``field="Qi"`` or any
    :class:`GaussianRational` entry for Q(i). Empty shapes need ``cols``:
    ``Mat([], cols=3)`` is 0x3.
    """

    __slots__ = ("rows", "cols", "field", "_data", "_hash")

    def __init__(self, data: Iterable[Sequence] = (), *, field: str | None = None, cols: int | None = None):
        rows = [list(r) for r in data]
        if field is None:
            field = QI if any(isinstance(x, GaussianRational) for r in rows for x in r) else Q
        if field not in FIELDS:
            raise ValueError(f"unknown field {field!r}")
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise DimensionMismatchError("ragged rows")
            if cols is not None and cols != width:
                raise DimensionMismatchError("cols disagrees with row width")
        else:
            width = cols or 0
        self.rows = len(rows)
        self.cols = width
        self.field = field
        self._data = tuple(tuple(coerce_scalar(x, field) for x in r) for r in rows)
        self._hash = None

    @classmethod
    def _make(cls, rows: int, cols: int, data, field: str) -> "Mat":
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m.field = field
        m._data = data if isinstance(data, tuple) else tuple(tuple(r) for r in data)
        m._hash = None
        return m

    @classmethod
    def from_flat(cls, rows: int, cols: int, entries: Sequence, field: str | None = None) -> "Mat":
        if len(entries) != rows * cols:
            raise DimensionMismatchError("entries length must be rows*cols")
        data = [entries[i * cols:(i + 1) * cols] for i in range(rows)]
        return cls(data, field=field, cols=cols)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: str = Q) -> "Mat":
        z = _ZERO[field]
        return cls._make(rows, cols, tuple((z,) * cols for _ in range(rows)), field)

    @classmethod
    def identity(cls, n: int, field: str = Q) -> "Mat":
        z, o = _ZERO[field], _ONE[field]
        return cls._make(n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), field)

    @classmethod
    def block(cls, blocks: Sequence[Sequence["Mat"]]) -> "Mat":
        """Assemble a block matrix; every block row must share a height."""
        field = blocks[0][0].field
        out = []
        width = None
        for brow in blocks:
            h = brow[0].rows
            for b in brow:
                if b.rows != h:
                    raise DimensionMismatchError("block heights differ")
                if b.field != field:
                    raise MixedFieldError("blocks from different fields")
            w = sum(b.cols for b in brow)
            if width is None:
                width = w
            elif w != width:
                raise DimensionMismatchError("block widths differ")
            for i in range(h):
                row = []
                for b in brow:
                    row.extend(b._data[i])
                out.append(tuple(row))
        return cls._make(len(out), width or 0, tuple(out), field)

    # -- access ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple:
        return tuple(x for r in self._data for x in r)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> "Mat":
        return Mat._make(1, self.cols, (self._data[i],), self.field)

    def col(self, j: int) -> "Mat":
        return Mat._make(self.rows, 1, tuple((r[j],) for r in self._data), self.field)

    def select_rows(self, idx: Sequence[int]) -> "Mat":
        return Mat._make(len(idx), self.cols, tuple(self._data[i] for i in idx), self.field)

    def select_cols(self, idx: Sequence[int]) -> "Mat":
        return Mat._make(self.rows, len(idx), tuple(tuple(r[j] for j in idx) for r in self._data), self.field)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Mat":
        return Mat._make(r1 - r0, c1 - c0, tuple(r[c0:c1] for r in self._data[r0:r1]), self.field)

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    def is_zero(self) -> bool:
        return not any(x for r in self._data for x in r)

    # -- algebra --------------------------------------------------------

    def _check_field(self, other: "Mat"):
        if self.field != other.field:
            raise MixedFieldError(f"{self.field} matrix combined with {other.field} matrix")

    def __add__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot add {self.shape} and {other.shape}")
        return Mat._make(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)), self.field)

    def __sub__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot subtract {other.shape} from {self.shape}")
        return Mat._make(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)), self.field)

    def __neg__(self):
        return Mat._make(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self._data), self.field)

    def __mul__(self, s):
        if isinstance(s, Mat):
            return NotImplemented
        s = coerce_scalar(s, self.field)
        return Mat._make(self.rows, self.cols, tuple(tuple(s * a for a in r) for r in self._data), self.field)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return mat_mul(self, other)

    def __pow__(self, n: int):
        if not self.is_square:
            raise NotSquareError("power of a non-square matrix")
        if n < 0:
            return inverse(self) ** (-n)
        result = Mat.identity(self.rows, self.field)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    @property
    def T(self) -> "Mat":
        return Mat._make(self.cols, self.rows, tuple(zip(*self._data)) if self.rows else
                         tuple(() for _ in range(self.cols)), self.field)

    @property
    def H(self) -> "Mat":
        return adjoint(self)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self):
        from .fileio import format_scalar

        body = ", ".join("[" + ", ".join(format_scalar(x) for x in r) + "]" for r in self._data)
        return f"Mat({self.rows}x{self.cols} {self.field}: [{body}])"


def mat_mul(a: Mat, b: Mat) -> Mat:
    """Exact product; an inner dimension of 0 gives the zero matrix."""
    a._check_field(b)
    if a.cols != b.rows:
        raise DimensionMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    if a.cols == 0 or a.rows == 0 or b.cols == 0:
        return Mat.zeros(a.rows, b.cols, a.field)
    bt = tuple(zip(*b._data))
    if a.field == Q:
        return Mat._make(a.rows, b.cols, _rational_product(a._data, bt), Q)
    return Mat._make(a.rows, b.cols, _gaussian_product(a._data, bt), a.field)


def _integer_rows(vectors):
    """Scale each vector by the lcm of its denominators: (ints, lcm) pairs."""
    out = []
    for v in vectors:
        d = 1
        for x in v:
            q = x.denominator
            if q != 1:
                d = d * q // gcd(d, q)
        out.append((tuple(x.numerator * (d // x.denominator) for x in v), d))
    return out


def _rational_product(rows, cols):
    ra = _integer_rows(rows)
    cb = _integer_rows(cols)
    return tuple(
        tuple(Fraction(sum(x * y for x, y in zip(r, c)), dr * dc) for c, dc in cb)
        for r, dr in ra)


def _gaussian_product(rows, cols):
    """(A + iB)(C + iD) = (AC - BD) + i(AD + BC), each part over the rationals."""
    ar = [tuple(x.re for x in r) for r in rows]
    ai = [tuple(x.im for x in r) for r in rows]
    cr = [tuple(x.re for x in c) for c in cols]
    ci = [tuple(x.im for x in c) for c in cols]
    ac, bd = _rational_product(ar, cr), _rational_product(ai, ci)
    ad, bc = _rational_product(ar, ci), _rational_product(ai, cr)
    return tuple(
        tuple(GaussianRational(p - q, u + v) for p, q, u, v in zip(r1, r2, r3, r4))
        for r1, r2, r3, r4 in zip(ac, bd, ad, bc))


def adjoint(a: Mat) -> Mat:
    """Conjugate transpose."""
    t = a.T
    if a.field == Q:
        return t
    return Mat._make(t.rows, t.cols, tuple(tuple(x.conjugate() for x in r) for r in t._data), a.field)


@dataclass(frozen=True)
class RrefResult:
    R: Mat
    T: Mat
    rank: int
    pivots: tuple[int, ...]


def rref(a: Mat) -> RrefResult:
    """Reduced row echelon form with the transform ``T`` such that ``T @ a == R``."""
    m, n, f = a.rows, a.cols, a.field
    z, o = _ZERO[f], _ONE[f]
    R = [list(r) for r in a._data]
    T = [[o if i == j else z for j in range(m)] for i in range(m)]
    pivots = []
    pr = 0
    for c in range(n):
        if pr == m:
            break
        for r in range(pr, m):
            if R[r][c]:
                break
        else:
            continue
        if r != pr:
            R[pr], R[r] = R[r], R[pr]
            T[pr], T[r] = T[r], T[pr]
        p = R[pr][c]
        if p != o:
            inv = o / p
            R[pr] = [x * inv for x in R[pr]]
            T[pr] = [x * inv for x in T[pr]]
        rowR, rowT = R[pr], T[pr]
        for r in range(m):
            if r != pr:
                fac = R[r][c]
                if fac:
                    R[r] = [x - fac * y if y else x for x, y in zip(R[r], rowR)]
                    T[r] = [x - fac * y if y else x for x, y in zip(T[r], rowT)]
        pivots.append(c)
        pr += 1
    return RrefResult(
        R=Mat._make(m, n, tuple(map(tuple, R)), f),
        T=Mat._make(m, m, tuple(map(tuple, T)), f),
        rank=len(pivots),
        pivots=tuple(pivots),
    )


def rank(a: Mat) -> int:
    return rref(a).rank


def inverse(a: Mat) -> Mat:
    """Exact inverse; raises :class:`SingularMatrixError` with a left null vector."""
    if not a.is_square:
        raise NotSquareError(f"cannot invert a {a.rows}x{a.cols} matrix")
    res = rref(a)
    if res.rank < a.rows:
        # rows of T past the rank annihilate a from the left
        raise SingularMatrixError(a, res.T.row(res.rank))
    return res.T


def is_invertible(a: Mat) -> bool:
    return a.is_square and rank(a) == a.rows


def row_space_basis(a: Mat) -> Mat:
    """Canonical basis of the row space: the nonzero rows of the RREF."""
    res = rref(a)
    return res.R.submatrix(0, res.rank, 0, a.cols)


def left_null_space(a: Mat) -> Mat:
    """Rows form the RREF basis of ``{x : x @ a == 0}``."""
    res = rref(a)
    return row_space_basis(res.T.submatrix(res.rank, a.rows, 0, a.rows))


def right_null_space(a: Mat) -> Mat:
    """Columns form the RREF basis (transposed) of ``{y : a @ y == 0}``."""
    return left_null_space(a.T).T


def same_row_space(a: Mat, b: Mat) -> bool:
    return a.cols == b.cols and row_space_basis(a) == row_space_basis(b)


def solve(a: Mat, b: Mat) -> Mat | None:
    """A particular solution ``x`` of ``a @ x == b``, or None when inconsistent."""
    if a.rows != b.rows:
        raise DimensionMismatchError(f"cannot solve {a.shape} against {b.shape}")
    res = rref(a)
    tb = res.T @ b
    for i in range(res.rank, a.rows):
        if any(tb._data[i]):
            return None
    z = _ZERO[a.field]
    rows = [(z,) * b.cols for _ in range(a.cols)]
    for i, c in enumerate(res.pivots):
        rows[c] = tb._data[i]
    return Mat._make(a.cols, b.cols, tuple(rows), a.field)


def solve_left(a: Mat, b: Mat) -> Mat | None:
    """A particular solution ``y`` of ``y @ a == b``, or None."""
    y = solve(a.T, b.T)
    return None if y is None else y.T


def full_rank_factorization(a: Mat) -> tuple[Mat, Mat]:
    """``a == F @ G`` with F the pivot columns of ``a`` and G the nonzero RREF rows."""
    res = rref(a)
    G = res.R.submatrix(0, res.rank, 0, a.cols)
    F = a.select_cols(res.pivots)
    return F, G
