"""Dense matrices over the rationals with exact linear algebra.

Every entry is a :class:`fractions.Fraction`; nothing in this module ever
touches floating point.  Rank and determinant use integer Bareiss
elimination after clearing row denominators, the Moore-Penrose inverse is
built from a full-rank factorization.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Raised when matrix shapes are incompatible for an operation."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point entries are not allowed")
    return Fraction(x)


class RatMatrix:
    """Immutable dense rational matrix.

    Stored as a tuple of row tuples.  Equality is exact entrywise equality
    together with equal shape (so a 0x3 and a 0x2 matrix differ).
    """

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(_frac(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionError("ragged rows")
            if ncols is not None and ncols != width:
                raise DimensionError("ncols does not match row length")
        else:
            width = ncols or 0
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def _raw(cls, rows: tuple, ncols: int) -> "RatMatrix":
        # trusted constructor: rows already tuples of Fraction
        obj = cls.__new__(cls)
        obj._rows = rows
        obj.nrows = len(rows)
        obj.ncols = ncols
        return obj

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RatMatrix":
        z = Fraction(0)
        return cls._raw(tuple((z,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        one, z = Fraction(1), Fraction(0)
        return cls._raw(
            tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def from_flat(cls, nrows: int, ncols: int, entries: Sequence) -> "RatMatrix":
        if len(entries) != nrows * ncols:
            raise DimensionError("entries length must equal rows * cols")
        return cls((entries[i * ncols:(i + 1) * ncols] for i in range(nrows)), ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> tuple[Fraction, ...]:
        """Row-major flat view."""
        return tuple(x for row in self._rows for x in row)

    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self._rows)
        return f"RatMatrix({self.nrows}x{self.ncols}: [{body}])"

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix._raw(tuple(zip(*self._rows)) if self.nrows else
                              tuple(() for _ in range(self.ncols)), self.nrows)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return RatMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.ncols,
        )

    def __neg__(self) -> "RatMatrix":
        return RatMatrix._raw(tuple(tuple(-a for a in r) for r in self._rows), self.ncols)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + (-other)

    def scale(self, c) -> "RatMatrix":
        c = _frac(c)
        return RatMatrix._raw(tuple(tuple(c * a for a in r) for r in self._rows), self.ncols)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        return multiply(self, other)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and self == self.T

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        return RatMatrix._raw(
            tuple(tuple(self._rows[i][j] for j in cols) for i in rows), len(cols)
        )

    def to_strings(self) -> list[list[str]]:
        return [[format_rational(x) for x in r] for r in self._rows]


def format_rational(x: Fraction) -> str:
    """Canonical ``p/q`` rendering (``p`` when the denominator is 1)."""
    x = _frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    if "." in s or "e" in s.lower():
        raise ValueError(f"not an exact rational: {s!r}")
    return Fraction(s)


def _common_denominator(m: RatMatrix) -> tuple[list[list[int]], int]:
    d = lcm(*(x.denominator for r in m.rows() for x in r)) if m.nrows and m.ncols else 1
    return [[x.numerator * (d // x.denominator) for x in r] for r in m.rows()], d


def multiply(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    if a.ncols != b.nrows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    # integer product over a common denominator, then one division per entry
    ai, da = _common_denominator(a)
    bi, db = _common_denominator(b)
    bcols = list(zip(*bi)) if bi else [()] * b.ncols
    den = da * db
    out = []
    for r in ai:
        nz = [(k, x) for k, x in enumerate(r) if x]
        out.append(tuple(Fraction(sum(x * c[k] for k, x in nz), den) for c in bcols))
    return RatMatrix._raw(tuple(out), b.ncols)


def _integer_rows(m: RatMatrix) -> tuple[list[list[int]], Fraction]:
    """Scale each row to integers; return rows and the product of the scales."""
    rows = []
    scale = Fraction(1)
    for r in m.rows():
        d = lcm(*(x.denominator for x in r)) if r else 1
        rows.append([int(x * d) for x in r])
        scale *= d
    return rows, scale


def _bareiss(a: list[list[int]]) -> tuple[int, int]:
    """In-place fraction-free elimination; returns (rank, signed last pivot).

    For a square nonsingular input the returned pivot is the determinant.
    """
    nr = len(a)
    nc = len(a[0]) if nr else 0
    sign = 1
    prev = 1
    r = 0
    for c in range(nc):
        if r == nr:
            break
        p = next((i for i in range(r, nr) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[p], a[r] = a[r], a[p]
            sign = -sign
        piv = a[r][c]
        for i in range(r + 1, nr):
            ai = a[i]
            f = ai[c]
            for j in range(c + 1, nc):
                ai[j] = (piv * ai[j] - f * a[r][j]) // prev
            ai[c] = 0
        prev = piv
        r += 1
    return r, sign * prev


def rank(m: RatMatrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    rows, _ = _integer_rows(m)
    return _bareiss(rows)[0]


def det(m: RatMatrix) -> Fraction:
    if m.nrows != m.ncols:
        raise DimensionError(f"determinant of non-square {m.shape} matrix")
    if m.nrows == 0:
        return Fraction(1)
    rows, scale = _integer_rows(m)
    r, d = _bareiss(rows)
    if r < m.nrows:
        return Fraction(0)
    return Fraction(d) / scale


def rref(m: RatMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot column indices."""
    a = [list(r) for r in m.rows()]
    pivots: list[int] = []
    r = 0
    for c in range(m.ncols):
        p = next((i for i in range(r, m.nrows) if a[i][c]), None)
        if p is None:
            continue
        a[p], a[r] = a[r], a[p]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.nrows:
            break
    return a, pivots


def rank_factorization(m: RatMatrix) -> tuple[RatMatrix, RatMatrix]:
    """Return ``(F, G)`` with ``m == F @ G``.

    ``F`` holds the pivot columns of ``m`` and ``G`` the nonzero rows of its
    reduced echelon form, so both have full rank ``r``.
    """
    a, pivots = rref(m)
    r = len(pivots)
    if r == 0:
        raise ValueError("zero matrix has no rank factorization")
    F = m.submatrix(range(m.nrows), pivots)
    G = RatMatrix._raw(tuple(tuple(row) for row in a[:r]), m.ncols)
    return F, G


def inverse(m: RatMatrix) -> RatMatrix:
    """Gauss-Jordan inverse of a nonsingular square matrix."""
    n = m.nrows
    if n != m.ncols:
        raise DimensionError("inverse of non-square matrix")
    one, z = Fraction(1), Fraction(0)
    aug = RatMatrix._raw(
        tuple(r + tuple(one if i == j else z for j in range(n)) for i, r in enumerate(m.rows())),
        2 * n,
    )
    a, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return RatMatrix._raw(tuple(tuple(r[n:]) for r in a), n)


def pinv_oracle(m: RatMatrix) -> RatMatrix:
    """Exact Moore-Penrose inverse via ``G^T (G G^T)^-1 (F^T F)^-1 F^T``."""
    if m.nrows == 0 or m.ncols == 0 or m.is_zero():
        return RatMatrix.zeros(m.ncols, m.nrows)
    F, G = rank_factorization(m)
    Ft, Gt = F.T, G.T
    return Gt @ inverse(G @ Gt) @ inverse(Ft @ F) @ Ft


def penrose_verify(a: RatMatrix, x: RatMatrix) -> tuple[bool, bool, bool, bool]:
    """Check ``AXA=A, XAX=X, (AX)^T=AX, (XA)^T=XA`` exactly."""
    if x.shape != (a.ncols, a.nrows):
        raise DimensionError(f"candidate shape {x.shape} does not transpose {a.shape}")
    ax = a @ x
    xa = x @ a
    return (ax @ a == a, xa @ x == x, ax.is_symmetric(), xa.is_symmetric())
