"""Dense exact linear algebra over the rationals.

Rank uses fraction-free (Bareiss) elimination on integer-scaled rows; null
spaces come from a reduced row echelon form computed with ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(Fraction(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix.from_rows(
            [self.column(j) for j in range(self.cols)], self.rows
        )

    def select_rows(self, indices: Iterable[int]) -> "RationalMatrix":
        return RationalMatrix.from_rows([self.row(i) for i in indices], self.cols)

    def vecmul(self, x: Sequence) -> Vector:
        """``x^T M`` for a row vector ``x`` of length ``rows``."""
        if len(x) != self.rows:
            raise ValueError("dimension mismatch")
        out = [Fraction(0)] * self.cols
        for i, xi in enumerate(x):
            if xi:
                r = self.row(i)
                for j in range(self.cols):
                    if r[j]:
                        out[j] += xi * r[j]
        return tuple(out)

    def matvec(self, x: Sequence) -> Vector:
        """``M x`` for a column vector ``x`` of length ``cols``."""
        if len(x) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(
            sum((a * b for a, b in zip(self.row(i), x) if a and b), Fraction(0))
            for i in range(self.rows)
        )

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i)
        )


def hstack(*blocks: RationalMatrix) -> RationalMatrix:
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise ValueError("row counts differ")
    return RationalMatrix.from_rows(
        [sum((b.row(i) for b in blocks), ()) for i in range(rows)],
        sum(b.cols for b in blocks),
    )


def vstack(*blocks: RationalMatrix) -> RationalMatrix:
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise ValueError("column counts differ")
    return RationalMatrix(
        sum(b.rows for b in blocks), cols, sum((b.entries for b in blocks), ())
    )


def _integer_rows(m: RationalMatrix) -> list[list[int]]:
    out = []
    for i in range(m.rows):
        r = m.row(i)
        scale = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * scale) for x in r])
    return out


def rank(m: RationalMatrix) -> int:
    """Exact rank by Bareiss fraction-free elimination."""
    a = _integer_rows(m)
    nrows, ncols = m.rows, m.cols
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        # smallest nonzero magnitude keeps intermediate integers short
        piv = None
        for i in range(r, nrows):
            if a[i][c] and (piv is None or abs(a[i][c]) < abs(a[piv][c])):
                piv = i
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        top = a[r]
        for i in range(r + 1, nrows):
            ai = a[i]
            f = ai[c]
            for j in range(c + 1, ncols):
                ai[j] = (p * ai[j] - f * top[j]) // prev
            ai[c] = 0
        prev = p
        r += 1
    return r


def rref(m: RationalMatrix) -> tuple[RationalMatrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    a = [[Fraction(x) for x in r] for r in _integer_rows(m)]
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        top = a[r]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], top)]
        pivots.append(c)
        r += 1
    return RationalMatrix.from_rows(a, ncols), tuple(pivots)


def nullspace(m: RationalMatrix) -> list[Vector]:
    """Basis of ``{x : M x = 0}``, itself in reduced row echelon form."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * m.cols
        x[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            x[pc] = -red[r, f]
        basis.append(x)
    if not basis:
        return []
    canon, _ = rref(RationalMatrix.from_rows(basis, m.cols))
    return [canon.row(i) for i in range(len(basis))]


def left_nullspace(m: RationalMatrix) -> list[Vector]:
    """Basis of ``{x : x^T M = 0}`` (the cokernel)."""
    return nullspace(m.T)


def independent_rows(m: RationalMatrix) -> tuple[int, ...]:
    """Lexicographically first maximal set of linearly independent rows."""
    return rref(m.T)[1]


def primitive(vec: Sequence) -> tuple[int, ...]:
    """Scale to a primitive integer vector whose first nonzero entry is positive."""
    vec = [Fraction(x) for x in vec]
    nz = [x for x in vec if x]
    if not nz:
        return tuple(0 for _ in vec)
    scale = lcm(*(x.denominator for x in vec))
    ints = [int(x * scale) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    sign = 1 if nz[0] > 0 else -1
    return tuple(sign * x // g for x in ints)
