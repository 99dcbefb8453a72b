"""Exact integer matrices, Smith normal form and lattice solving.

Everything here works with Python ints, so there is no overflow no matter
how large intermediate entries get during elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError


class IntMatrix:
    """Immutable integer matrix stored as a tuple of row tuples.

    The shape is kept explicitly so that ``0 x n`` and ``n x 0`` matrices
    are distinct objects, which matters for maps out of or into zero groups.
    """

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Iterable[int]] = (), rows: int | None = None,
                 cols: int | None = None):
        body = tuple(tuple(int(x) for x in row) for row in data)
        if rows is None:
            rows = len(body)
        if cols is None:
            cols = len(body[0]) if body else 0
        if not body and rows and cols == 0:
            body = ((),) * rows
        if len(body) != rows:
            raise DimensionError(f"expected {rows} rows, got {len(body)}")
        for row in body:
            if len(row) != cols:
                raise DimensionError(f"ragged row of length {len(row)}, expected {cols}")
        self.rows = rows
        self.cols = cols
        self._data = body
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(((0,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(((int(i == j) for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def diag(cls, entries: Sequence[int], rows: int | None = None,
             cols: int | None = None) -> IntMatrix:
        k = len(entries)
        rows = k if rows is None else rows
        cols = k if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(entries):
            data[i][i] = v
        return cls(data, rows, cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        return cls((tuple(col[i] for col in columns) for i in range(rows)), rows, len(columns))

    @classmethod
    def hstack(cls, *blocks: IntMatrix) -> IntMatrix:
        if not blocks:
            raise DimensionError("hstack of nothing")
        rows = blocks[0].rows
        if any(b.rows != rows for b in blocks):
            raise DimensionError("hstack needs equal row counts")
        data = [sum((b._data[i] for b in blocks), ()) for i in range(rows)]
        return cls(data, rows, sum(b.cols for b in blocks))

    @classmethod
    def vstack(cls, *blocks: IntMatrix) -> IntMatrix:
        if not blocks:
            raise DimensionError("vstack of nothing")
        cols = blocks[0].cols
        if any(b.cols != cols for b in blocks):
            raise DimensionError("vstack needs equal column counts")
        return cls([r for b in blocks for r in b._data], sum(b.rows for b in blocks), cols)

    @classmethod
    def block(cls, grid: Sequence[Sequence[IntMatrix]]) -> IntMatrix:
        return cls.vstack(*(cls.hstack(*row) for row in grid))

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self._data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def entries(self) -> tuple[int, ...]:
        """Row-major flat entries."""
        return tuple(x for r in self._data for x in r)

    def submatrix(self, rows: slice | range, cols: slice | range) -> IntMatrix:
        rr = range(self.rows)[rows] if isinstance(rows, slice) else rows
        cc = range(self.cols)[cols] if isinstance(cols, slice) else cols
        return IntMatrix(((self._data[i][j] for j in cc) for i in rr), len(rr), len(cc))

    def with_entry(self, i: int, j: int, value: int) -> IntMatrix:
        data = self.tolist()
        data[i][j] = value
        return IntMatrix(data, self.rows, self.cols)

    # -- arithmetic -------------------------------------------------------

    @property
    def T(self) -> IntMatrix:
        if self.rows == 0:
            return IntMatrix.zeros(self.cols, 0)
        return IntMatrix(zip(*self._data), self.cols, self.rows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        if other.cols == 0 or self.rows == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        cols = tuple(zip(*other._data)) if other.rows else ((),) * other.cols
        data = [tuple(sum(a * b for a, b in zip(row, col) if a) for col in cols)
                for row in self._data]
        return IntMatrix(data, self.rows, other.cols)

    def _check_same(self, other: IntMatrix) -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._check_same(other)
        return IntMatrix((tuple(a + b for a, b in zip(r, s))
                          for r, s in zip(self._data, other._data)), self.rows, self.cols)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        self._check_same(other)
        return IntMatrix((tuple(a - b for a, b in zip(r, s))
                          for r, s in zip(self._data, other._data)), self.rows, self.cols)

    def __neg__(self) -> IntMatrix:
        return IntMatrix((tuple(-a for a in r) for r in self._data), self.rows, self.cols)

    def __mul__(self, k: int) -> IntMatrix:
        return IntMatrix((tuple(k * a for a in r) for r in self._data), self.rows, self.cols)

    __rmul__ = __mul__

    def kron(self, other: IntMatrix) -> IntMatrix:
        """Kronecker product; rows/cols indexed as (self index, other index)."""
        data = [tuple(a * b for a in r for b in s) for r in self._data for s in other._data]
        return IntMatrix(data, self.rows * other.rows, self.cols * other.cols)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r}, rows={self.rows}, cols={self.cols})"


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == S`` with U, V unimodular and S in Smith form."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i, i] for i in range(min(self.S.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for s in self.diagonal if s)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Nonzero diagonal entries other than 1."""
        return tuple(s for s in self.diagonal if s > 1)


def _row_axpy(target: list[int], source: list[int], q: int) -> list[int]:
    # target - q * source
    return [a - q * b for a, b in zip(target, source)]


def _nearest_quotient(a: int, p: int) -> int:
    # quotient leaving the remainder of least absolute value; limits entry growth
    q, r = divmod(a, p)
    if 2 * abs(r) > abs(p):
        q += 1 if (r > 0) == (p > 0) else -1
    return q


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Diagonalize ``A`` by unimodular row and column operations.

    Pivot rule: at each diagonal position take the nonzero entry of least
    absolute value in the remaining block, ties going to the lowest row and
    then the lowest column.  While clearing the pivot row and column the
    smallest leftover remainder in that row/column becomes the new pivot,
    under the same ordering.  The output is therefore a pure function of A.
    """
    m, n = A.shape
    S = A.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    # Column operations on V are row operations on its transpose.
    Vt = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(a: int, b: int) -> None:
        if a != b:
            S[a], S[b] = S[b], S[a]
            U[a], U[b] = U[b], U[a]

    def swap_cols(a: int, b: int) -> None:
        if a != b:
            for row in S:
                row[a], row[b] = row[b], row[a]
            Vt[a], Vt[b] = Vt[b], Vt[a]

    t = 0
    while t < min(m, n):
        best = None
        best_abs = 0
        for r in range(t, m):
            row = S[r]
            for c in range(t, n):
                v = row[c]
                if v:
                    av = -v if v < 0 else v
                    if best is None or av < best_abs:
                        best, best_abs = (r, c), av
                        if av == 1:
                            break
            if best_abs == 1:
                break
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])

        while True:
            p = S[t][t]
            clean = True
            for r in range(t + 1, m):
                a = S[r][t]
                if a:
                    q = _nearest_quotient(a, p)
                    S[r] = _row_axpy(S[r], S[t], q)
                    U[r] = _row_axpy(U[r], U[t], q)
                    if S[r][t]:
                        clean = False
            for c in range(t + 1, n):
                a = S[t][c]
                if a:
                    q = _nearest_quotient(a, p)
                    for r in range(t, m):
                        if S[r][t]:
                            S[r][c] -= q * S[r][t]
                    Vt[c] = _row_axpy(Vt[c], Vt[t], q)
                    if S[t][c]:
                        clean = False
            if not clean:
                cands = [(abs(S[t][c]), t, c) for c in range(t + 1, n) if S[t][c]]
                cands += [(abs(S[r][t]), r, t) for r in range(t + 1, m) if S[r][t]]
                _, r, c = min(cands)
                swap_rows(t, r)
                swap_cols(t, c)
                continue
            bad = None
            for r in range(t + 1, m):
                row = S[r]
                for c in range(t + 1, n):
                    if row[c] % p:
                        bad = r
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            S[t] = _row_axpy(S[t], S[bad], -1)
            U[t] = _row_axpy(U[t], U[bad], -1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    V = IntMatrix(Vt, n, n).T
    return SmithDecomposition(IntMatrix(U, m, m), IntMatrix(S, m, n), V)


def solve_linear(A: IntMatrix, B: IntMatrix) -> IntMatrix | None:
    """Return an integer X with ``A @ X == B``, or None if there is none.

    The particular solution comes from Smith back-substitution with every
    free coordinate set to zero, so the answer is deterministic.
    """
    if A.rows != B.rows:
        raise DimensionError(f"row mismatch: A is {A.shape}, B is {B.shape}")
    m, n = A.shape
    p = B.cols
    if B.is_zero():
        return IntMatrix.zeros(n, p)
    dec = smith_normal_form(A)
    C = (dec.U @ B).tolist()
    diag = dec.diagonal
    r = dec.rank
    for i in range(r, m):
        if any(C[i]):
            return None
    Y = [[0] * p for _ in range(n)]
    for i in range(r):
        s = diag[i]
        for k in range(p):
            q, rem = divmod(C[i][k], s)
            if rem:
                return None
            Y[i][k] = q
    return dec.V @ IntMatrix(Y, n, p)


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Columns form a lattice basis of ``{x in Z^n : A x = 0}``."""
    n = A.cols
    if A.rows == 0 or A.is_zero():
        return IntMatrix.identity(n)
    dec = smith_normal_form(A)
    return dec.V.submatrix(slice(None), range(dec.rank, n))


def in_column_span(A: IntMatrix, B: IntMatrix) -> bool:
    """True when every column of B is an integer combination of A's columns."""
    return solve_linear(A, B) is not None


def determinant(A: IntMatrix) -> int:
    """Fraction-free (Bareiss) determinant of a square matrix."""
    n = A.rows
    if A.cols != n:
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = A.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]
