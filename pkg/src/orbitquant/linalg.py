"""Exact linear algebra over the rationals (and other exact rings).

Matrices are plain lists of lists.  Generic routines (multiplication,
determinant, adjugate, Pfaffian-free helpers) work for any entries that
support ring arithmetic, including MultiPoly; division-based routines
(RREF, kernel, inverse) require Fraction entries.

The sparse RREF is the workhorse behind rank certificates: rows are
dictionaries column -> Fraction, and the column processing order is a
caller-supplied key, which lets quotient-basis computations steer pivots
away from designated "standard monomial" columns.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .errors import DomainError, StructuralError

Matrix = list[list]


def shape(m: Matrix) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(r) != cols for r in m):
        raise StructuralError("ragged matrix")
    return rows, cols


def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int, zero=Fraction(0)) -> Matrix:
    return [[zero for _ in range(cols)] for _ in range(rows)]


def transpose(m: Matrix) -> Matrix:
    rows, cols = shape(m)
    return [[m[i][j] for i in range(rows)] for j in range(cols)]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise StructuralError("matrix size mismatch in addition")
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise StructuralError("matrix size mismatch in subtraction")
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(a: Matrix) -> Matrix:
    return [[-x for x in row] for row in a]


def mat_scale(a: Matrix, s) -> Matrix:
    return [[x * s for x in row] for row in a]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise StructuralError(f"matrix size mismatch: {ra}x{ca} times {rb}x{cb}")
    out = []
    for i in range(ra):
        row = []
        arow = a[i]
        for j in range(cb):
            acc = arow[0] * b[0][j]
            for k in range(1, ca):
                acc = acc + arow[k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def trace(m: Matrix):
    rows, cols = shape(m)
    if rows != cols:
        raise StructuralError("trace of a non-square matrix")
    acc = m[0][0]
    for i in range(1, rows):
        acc = acc + m[i][i]
    return acc


def is_symmetric(m: Matrix) -> bool:
    rows, cols = shape(m)
    return rows == cols and all(m[i][j] == m[j][i] for i in range(rows) for j in range(i + 1, cols))


def is_skew(m: Matrix) -> bool:
    rows, cols = shape(m)
    if rows != cols:
        return False
    return all(m[i][j] == -m[j][i] for i in range(rows) for j in range(i, cols))


def det(m: Matrix):
    """Determinant, generic over the entry ring.

    Fraction matrices go through Gaussian elimination (exact, O(n^3));
    symbolic entries fall back to cofactor expansion, which is only ever
    used on the small matrices this package manipulates (n <= 6).
    """
    rows, cols = shape(m)
    if rows != cols:
        raise StructuralError("determinant of a non-square matrix")
    if rows == 0:
        return Fraction(1)
    if rows == 1:
        return m[0][0]
    if rows == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if all(isinstance(x, (Fraction, int)) for row in m for x in row):
        return _det_fraction(m)
    total = None
    for j in range(cols):
        entry = m[0][j]
        minor = [[row[k] for k in range(cols) if k != j] for row in m[1:]]
        term = entry * det(minor)
        if j % 2 == 1:
            term = -term
        total = term if total is None else total + term
    return total


def _det_fraction(m: Matrix) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    result = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if a[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            result = -result
        result *= a[col][col]
        inv = Fraction(1) / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                factor = a[r][col] * inv
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return result


def adjugate(m: Matrix) -> Matrix:
    """Adjugate (transposed cofactor matrix): m * adj(m) = det(m) * I."""
    rows, cols = shape(m)
    if rows != cols:
        raise StructuralError("adjugate of a non-square matrix")
    if rows == 1:
        one = m[0][0] ** 0 if hasattr(m[0][0], "__pow__") else Fraction(1)
        return [[one]]
    out = zeros(rows, cols)
    for i in range(rows):
        for j in range(cols):
            minor = [
                [m[r][c] for c in range(cols) if c != j]
                for r in range(rows)
                if r != i
            ]
            cof = det(minor)
            if (i + j) % 2 == 1:
                cof = -cof
            out[j][i] = cof
    return out


def inverse(m: Matrix) -> Matrix:
    """Exact inverse of a Fraction matrix via Gauss-Jordan elimination."""
    rows, cols = shape(m)
    if rows != cols:
        raise StructuralError("inverse of a non-square matrix")
    n = rows
    a = [[Fraction(x) for x in row] for row in m]
    inv = identity(n)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if a[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            raise DomainError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        scale = a[col][col]
        a[col] = [x / scale for x in a[col]]
        inv[col] = [x / scale for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - factor * y for x, y in zip(inv[r], inv[col])]
    return inv


def solve(m: Matrix, rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve m x = rhs for square invertible m, exactly."""
    inv = inverse(m)
    return [
        sum((inv[i][j] * rhs[j] for j in range(len(rhs))), Fraction(0))
        for i in range(len(inv))
    ]


SparseRow = dict[int, Fraction]


class SparseRREF:
    """Incremental reduced row echelon form with a custom column order.

    Rows are added one at a time; each is reduced against the existing
    pivots, and if nonzero becomes a new pivot row on its smallest column
    under ``colkey`` (then back-substituted into older rows so the basis
    stays fully reduced).  ``rank`` is the number of pivot rows.
    """

    def __init__(self, colkey: Callable[[int], object] | None = None):
        self.colkey = colkey if colkey is not None else (lambda c: c)
        self.pivot_rows: dict[int, SparseRow] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def reduce_vector(self, row: SparseRow) -> SparseRow:
        """Return ``row`` reduced modulo the current row space.

        Pivot rows are kept mutually interreduced, so each stored row
        touches no pivot column except its own and a single pass over the
        input's pivot columns is a complete reduction.
        """
        out = dict(row)
        for col in sorted((c for c in row if c in self.pivot_rows), key=self.colkey):
            coeff = out.get(col)
            if not coeff:
                continue
            for c, v in self.pivot_rows[col].items():
                new = out.get(c, Fraction(0)) - coeff * v
                if new == 0:
                    out.pop(c, None)
                else:
                    out[c] = new
        return {c: v for c, v in out.items() if v != 0}

    def add_row(self, row: SparseRow) -> int | None:
        """Insert a row; return its pivot column, or None if dependent."""
        reduced = self.reduce_vector(row)
        if not reduced:
            return None
        col = min(reduced, key=self.colkey)
        scale = reduced[col]
        new_row = {c: v / scale for c, v in reduced.items()}
        # back-substitute into existing pivot rows
        for pcol, prow in self.pivot_rows.items():
            coeff = prow.get(col)
            if coeff:
                for c, v in new_row.items():
                    val = prow.get(c, Fraction(0)) - coeff * v
                    if val == 0:
                        prow.pop(c, None)
                    else:
                        prow[c] = val
        self.pivot_rows[col] = new_row
        return col


def sparse_rank(rows, colkey=None) -> int:
    rref = SparseRREF(colkey)
    for row in rows:
        rref.add_row(row)
    return rref.rank


def rational_rank(m: Matrix) -> int:
    rows, cols = shape(m)
    sparse_rows = (
        {j: Fraction(v) for j, v in enumerate(row) if v != 0} for row in m
    )
    return sparse_rank(sparse_rows)


def rational_kernel(m: Matrix) -> list[list[Fraction]]:
    """Exact basis of the right null space of a rational matrix.

    rank + len(kernel) always equals the number of columns.
    """
    rows, cols = shape(m)
    rref = SparseRREF()
    for row in m:
        rref.add_row({j: Fraction(v) for j, v in enumerate(row) if v != 0})
    pivots = rref.pivot_rows
    free_cols = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for pcol, prow in pivots.items():
            coeff = prow.get(fc)
            if coeff:
                vec[pcol] = -coeff
        basis.append(vec)
    return basis


