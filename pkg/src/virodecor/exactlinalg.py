"""Exact rational linear algebra: determinants, minors, kernels, chirotopes.

Everything in this module is computed over ``fractions.Fraction``; there is
no floating point anywhere.  Sign decisions made here (orientation of
coefficient submatrices) are the trust anchor for every decoration claim in
the rest of the package.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence


class RankDeficiencyError(ValueError):
    """Raised when an operation requires full row rank and the input lacks it."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class RationalMatrix:
    """Dense matrix of exact rationals, row-major, immutable."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, entries: Sequence[Sequence]):
        data = tuple(tuple(_frac(x) for x in row) for row in entries)
        if not data:
            raise ValueError("matrix must have at least one row")
        ncols = len(data[0])
        if any(len(row) != ncols for row in data):
            raise ValueError("ragged rows")
        self.rows = len(data)
        self.cols = ncols
        self._data = data

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._data)

    def to_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self._data]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(list(zip(*self._data)))

    def submatrix_columns(self, cols: Iterable[int]) -> "RationalMatrix":
        cols = list(cols)
        return RationalMatrix([[row[j] for j in cols] for row in self._data])

    def delete_column(self, j: int) -> "RationalMatrix":
        return self.submatrix_columns([c for c in range(self.cols) if c != j])

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matmul")
        ot = other.transpose()
        return RationalMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in ot._data]
             for row in self._data]
        )

    def matvec(self, v: Sequence) -> tuple[Fraction, ...]:
        v = [_frac(x) for x in v]
        if len(v) != self.cols:
            raise ValueError("shape mismatch in matvec")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self._data)

    def __eq__(self, other):
        return (
            isinstance(other, RationalMatrix) and self._data == other._data
        )

    def __hash__(self):
        return hash(self._data)

    def __repr__(self):
        return f"RationalMatrix({[list(map(str, r)) for r in self._data]})"

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [format_rational(x) for row in self._data for x in row],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d: dict) -> "RationalMatrix":
        r, c = d["rows"], d["cols"]
        flat = [parse_rational(s) for s in d["entries"]]
        if len(flat) != r * c:
            raise ValueError("entries length does not match rows*cols")
        return cls([flat[i * c:(i + 1) * c] for i in range(r)])

    @classmethod
    def from_json(cls, s: str) -> "RationalMatrix":
        return cls.from_json_dict(json.loads(s))


def format_rational(x: Fraction) -> str:
    x = _frac(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


# -- core eliminations ----------------------------------------------------


def _integer_rows(M: RationalMatrix) -> tuple[list[list[int]], Fraction]:
    """Scale each row to integers; return rows and the product of scalings."""
    rows = []
    scale = Fraction(1)
    for row in M.to_lists():
        mult = lcm(*(x.denominator for x in row)) if row else 1
        rows.append([int(x * mult) for x in row])
        scale *= mult
    return rows, scale


def determinant(M: RationalMatrix) -> Fraction:
    """Exact determinant by fraction-free Bareiss elimination."""
    if M.rows != M.cols:
        raise ValueError("determinant requires a square matrix")
    a, scale = _integer_rows(M)
    n = M.rows
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1]) / scale


def determinant_cofactor(M: RationalMatrix) -> Fraction:
    """Cofactor expansion along the first row; independent cross-check."""
    if M.rows != M.cols:
        raise ValueError("determinant requires a square matrix")
    if M.rows == 1:
        return M[0, 0]
    total = Fraction(0)
    rest = RationalMatrix(M.to_lists()[1:]) if M.rows > 1 else None
    for j in range(M.cols):
        if M[0, j] == 0:
            continue
        total += (-1) ** j * M[0, j] * determinant_cofactor(rest.delete_column(j))
    return total


def rank(M: RationalMatrix) -> int:
    a = M.to_lists()
    nrows, ncols = M.rows, M.cols
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == nrows:
            break
    return r


def solve(M: RationalMatrix, rhs: Sequence) -> tuple[Fraction, ...]:
    """Solve M x = rhs exactly; M must be square and invertible."""
    if M.rows != M.cols:
        raise ValueError("solve requires a square matrix")
    n = M.rows
    a = [list(row) + [_frac(b)] for row, b in zip(M.to_lists(), rhs)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            raise RankDeficiencyError("singular matrix in solve")
        a[c], a[pivot] = a[pivot], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(a[i][n] for i in range(n))


# -- oriented-matrix operations -------------------------------------------


def maximal_minors(M: RationalMatrix) -> tuple[Fraction, ...]:
    """The d+1 maximal minors of a d x (d+1) matrix, i-th = det without column i."""
    if M.cols != M.rows + 1:
        raise ValueError("expected shape d x (d+1)")
    return tuple(determinant(M.delete_column(j)) for j in range(M.cols))


def is_oriented(M: RationalMatrix) -> bool:
    """True iff all signed minors (-1)^i * minor(M, i) are nonzero of one sign."""
    minors = maximal_minors(M)
    signs = set()
    for i, m in enumerate(minors, start=1):
        if m == 0:
            return False
        signs.add(1 if (-1) ** i * m > 0 else -1)
        if len(signs) > 1:
            return False
    return True


def positive_kernel_vector(M: RationalMatrix) -> tuple[Fraction, ...] | None:
    """Strictly positive kernel vector of an oriented d x (d+1) matrix.

    Returns the unique kernel vector normalized to first coordinate 1, or
    None when M is full rank but not oriented.  Rank-deficient input raises
    RankDeficiencyError so callers can tell the two failure modes apart.
    """
    if M.cols != M.rows + 1:
        raise ValueError("expected shape d x (d+1)")
    minors = maximal_minors(M)
    if all(m == 0 for m in minors):
        raise RankDeficiencyError("matrix has rank < d; kernel is not a line")
    if rank(M) < M.rows:
        raise RankDeficiencyError("matrix has rank < d; kernel is not a line")
    v = [(-1) ** (i + 1) * m for i, m in enumerate(minors, start=1)]
    ref = next(x for x in v if x != 0)
    if ref < 0:
        v = [-x for x in v]
    if any(x <= 0 for x in v):
        return None
    return tuple(x / v[0] for x in v)


def chirotope(C: RationalMatrix) -> dict[tuple[int, ...], int]:
    """Signs of all maximal (d x d) minors, keyed by 1-based column subsets.

    Subsets are produced in lexicographic order.
    """
    d, n = C.rows, C.cols
    if n < d:
        raise ValueError("need at least d columns")
    out: dict[tuple[int, ...], int] = {}
    for cols in combinations(range(n), d):
        det = determinant(C.submatrix_columns(cols))
        out[tuple(c + 1 for c in cols)] = 0 if det == 0 else (1 if det > 0 else -1)
    return out


def left_kernel_basis(M: RationalMatrix) -> RationalMatrix | None:
    """Exact basis of {x : x . M = 0}, one row per basis vector.

    Returns None when the left kernel is trivial (full row rank).
    """
    # kernel of M^T: reduce M^T, read the free-variable basis
    a = M.transpose().to_lists()
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -a[i][fc]
        basis.append(vec)
    return RationalMatrix(basis)
