"""Exact sparse linear algebra over the rationals.

Scalars are ``gmpy2.mpq`` values (arbitrary precision, always in lowest
terms).  Vectors are stored as ``{column: value}`` dicts with no explicit
zeros.  The workhorse is :class:`RowReducer`, an incremental echelon form
that accepts rows one at a time and discards rows that reduce to zero, so
that spans of very many rows can be ranked in memory proportional to the
ambient dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from heapq import heapify, heappop, heappush
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

Rational = type(mpq(0))

DENSE_CUTOFF = 64


class DimensionError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    pass


def Q(value, den=None) -> Rational:
    """Coerce ints, Fractions, strings like ``"3/4"`` and mpq to mpq."""
    if den is not None:
        return mpq(value, den)
    if isinstance(value, Rational):
        return value
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact scalars")
    return mpq(value)


def parse_rational(text: str) -> Rational:
    text = text.strip()
    if "/" in text:
        p, q = text.split("/", 1)
        if int(q) == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return mpq(int(p), int(q))
    return mpq(int(text))


def format_rational(q) -> str:
    q = Q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_power_of_two_unit(q) -> bool:
    """True iff q = +-2^k for some integer k (a unit of Z[1/2])."""
    q = Q(q)
    if q == 0:
        return False
    num, den = abs(q.numerator), q.denominator
    return num & (num - 1) == 0 and den & (den - 1) == 0


def two_adic_exponent(q) -> int:
    """k with q = +-2^k; only meaningful when is_power_of_two_unit(q)."""
    q = Q(q)
    return abs(q.numerator).bit_length() - q.denominator.bit_length()


@dataclass(frozen=True)
class SparseVector:
    dim: int
    entries: Mapping[int, Rational] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, v in self.entries.items():
            if not 0 <= k < self.dim:
                raise DimensionError(f"index {k} outside dimension {self.dim}")
            v = Q(v)
            if v:
                clean[k] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, values: Sequence) -> "SparseVector":
        return cls(len(values), {i: v for i, v in enumerate(values) if v})

    @classmethod
    def unit(cls, dim: int, i: int) -> "SparseVector":
        return cls(dim, {i: 1})

    def to_dense(self) -> list:
        out = [mpq(0)] * self.dim
        for k, v in self.entries.items():
            out[k] = v
        return out

    def __getitem__(self, i: int) -> Rational:
        return self.entries.get(i, mpq(0))

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self.dim == other.dim and self.entries == other.entries

    def __hash__(self):
        return hash((self.dim, frozenset(self.entries.items())))

    def __add__(self, other: "SparseVector") -> "SparseVector":
        if self.dim != other.dim:
            raise DimensionError("dimension mismatch")
        out = dict(self.entries)
        axpy(out, 1, other.entries)
        return SparseVector(self.dim, out)

    def scale(self, c) -> "SparseVector":
        c = Q(c)
        return SparseVector(self.dim, {k: c * v for k, v in self.entries.items()})

    def dot(self, other: "SparseVector") -> Rational:
        a, b = self.entries, other.entries
        if len(a) > len(b):
            a, b = b, a
        return sum((v * b[k] for k, v in a.items() if k in b), mpq(0))


@dataclass(frozen=True)
class SparseMatrix:
    rows: tuple
    ncols: int

    def __init__(self, rows: Iterable[SparseVector], ncols: int | None = None):
        rows = tuple(rows)
        if ncols is None:
            if not rows:
                raise DimensionError("cannot infer column count of an empty matrix")
            ncols = rows[0].dim
        for r in rows:
            if r.dim != ncols:
                raise DimensionError(f"row of dimension {r.dim}, expected {ncols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def from_dense(cls, values: Sequence[Sequence], ncols: int | None = None):
        rows = [SparseVector.from_dense(r) for r in values]
        if ncols is None and not rows:
            ncols = 0
        return cls(rows, ncols)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls([SparseVector.unit(n, i) for i in range(n)], n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def to_dense(self) -> list[list]:
        return [r.to_dense() for r in self.rows]

    def matvec(self, x: SparseVector) -> SparseVector:
        if x.dim != self.ncols:
            raise DimensionError("shape mismatch")
        return SparseVector(self.nrows, {i: r.dot(x) for i, r in enumerate(self.rows)})

    def transpose(self) -> "SparseMatrix":
        cols = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.entries.items():
                cols[j][i] = v
        return SparseMatrix([SparseVector(self.nrows, c) for c in cols], self.nrows)


def axpy(y: dict, a, x: Mapping) -> dict:
    """In place ``y += a*x`` on sparse dicts, dropping cancelled entries."""
    for k, v in x.items():
        s = y.get(k)
        if s is None:
            y[k] = a * v
        else:
            s += a * v
            if s:
                y[k] = s
            else:
                del y[k]
    return y


class RowReducer:
    """Incremental row echelon form.

    Pivot rows are normalised to leading coefficient 1 and indexed by their
    leading column.  Each stored pivot row only has entries at columns at or
    beyond its pivot, so elimination walks columns in increasing order with
    a heap.  The pivot chosen for a new row is its first surviving column,
    which makes the result independent of anything but the row order; the
    rank is independent of row order altogether.
    """

    def __init__(self, dim: int | None = None):
        self.dim = dim
        self.pivots: dict[int, dict] = {}
        self.leads: list[tuple[int, Rational]] = []

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _check(self, row: Mapping):
        if self.dim is not None:
            for k in row:
                if not 0 <= k < self.dim:
                    raise DimensionError(f"column {k} outside dimension {self.dim}")

    def reduce(self, row: Mapping, full: bool = False) -> dict:
        """Return the residual of ``row`` modulo the stored pivots.

        With ``full=False`` elimination stops at the first non-pivot column,
        which is all that rank needs.
        """
        row = {k: Q(v) for k, v in row.items() if v}
        pivots = self.pivots
        heap = list(row)
        heapify(heap)
        last = -1
        while heap:
            c = heappop(heap)
            if c == last:
                continue
            last = c
            coef = row.get(c)
            if coef is None:
                continue
            prow = pivots.get(c)
            if prow is None:
                if full:
                    continue
                break
            for k, v in prow.items():
                s = row.get(k)
                if s is None:
                    row[k] = -coef * v
                    heappush(heap, k)
                else:
                    s -= coef * v
                    if s:
                        row[k] = s
                    else:
                        del row[k]
        return row

    def add(self, row: Mapping) -> bool:
        """Insert a row; returns True if it enlarged the span."""
        self._check(row)
        res = self.reduce(row)
        if not res:
            return False
        lead = min(res)
        val = res[lead]
        inv = 1 / val
        self.pivots[lead] = {k: v * inv for k, v in res.items()}
        self.leads.append((lead, val))
        return True

    def extend(self, rows: Iterable[Mapping]) -> int:
        for r in rows:
            self.add(r)
        return self.rank

    def copy(self) -> "RowReducer":
        out = RowReducer(self.dim)
        out.pivots = {p: dict(r) for p, r in self.pivots.items()}
        out.leads = list(self.leads)
        return out

    def contains(self, row: Mapping) -> bool:
        return not self.reduce(row)

    def rref(self) -> dict[int, dict]:
        """Fully reduced pivot rows (each pivot column zero in other rows)."""
        out: dict[int, dict] = {}
        for p in sorted(self.pivots, reverse=True):
            row = dict(self.pivots[p])
            for c in [c for c in row if c != p and c in out]:
                coef = row.get(c)
                if coef:
                    axpy(row, -coef, out[c])
            out[p] = row
        return out


def _as_dicts(rows) -> tuple[list[dict], int | None]:
    if isinstance(rows, SparseMatrix):
        return [dict(r.entries) for r in rows.rows], rows.ncols
    rows = list(rows)
    dim = None
    for r in rows:
        if dim is None:
            dim = r.dim
        elif r.dim != dim:
            raise DimensionError(f"rows of dimensions {dim} and {r.dim}")
    return [dict(r.entries) for r in rows], dim


def rank(rows) -> int:
    """Dimension of the span of a sequence of SparseVectors (or a matrix)."""
    dicts, dim = _as_dicts(rows)
    return RowReducer(dim).extend(dicts)


def rank_of_dicts(rows: Iterable[Mapping], dim: int | None = None) -> int:
    return RowReducer(dim).extend(rows)


def kernel_basis(M: SparseMatrix) -> list[SparseVector]:
    """Basis of {x : M x = 0}, one vector per free column."""
    red = RowReducer(M.ncols)
    red.extend(dict(r.entries) for r in M.rows)
    return [SparseVector(M.ncols, v) for v in kernel_from_reducer(red, M.ncols)]


def kernel_from_reducer(red: RowReducer, ncols: int) -> list[dict]:
    rr = red.rref()
    basis = []
    for f in range(ncols):
        if f in rr:
            continue
        vec = {f: mpq(1)}
        for p, row in rr.items():
            v = row.get(f)
            if v:
                vec[p] = -v
        basis.append(vec)
    return basis


def solve_square(M: SparseMatrix, rhs: SparseVector) -> SparseVector:
    n, m = M.shape
    if n != m or rhs.dim != n:
        raise DimensionError(f"expected square system, got {M.shape} with rhs {rhs.dim}")
    red = RowReducer(n + 1)
    for i, r in enumerate(M.rows):
        row = dict(r.entries)
        if rhs[i]:
            row[n] = rhs[i]
        red.add(row)
    if n in red.pivots or red.rank < n:
        raise SingularMatrixError("matrix is singular")
    rr = red.rref()
    return SparseVector(n, {p: rr[p].get(n, 0) for p in range(n)})


class InverseSolver:
    """Factor a square invertible matrix once, solve for many right-hand sides.

    Row reduces ``[M | I]``; the tail of pivot row ``p`` is row ``p`` of
    ``M^{-1}``.  Only the requested rows of the inverse are kept.
    """

    def __init__(self, M: SparseMatrix | Sequence[Mapping], n: int | None = None,
                 keep: Iterable[int] | None = None):
        if isinstance(M, SparseMatrix):
            if M.nrows != M.ncols:
                raise DimensionError(f"expected square matrix, got {M.shape}")
            n = M.ncols
            rows = [dict(r.entries) for r in M.rows]
        else:
            rows = list(M)
            if n is None or len(rows) != n:
                raise DimensionError("row count must equal n")
        self.n = n
        red = RowReducer(2 * n)
        for i, r in enumerate(rows):
            row = dict(r)
            row[n + i] = mpq(1)
            red.add(row)
        if any(p >= n for p in red.pivots) or sum(1 for p in red.pivots if p < n) < n:
            raise SingularMatrixError("matrix is singular")
        rr = red.rref()
        wanted = range(n) if keep is None else keep
        self.inverse_rows = {
            p: {k - n: v for k, v in rr[p].items() if k >= n} for p in wanted
        }

    def coordinate(self, p: int, rhs: Mapping) -> Rational:
        """Entry ``p`` of ``M^{-1} rhs``."""
        row = self.inverse_rows[p]
        if len(row) > len(rhs):
            return sum((v * row[k] for k, v in rhs.items() if k in row), mpq(0))
        return sum((v * rhs[k] for k, v in row.items() if k in rhs), mpq(0))

    def solve(self, rhs: Mapping) -> dict:
        out = {}
        for p in self.inverse_rows:
            v = self.coordinate(p, rhs)
            if v:
                out[p] = v
        return out


def _det_dense(A: list[list]) -> Rational:
    # Bareiss fraction-free elimination; exact for integer and rational input
    n = len(A)
    if n == 0:
        return mpq(1)
    A = [list(map(Q, r)) for r in A]
    sign = 1
    prev = mpq(1)
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return mpq(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _permutation_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def determinant_of_dicts(rows: Sequence[Mapping], n: int) -> Rational:
    if len(rows) != n:
        raise DimensionError(f"expected {n} rows, got {len(rows)}")
    if n < DENSE_CUTOFF:
        dense = [[mpq(0)] * n for _ in range(n)]
        for i, r in enumerate(rows):
            for k, v in r.items():
                dense[i][k] = Q(v)
        return _det_dense(dense)
    # adding a multiple of an earlier row never changes the determinant, so
    # the reduced rows form a row-permuted triangular matrix
    red = RowReducer(n)
    for r in rows:
        if not red.add(r):
            return mpq(0)
    det = mpq(1)
    perm = []
    for lead, val in red.leads:
        det *= val
        perm.append(lead)
    return _permutation_sign(perm) * det


def determinant(M: SparseMatrix) -> Rational:
    if M.nrows != M.ncols:
        raise DimensionError(f"determinant of non-square {M.shape} matrix")
    return determinant_of_dicts([r.entries for r in M.rows], M.ncols)


__all__ = [
    "DENSE_CUTOFF", "DimensionError", "InverseSolver", "Q", "Rational", "RowReducer",
    "SingularMatrixError", "SparseMatrix", "SparseVector", "axpy", "determinant",
    "determinant_of_dicts", "format_rational", "is_power_of_two_unit",
    "kernel_basis", "kernel_from_reducer", "parse_rational", "rank", "rank_of_dicts",
    "solve_square", "two_adic_exponent",
]
