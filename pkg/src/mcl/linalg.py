"""Exact integer matrix algebra.

Lattices are always *column* spans: the lattice of a ``d x n`` matrix is the
set of integer combinations of its ``n`` columns, a subgroup of ``Z^d``.
Everything uses Python integers, so there is no overflow and no rounding.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

__all__ = [
    "IntMatrix",
    "SnfResult",
    "smith_normal_form",
    "hermite_normal_form",
    "lattice_member",
    "lattice_coords",
    "lattice_rank",
    "lattice_sum",
    "lattice_equal",
    "det",
    "unimodular_inverse",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major.

    ``rows`` and ``cols`` are kept explicitly so that ``d x 0`` matrices (an
    empty generating set in ``Z^d``) keep their ambient dimension.
    """

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(int(v) for r in rows for v in r))

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], nrows: int) -> "IntMatrix":
        columns = [list(c) for c in columns]
        for c in columns:
            if len(c) != nrows:
                raise ValueError(f"column of length {len(c)} in a {nrows}-row matrix")
        return cls(nrows, len(columns),
                   tuple(int(columns[j][i]) for i in range(nrows) for j in range(len(columns))))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: Optional[int] = None,
                 cols: Optional[int] = None) -> "IntMatrix":
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(diag):
            out[i][i] = v
        return cls.from_rows(out, cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(self.columns(), self.rows)

    def diag(self) -> list:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        a = self.to_rows()
        bcols = other.columns()
        return IntMatrix.from_rows(
            [[sum(x * y for x, y in zip(r, c)) for c in bcols] for r in a], other.cols
        )

    def apply(self, v: Sequence[int]) -> tuple:
        if len(v) != self.cols:
            raise ValueError("vector length does not match matrix columns")
        c = self.cols
        e = self.entries
        return tuple(sum(e[i * c + j] * v[j] for j in range(c)) for i in range(self.rows))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return IntMatrix.from_columns(self.columns() + other.columns(), self.rows)

    def is_zero(self) -> bool:
        return not any(self.entries)


@dataclass(frozen=True)
class SnfResult:
    """``u @ m @ v == d`` with ``u``, ``v`` unimodular and ``d`` in Smith form."""

    d: IntMatrix
    u: IntMatrix
    v: IntMatrix

    @property
    def invariants(self) -> list:
        return self.d.diag()


def det(m: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: IntMatrix) -> SnfResult:
    """Smith normal form by elementary row and column operations.

    The pivot is always the entry of least nonzero absolute value in the
    remaining block; the divisibility chain is enforced by folding an
    offending row into the pivot row and reducing again.
    """
    nr, nc = m.rows, m.cols
    a = m.to_rows()
    u = IntMatrix.identity(nr).to_rows()
    # v is kept transposed so column operations become row operations
    vt = IntMatrix.identity(nc).to_rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        vt[i], vt[j] = vt[j], vt[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        ra, rs = a[dst], a[src]
        for c in range(nc):
            ra[c] += k * rs[c]
        ua, us = u[dst], u[src]
        for c in range(nr):
            ua[c] += k * us[c]

    def add_col(dst, src, k):
        for r in a:
            r[dst] += k * r[src]
        va, vs = vt[dst], vt[src]
        for c in range(nc):
            va[c] += k * vs[c]

    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                row = a[i]
                for j in range(t, nc):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < nr and t < nc and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    return SnfResult(
        d=IntMatrix.from_rows(a, nc),
        u=IntMatrix.from_rows(u, nr),
        v=IntMatrix.from_rows(vt, nc).transpose() if nc else IntMatrix.zeros(0, 0),
    )


def _row_hnf(gens: list, dim: int) -> list:
    """Row-style HNF of generator rows; returns the nonzero rows only."""
    a = [list(g) for g in gens if any(g)]
    out = []
    col = 0
    while a and col < dim:
        nz = [r for r in a if r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            for r in nz[1:]:
                q = r[col] // p[col]
                for c in range(col, dim):
                    r[c] -= q * p[c]
            nz = [p] + [r for r in nz[1:] if r[col]]
        pivot = nz[0]
        if pivot[col] < 0:
            for c in range(col, dim):
                pivot[c] = -pivot[c]
        a = [r for r in a if r is not pivot and any(r)]
        pv = pivot[col]
        for r in out:
            q = r[col] // pv
            if q:
                for c in range(col, dim):
                    r[c] -= q * pivot[c]
        out.append(pivot)
        col += 1
    return out


def hermite_normal_form(m: IntMatrix) -> IntMatrix:
    """Canonical basis of the column lattice of ``m``.

    The result has ``m.rows`` rows and one column per basis vector (zero
    columns dropped). Column ``j`` has its first nonzero entry in row ``p_j``
    with ``p_1 < p_2 < ...``; that pivot is positive and every earlier column
    has its row-``p_j`` entry reduced into ``[0, pivot)``. Equal lattices
    therefore give identical matrices.
    """
    basis = _row_hnf(m.columns(), m.rows)
    return IntMatrix.from_columns(basis, m.rows)


def _pivots(basis: IntMatrix) -> list:
    piv = []
    for col in basis.columns():
        for i, x in enumerate(col):
            if x:
                piv.append(i)
                break
    return piv


def lattice_coords(hnf_basis: IntMatrix, v: Sequence[int]) -> Optional[list]:
    """Coefficients of ``v`` in an HNF basis, or ``None`` if ``v`` is outside."""
    if len(v) != hnf_basis.rows:
        raise ValueError(f"vector of length {len(v)} against {hnf_basis.rows}-row basis")
    r = list(v)
    coeffs = []
    cols = hnf_basis.columns()
    start = 0
    for col, p in zip(cols, _pivots(hnf_basis)):
        if any(r[start:p]):
            return None
        q, rem = divmod(r[p], col[p])
        if rem:
            return None
        if q:
            for i in range(p, len(r)):
                r[i] -= q * col[i]
        coeffs.append(q)
        start = p + 1
    if any(r):
        return None
    return coeffs


def lattice_member(basis: IntMatrix, v: Sequence[int]) -> bool:
    """True iff ``v`` is an integer combination of the columns of ``basis``."""
    if len(v) != basis.rows:
        raise ValueError(f"vector of length {len(v)} against {basis.rows}-row basis")
    return lattice_coords(hermite_normal_form(basis), v) is not None


def lattice_rank(basis: IntMatrix) -> int:
    return sum(1 for x in smith_normal_form(basis).invariants if x)


def lattice_sum(*bases: IntMatrix) -> IntMatrix:
    """HNF of the sum of several column lattices in the same ``Z^d``."""
    if not bases:
        raise ValueError("need at least one lattice")
    dim = bases[0].rows
    cols = []
    for b in bases:
        if b.rows != dim:
            raise ValueError("lattices live in different ambient dimensions")
        cols.extend(b.columns())
    return hermite_normal_form(IntMatrix.from_columns(cols, dim))


def lattice_equal(a: IntMatrix, b: IntMatrix) -> bool:
    return hermite_normal_form(a) == hermite_normal_form(b)


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    """Inverse of an integer matrix with determinant +-1."""
    from fractions import Fraction

    n = m.rows
    if n != m.cols:
        raise ValueError("inverse of a non-square matrix")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m.to_rows())]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        a[c], a[p] = a[p], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    out = [row[n:] for row in a]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return IntMatrix.from_rows([[int(x) for x in row] for row in out], n)
