"""Orbit rank of an integer matrix and the ranks it controls.

``OR(A)`` is the least number of vectors whose ``A``-orbits span ``Z^d``.
By Cayley-Hamilton the powers ``A^0 .. A^(d-1)`` already give the whole
span of an orbit, so orbit lattices are finite computations. The minimum
itself is found by search over a bounded pool of candidate vectors; no a
priori bound on witness entries is known, so every result records the pool
bound it is exact under.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import InputError, ResourceLimitError
from .linalg import IntMatrix, det, hermite_normal_form, smith_normal_form

EXHAUSTIVE_MAX_DIM = 6
EXHAUSTIVE_MAX_COMBOS = 2_000_000


@dataclass(frozen=True)
class OrbitRankResult:
    value: int
    witness: tuple
    pool_bound: int
    mode: str = "exhaustive"


def _as_matrix(a) -> IntMatrix:
    m = a if isinstance(a, IntMatrix) else IntMatrix.from_rows(a)
    if m.rows != m.cols:
        raise InputError(f"expected a square matrix, got {m.rows}x{m.cols}")
    return m


def _orbit(a: IntMatrix, v: Sequence[int]) -> list:
    out = []
    cur = tuple(v)
    for _ in range(a.rows):
        out.append(cur)
        cur = a.apply(cur)
    return out


def orbit_lattice(a, vs: Sequence[Sequence[int]]) -> IntMatrix:
    """HNF basis of the span of ``{A^n v : 0 <= n < d, v in vs}``."""
    a = _as_matrix(a)
    d = a.rows
    cols = []
    for v in vs:
        if len(v) != d:
            raise InputError(f"vector {list(v)} does not have length {d}")
        cols.extend(_orbit(a, v))
    return hermite_normal_form(IntMatrix.from_columns(cols, d))


def _spans_everything(basis: IntMatrix) -> bool:
    return basis == IntMatrix.identity(basis.rows)


def _pool(d: int, bound: int) -> list:
    """Nonzero vectors with entries in ``[-bound, bound]`` up to sign."""
    out = []
    for v in itertools.product(range(-bound, bound + 1), repeat=d):
        nz = next((c for c in v if c), 0)
        if nz > 0:
            out.append(v)
    out.sort(key=lambda v: (max(map(abs, v)), sum(map(abs, v)), [-c for c in v]))
    return out


def _check_search_size(n: int, k: int):
    from math import comb

    if comb(n, k) > EXHAUSTIVE_MAX_COMBOS:
        raise ResourceLimitError(
            f"exhaustive search over C({n},{k}) candidate sets is too large; use greedy mode")


def orbit_rank(a, pool_bound: int = 1) -> OrbitRankResult:
    """Exact ``OR(A)`` among witness sets drawn from the pool of bound ``pool_bound``.

    Set sizes increase from 1; for each size the pool bound escalates from 1
    to ``pool_bound``, so a size-``s`` answer is the least size achievable
    with entries up to ``pool_bound``. The standard basis always works, so
    the answer is at most ``d``.
    """
    a = _as_matrix(a)
    d = a.rows
    if d > EXHAUSTIVE_MAX_DIM:
        raise ResourceLimitError(f"exhaustive orbit rank is limited to d <= {EXHAUSTIVE_MAX_DIM}; use greedy mode")
    if pool_bound < 1:
        raise InputError("pool bound must be at least 1")
    if d == 0:
        return OrbitRankResult(0, (), pool_bound)
    orbit_cache = {}

    def orbit_cols(v):
        if v not in orbit_cache:
            orbit_cache[v] = _orbit(a, v)
        return orbit_cache[v]

    for size in range(1, d):
        prev_len = 0
        for bound in range(1, pool_bound + 1):
            pool = _pool(d, bound)
            _check_search_size(len(pool), size)
            for combo in itertools.combinations(range(len(pool)), size):
                # combos already tried at a smaller bound use only old vectors
                if combo[-1] < prev_len:
                    continue
                cols = []
                for i in combo:
                    cols.extend(orbit_cols(pool[i]))
                if _spans_everything(hermite_normal_form(IntMatrix.from_columns(cols, d))):
                    return OrbitRankResult(size, tuple(pool[i] for i in combo), pool_bound)
            prev_len = len(pool)
    basis = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    return OrbitRankResult(d, basis, pool_bound)


def _index_key(basis: IntMatrix) -> tuple:
    """(rank, -index): larger is better. Index is the product of the invariants."""
    inv = [x for x in smith_normal_form(basis).invariants if x]
    idx = 1
    for x in inv:
        idx *= x
    return (len(inv), -idx)


def orbit_rank_greedy(a, pool_bound: int = 1) -> OrbitRankResult:
    """Upper bound for ``OR(A)``: repeatedly add the pool vector that most
    improves (rank, then index) of the orbit lattice."""
    a = _as_matrix(a)
    d = a.rows
    if pool_bound < 1:
        raise InputError("pool bound must be at least 1")
    pool = _pool(d, pool_bound)
    chosen = []
    cols = []
    current = hermite_normal_form(IntMatrix.zeros(d, 0))
    while not _spans_everything(current) and len(chosen) < d:
        best = None
        for v in pool:
            lat = hermite_normal_form(IntMatrix.from_columns(cols + _orbit(a, v), d))
            key = _index_key(lat)
            if best is None or key > best[0]:
                best = (key, v, lat)
        _, v, current = best
        chosen.append(v)
        cols.extend(_orbit(a, v))
    if not _spans_everything(current):
        chosen = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    return OrbitRankResult(len(chosen), tuple(chosen), pool_bound, "greedy")


def _require_unimodular(a: IntMatrix):
    if abs(det(a)) != 1:
        raise InputError("matrix is not in GL(d, Z)")


def semidirect_rank(a, pool_bound: int = 1) -> int:
    """Rank of ``Z^d x|_A Z``, which is ``1 + OR(A)``."""
    a = _as_matrix(a)
    _require_unimodular(a)
    return 1 + orbit_rank(a, pool_bound).value


def intrk_fiber(a, pool_bound: int = 1) -> int:
    """Intermediate rank of the fiber ``Z^d`` in ``Z^d x|_A Z``: ``min(d, 1 + OR(A))``."""
    a = _as_matrix(a)
    return min(a.rows, semidirect_rank(a, pool_bound))


def is_single_eigenvalue(a) -> bool:
    """True when the characteristic polynomial is ``(t - c)^d`` for an integer ``c``.

    For ``A`` in ``GL(d, Z)`` this means ``c = +-1`` and ``A - cI`` nilpotent.
    """
    a = _as_matrix(a)
    d = a.rows
    for c in (1, -1):
        n = IntMatrix.from_rows(
            [[a[i, j] - (c if i == j else 0) for j in range(d)] for i in range(d)])
        p = n
        for _ in range(d - 1):
            p = p @ n
        if p.is_zero():
            return True
    return False


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = 2
    while p * p <= q:
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
        p += 1
    return True


def c_d(d: int) -> int:
    """Product of all prime powers ``q <= d``."""
    if d < 2:
        raise InputError("C_d needs d >= 2")
    out = 1
    for q in range(2, d + 1):
        if is_prime_power(q):
            out *= q
    return out


def matrix_power(a, n: int) -> IntMatrix:
    a = _as_matrix(a)
    out = IntMatrix.identity(a.rows)
    for _ in range(n):
        out = out @ a
    return out


def power_orbit_rank_is_full(a, n: int, pool_bound: int = 1) -> bool:
    """Check ``OR(A^n) == d`` (within the pool bound); expected whenever ``A``
    has a single eigenvalue and ``n >= C_d``."""
    a = _as_matrix(a)
    return orbit_rank(matrix_power(a, n), pool_bound).value == a.rows
