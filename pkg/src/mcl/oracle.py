"""Brute-force ground truth over finite index groups.

Two independent routes:

* Lattice sweep. A product of ``l`` mixed commutators in ``N`` is a sum of
  ``l`` terms ``g_i.w_i - w_i``; each ``Im(g - 1)`` is a subgroup of ``N``, so
  repeating a ``g`` never helps and ``cl_{G,N}(x)`` is the least ``|S|``,
  ``S`` a set of non-identity elements, with ``x`` in ``sum_{g in S} Im(g-1)``.
  A genuine commutator ``[(v,g),(w,l)]`` with commuting tops contributes
  ``Im(g-1) + Im(l-1)``, which gives ``cl_G`` by sweeping pairs.
* Word lengths in the finite group ``Z/m wr Q`` by breadth-first search over
  the set of all mixed (or all) commutators, computed from the group law
  of that finite group, written here independently of ``mcl.wreath``.
"""
from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .abelian import FgAbelianGroup
from .errors import InputError, ResourceLimitError
from .linalg import IntMatrix, hermite_normal_form, lattice_coords
from .wreath import FinSupFunc

INFINITE = math.inf
ORACLE_MAX_ORDER = 12
BFS_MAX_ORDER = 200_000


class _FiniteIndex:
    """Enumeration of a finite abelian group with an addition table."""

    def __init__(self, q: FgAbelianGroup):
        if not q.is_finite:
            raise InputError(f"oracle needs a finite group, got {q}")
        self.group = q
        self.elements = list(q.enumerate())
        self.pos = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        self.add = [[self.pos[q._add(a, b)] for b in self.elements] for a in self.elements]
        self.neg = [self.pos[q._neg(a)] for a in self.elements]
        self.zero = self.pos[q.zero]
        self.n = n

    def vector(self, x: FinSupFunc) -> list:
        if x.base != self.group:
            raise InputError("function lives on a different group")
        v = [0] * self.n
        for at, val in x.items():
            v[self.pos[at]] = val
        return v


@lru_cache(maxsize=None)
def _index(q: FgAbelianGroup) -> _FiniteIndex:
    return _FiniteIndex(q)


def _shift_difference_columns(ix: _FiniteIndex, g: int) -> list:
    """Spanning set of ``Im(g - 1)``: ``g.delta_p - delta_p`` for every ``p``."""
    cols = []
    for p in range(ix.n):
        c = [0] * ix.n
        c[ix.add[g][p]] += 1
        c[p] -= 1
        cols.append(c)
    return cols


@lru_cache(maxsize=None)
def _subset_lattices(q: FgAbelianGroup, modulus: Optional[int]) -> tuple:
    """``(|S|, HNF of sum Im(g-1))`` for all subsets, in sweep order.

    Sweep order is by size, then lexicographic; a lattice already seen at
    a smaller or equal position is skipped since it cannot lower the minimum.
    """
    ix = _index(q)
    n = ix.n
    nonid = [i for i in range(n) if i != ix.zero]
    extra = [[modulus * int(i == j) for i in range(n)] for j in range(n)] if modulus else []
    gen_cols = {g: _shift_difference_columns(ix, g) for g in nonid}
    seen = set()
    out = []
    for size in range(len(nonid) + 1):
        for s in itertools.combinations(nonid, size):
            cols = [c for g in s for c in gen_cols[g]] + extra
            lat = hermite_normal_form(IntMatrix.from_columns(cols, n))
            if lat in seen:
                continue
            seen.add(lat)
            out.append((size, s, lat))
    return tuple(out)


def _check_order(q: FgAbelianGroup):
    if not q.is_finite:
        raise InputError(f"oracle needs a finite group, got {q}")
    if q.order > ORACLE_MAX_ORDER:
        raise ResourceLimitError(f"oracle is limited to groups of order <= {ORACLE_MAX_ORDER}")


def _member(lat: IntMatrix, v: list, modulus: Optional[int]) -> bool:
    if modulus:
        v = [c % modulus for c in v]
    return lattice_coords(lat, v) is not None


def oracle_cl_gn(q: FgAbelianGroup, x: FinSupFunc, modulus: Optional[int] = None):
    """``cl_{G,N}(x)`` by the subset sweep; ``modulus`` switches base to ``Z/m``."""
    _check_order(q)
    v = _index(q).vector(x)
    for size, _, lat in _subset_lattices(q, modulus):
        if _member(lat, v, modulus):
            return size
    return INFINITE


@lru_cache(maxsize=None)
def _pair_levels(q: FgAbelianGroup, modulus: Optional[int]) -> tuple:
    """Distinct lattices reachable as sums of ``l`` pair-images, per level ``l``."""
    ix = _index(q)
    n = ix.n
    extra = [[modulus * int(i == j) for i in range(n)] for j in range(n)] if modulus else []
    pair_cols = []
    seen_pairs = set()
    for g, l in itertools.product(range(n), repeat=2):
        cols = _shift_difference_columns(ix, g) + _shift_difference_columns(ix, l)
        lat = hermite_normal_form(IntMatrix.from_columns(cols, n))
        if lat not in seen_pairs:
            seen_pairs.add(lat)
            pair_cols.append(lat.columns())
    start = hermite_normal_form(IntMatrix.from_columns(extra, n))
    levels = [[start]]
    seen = {start}
    while True:
        nxt = []
        for lat in levels[-1]:
            for pc in pair_cols:
                new = hermite_normal_form(IntMatrix.from_columns(lat.columns() + pc, n))
                if new not in seen:
                    seen.add(new)
                    nxt.append(new)
        if not nxt:
            break
        levels.append(levels[-1] + nxt)
    return tuple(tuple(lv) for lv in levels)


def oracle_cl_g(q: FgAbelianGroup, x: FinSupFunc, modulus: Optional[int] = None):
    """``cl_G(x)``: least ``l`` with ``x`` in a sum of ``l`` pair-images."""
    _check_order(q)
    v = _index(q).vector(x)
    for l, lats in enumerate(_pair_levels(q, modulus)):
        if any(_member(lat, v, modulus) for lat in lats):
            return l
    return INFINITE


# -- breadth-first search on Z/m wr Q ---------------------------------------

@dataclass
class BfsTable:
    modulus: int
    group: FgAbelianGroup
    elements: list        # index-group enumeration order
    values: np.ndarray    # one row of function values per element of [G, N]
    cl_gn: np.ndarray
    cl_g: np.ndarray

    def lookup(self, values) -> tuple:
        key = tuple(int(c) % self.modulus for c in values)
        i = self._rows()[key]
        return int(self.cl_gn[i]), int(self.cl_g[i])

    def _rows(self):
        if not hasattr(self, "_row_index"):
            self._row_index = {tuple(int(c) for c in r): i for i, r in enumerate(self.values)}
        return self._row_index

    def rows(self):
        for r, a, b in zip(self.values, self.cl_gn, self.cl_g):
            yield tuple(int(c) for c in r), int(a), int(b)

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["element", "cl_g", "cl_gn"])
            for r, a, b in self.rows():
                w.writerow([element_text(r), b, a])


def element_text(values) -> str:
    """Canonical text of an element of ``N``: its values in enumeration order."""
    return "[" + " ".join(str(v) for v in values) + "]"


class FiniteWreath:
    """``Z/m wr Q`` with elements ``(values, top)``, values indexed by ``Q``."""

    def __init__(self, m: int, q: FgAbelianGroup):
        if m < 2:
            raise InputError("base modulus must be >= 2")
        self.m = m
        self.ix = _index(q)
        size = m ** self.ix.n * self.ix.n
        if size > BFS_MAX_ORDER:
            raise ResourceLimitError(f"|Z/{m} wr {q}| = {size} exceeds {BFS_MAX_ORDER}")
        self.order = size

    def act(self, g: int, v: tuple) -> tuple:
        # (g.v)(p) = v(p - g)
        ix = self.ix
        return tuple(v[ix.add[ix.neg[g]][p]] for p in range(ix.n))

    def mul(self, a, b):
        (v, g), (w, h) = a, b
        gw = self.act(g, w)
        return tuple((x + y) % self.m for x, y in zip(v, gw)), self.ix.add[g][h]

    def inv(self, a):
        v, g = a
        gi = self.ix.neg[g]
        return tuple((-c) % self.m for c in self.act(gi, v)), gi

    def comm(self, a, b):
        return self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))

    def base_elements(self):
        return itertools.product(range(self.m), repeat=self.ix.n)

    def unit_vectors(self):
        n = self.ix.n
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]

    def zero(self):
        return (0,) * self.ix.n

    def span(self, gens) -> set:
        """Subgroup of ``N`` generated by ``gens``."""
        out = {self.zero()}
        frontier = list(out)
        while frontier:
            nxt = []
            for a in frontier:
                for gvec in gens:
                    s = tuple((x + y) % self.m for x, y in zip(a, gvec))
                    if s not in out:
                        out.add(s)
                        nxt.append(s)
            frontier = nxt
        return out

    def mixed_commutators(self) -> set:
        """All ``[g, x]`` with ``g`` in ``G`` and ``x`` in ``N``."""
        out = set()
        z = self.zero()
        for t in range(self.ix.n):
            g = (z, t)
            for w in self.base_elements():
                c, top = self.comm(g, (w, self.ix.zero))
                out.add(c)
        return out

    def all_commutators(self) -> set:
        """All ``[a, b]``; for fixed tops the values form the subgroup spanned by
        the commutators with unit-vector function parts (checked against full
        enumeration in the test suite)."""
        out = set()
        z = self.zero()
        units = self.unit_vectors()
        for s, t in itertools.product(range(self.ix.n), repeat=2):
            gens = []
            for u in units:
                gens.append(self.comm((u, s), (z, t))[0])
                gens.append(self.comm((z, s), (u, t))[0])
            out |= self.span(gens)
        return out

    def all_commutators_brute(self) -> set:
        elts = [(v, t) for v in self.base_elements() for t in range(self.ix.n)]
        return {self.comm(a, b)[0] for a in elts for b in elts}

    def mixed_commutators_brute(self) -> set:
        elts = [(v, t) for v in self.base_elements() for t in range(self.ix.n)]
        ns = [(v, self.ix.zero) for v in self.base_elements()]
        return {self.comm(a, x)[0] for a in elts for x in ns}


def _bfs(m: int, n: int, gens: set) -> dict:
    """Word length in ``(Z/m)^n`` w.r.t. ``gens``, from zero; vectorized by level."""
    powers = m ** np.arange(n, dtype=np.int64)
    total = m ** n
    digits = (np.arange(total, dtype=np.int64)[:, None] // powers) % m
    gen_codes = np.array(sorted({int(np.dot(g, powers)) for g in gens}), dtype=np.int64)
    gen_digits = digits[gen_codes]
    dist = np.full(total, -1, dtype=np.int64)
    dist[0] = 0
    frontier = np.array([0], dtype=np.int64)
    level = 0
    chunk = max(1, 4_000_000 // max(1, len(gen_codes) * n))
    while frontier.size:
        level += 1
        found = []
        for i in range(0, frontier.size, chunk):
            f = digits[frontier[i:i + chunk]]
            s = (f[:, None, :] + gen_digits[None, :, :]) % m
            codes = np.unique(s.reshape(-1, n) @ powers)
            found.append(codes)
        codes = np.unique(np.concatenate(found))
        codes = codes[dist[codes] < 0]
        dist[codes] = level
        frontier = codes
    return dist, digits


def bfs_wordlength(m: int, q: FgAbelianGroup) -> BfsTable:
    """Exact ``cl_{G,N}`` and ``cl_G`` on every element of ``[G, N]`` in ``Z/m wr Q``."""
    w = FiniteWreath(m, q)
    n = w.ix.n
    d_mixed, digits = _bfs(m, n, w.mixed_commutators())
    d_all, _ = _bfs(m, n, w.all_commutators())
    reached = np.nonzero(d_mixed >= 0)[0]
    if not np.array_equal(reached, np.nonzero(d_all >= 0)[0]):
        raise AssertionError("[G,N] and [G,G] differ for an abelian top group")
    return BfsTable(m, q, w.ix.elements, digits[reached], d_mixed[reached], d_all[reached])
