"""Finitely generated abelian groups ``Z^r x Z/d_1 x ... x Z/d_k``.

Elements are plain tuples of integers (free coordinates first, then torsion
coordinates reduced into ``[0, d_i)``), which keeps them hashable and cheap to
use as keys of finitely supported functions.

Subgroups are handled through their preimage lattice in ``Z^(r+k)``: the
span of the generators together with the torsion relations ``d_i e_i``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import InputError
from .linalg import (
    IntMatrix,
    hermite_normal_form,
    lattice_coords,
    smith_normal_form,
    unimodular_inverse,
)

GroupVec = tuple


_SUPERSCRIPTS = str.maketrans({"\u00b2": "^2", "\u00b3": "^3", "\u2074": "^4", "\u2075": "^5",
                               "\u2076": "^6", "\u2077": "^7", "\u2078": "^8", "\u2079": "^9",
                               "\u00b9": "^1"})


@dataclass(frozen=True)
class FgAbelianGroup:
    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise InputError("free rank must be nonnegative")
        if any(d < 2 for d in self.torsion):
            raise InputError(f"torsion moduli must be >= 2, got {list(self.torsion)}")

    @classmethod
    def parse(cls, spec: str) -> "FgAbelianGroup":
        """Parse ``"Z^2 x Z/4"`` style strings (whitespace-insensitive).

        ``"1"`` or ``"trivial"`` denote the trivial group.
        """
        s = re.sub(r"\s+", "", spec).replace("\u00d7", "x").replace("*", "x")
        s = s.translate(_SUPERSCRIPTS)
        s = re.sub(r"\^?\{(\d+)\}", r"^\1", s)
        if s in ("1", "0", "trivial", "{e}"):
            return cls(0, ())
        if not s:
            raise InputError("empty group spec")
        free = 0
        tors = []
        for factor in s.split("x"):
            m = re.fullmatch(r"Z(?:\^(\d+))?", factor)
            if m:
                free += int(m.group(1)) if m.group(1) is not None else 1
                continue
            m = re.fullmatch(r"\(?Z/(\d+)(?:Z)?\)?(?:\^(\d+))?", factor)
            if m and factor.count("(") == factor.count(")"):
                d = int(m.group(1))
                k = int(m.group(2)) if m.group(2) is not None else 1
                if d < 1:
                    raise InputError(f"bad modulus in group factor {factor!r}")
                if d > 1:
                    tors.extend([d] * k)
                continue
            raise InputError(f"cannot parse group factor {factor!r} in {spec!r}")
        return cls(free, tuple(tors))

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "1"

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise InputError(f"{self} is infinite")
        n = 1
        for d in self.torsion:
            n *= d
        return n

    @property
    def zero(self) -> GroupVec:
        return (0,) * self.ngens

    def elem(self, coords: Sequence[int]) -> GroupVec:
        """Reduce an integer vector to a canonical element."""
        if len(coords) != self.ngens:
            raise InputError(f"element {list(coords)} has wrong length for {self}")
        r = self.free_rank
        return tuple(int(c) for c in coords[:r]) + tuple(
            int(c) % d for c, d in zip(coords[r:], self.torsion)
        )

    def contains(self, g) -> bool:
        if not isinstance(g, tuple) or len(g) != self.ngens:
            return False
        return all(0 <= c < d for c, d in zip(g[self.free_rank:], self.torsion))

    def _check(self, g):
        if not self.contains(g):
            raise InputError(f"{g!r} is not a reduced element of {self}")

    def add(self, g: GroupVec, h: GroupVec) -> GroupVec:
        self._check(g)
        self._check(h)
        return self._add(g, h)

    def _add(self, g, h):
        r = self.free_rank
        return tuple(a + b for a, b in zip(g[:r], h[:r])) + tuple(
            (a + b) % d for a, b, d in zip(g[r:], h[r:], self.torsion)
        )

    def neg(self, g: GroupVec) -> GroupVec:
        self._check(g)
        return self._neg(g)

    def _neg(self, g):
        r = self.free_rank
        return tuple(-a for a in g[:r]) + tuple((-a) % d for a, d in zip(g[r:], self.torsion))

    def sub(self, g: GroupVec, h: GroupVec) -> GroupVec:
        return self.add(g, self.neg(h))

    def scale(self, g: GroupVec, k: int) -> GroupVec:
        self._check(g)
        return self.elem([k * c for c in g])

    def is_zero(self, g: GroupVec) -> bool:
        self._check(g)
        return not any(g)

    def basis(self) -> list:
        n = self.ngens
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]

    def relations(self) -> list:
        """Relation vectors ``d_i e_i`` of the torsion part, in ``Z^ngens``."""
        n = self.ngens
        out = []
        for i, d in enumerate(self.torsion):
            v = [0] * n
            v[self.free_rank + i] = d
            out.append(tuple(v))
        return out

    def enumerate(self) -> Iterator[GroupVec]:
        if not self.is_finite:
            raise InputError(f"cannot enumerate the infinite group {self}")
        return itertools.product(*(range(d) for d in self.torsion))

    def subgroup(self, generators: Iterable[Sequence[int]] = ()) -> "Subgroup":
        return Subgroup(self, tuple(self.elem(g) for g in generators))

    def whole(self) -> "Subgroup":
        return self.subgroup(self.basis())


def add(g: GroupVec, h: GroupVec, group: FgAbelianGroup) -> GroupVec:
    return group.add(g, h)


def neg(g: GroupVec, group: FgAbelianGroup) -> GroupVec:
    return group.neg(g)


def is_zero(g: GroupVec, group: FgAbelianGroup) -> bool:
    return group.is_zero(g)


@lru_cache(maxsize=1 << 16)
def _preimage_lattice(group: FgAbelianGroup, gens: frozenset) -> IntMatrix:
    cols = list(gens) + group.relations()
    return hermite_normal_form(IntMatrix.from_columns(cols, group.ngens))


@dataclass(frozen=True)
class _Structure:
    invariants: tuple  # one per basis vector; 0 = free, >1 = torsion
    basis: tuple       # minimal generating set, one element per invariant
    to_coords: IntMatrix  # rows of U for the kept indices


@dataclass(frozen=True, eq=False)
class Subgroup:
    """Subgroup of ``ambient`` generated by ``generators``.

    Equality is equality of subgroups, not of generating lists.
    """

    ambient: FgAbelianGroup
    generators: tuple = field(default=())

    def __post_init__(self):
        for g in self.generators:
            if not self.ambient.contains(g):
                raise InputError(f"generator {g!r} does not belong to {self.ambient}")

    @cached_property
    def lattice(self) -> IntMatrix:
        return _preimage_lattice(self.ambient, frozenset(self.generators))

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ambient == other.ambient and self.lattice == other.lattice

    def __hash__(self):
        return hash((self.ambient, self.lattice))

    def __le__(self, other: "Subgroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def contains(self, g: Sequence[int]) -> bool:
        return lattice_coords(self.lattice, list(g)) is not None

    @cached_property
    def _structure(self) -> _Structure:
        b = self.lattice
        nb = b.cols
        rel_coords = [lattice_coords(b, list(r)) for r in self.ambient.relations()]
        c = IntMatrix.from_columns(rel_coords, nb)
        snf = smith_normal_form(c)
        diag = snf.invariants
        inv = [diag[i] if i < len(diag) else 0 for i in range(nb)]
        u_inv = unimodular_inverse(snf.u)
        keep = [i for i in range(nb) if inv[i] != 1]
        # torsion generators first, then free ones, as produced by the SNF order
        keep.sort(key=lambda i: (inv[i] == 0, i))
        basis = tuple(
            self.ambient.elem(b.apply(u_inv.column(i))) for i in keep
        )
        rows = snf.u.to_rows()
        to_coords = IntMatrix.from_rows([rows[i] for i in keep], nb)
        return _Structure(tuple(inv[i] for i in keep), basis, to_coords)

    @property
    def rank(self) -> int:
        """Minimal number of generators."""
        return len(self._structure.basis)

    @property
    def invariants(self) -> tuple:
        """Cyclic factor orders of the subgroup (0 for an infinite factor)."""
        return self._structure.invariants

    def minimal_generators(self) -> list:
        """Canonical generating set of size ``rank`` (SNF-derived)."""
        return list(self._structure.basis)

    def coordinates(self, g: Sequence[int]) -> list:
        """Exponents ``y`` with ``g = sum y_i * minimal_generators()[i]``."""
        c = lattice_coords(self.lattice, list(g))
        if c is None:
            raise InputError(f"{tuple(g)} is not in the subgroup")
        st = self._structure
        y = st.to_coords.apply(c)
        return [yi % n if n > 1 else yi for yi, n in zip(y, st.invariants)]

    def is_finite(self) -> bool:
        return all(n > 0 for n in self.invariants)

    def __repr__(self):
        return f"Subgroup({self.ambient}, {list(self.generators)})"


def subgroup_rank(s: Subgroup) -> int:
    return s.rank


def intrk_abelian(s: Subgroup) -> int:
    """Intermediate rank of a subgroup of an abelian group.

    In an abelian group every intermediate subgroup has at least as many
    generators as the subgroup itself, so this is just the rank.
    """
    return s.rank


def sperk_genrk(group: FgAbelianGroup) -> int:
    """Special rank = general rank = rank, for a f.g. abelian group."""
    return group.whole().rank


@dataclass(frozen=True)
class Projection:
    """Surjective homomorphism ``source -> target`` given by an integer matrix.

    ``section`` maps target coordinates back to a (non-canonical) preimage.
    """

    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: IntMatrix
    section: IntMatrix

    @classmethod
    def identity(cls, group: FgAbelianGroup) -> "Projection":
        i = IntMatrix.identity(group.ngens)
        return cls(group, group, i, i)

    def __call__(self, g: GroupVec) -> GroupVec:
        return self.target.elem(self.matrix.apply(g))

    def lift(self, q: GroupVec) -> GroupVec:
        return self.source.elem(self.section.apply(q))

    @property
    def is_identity(self) -> bool:
        return self.source == self.target and self.matrix == IntMatrix.identity(self.source.ngens)


def quotient(group: FgAbelianGroup, kernel: Subgroup) -> tuple:
    """``group / kernel`` in invariant-factor form, with its projection."""
    if kernel.ambient != group:
        raise InputError("kernel is not a subgroup of this group")
    n = group.ngens
    rel = IntMatrix.from_columns(list(kernel.generators) + group.relations(), n)
    snf = smith_normal_form(rel)
    diag = snf.invariants
    inv = [diag[i] if i < len(diag) else 0 for i in range(n)]
    free = [i for i in range(n) if inv[i] == 0]
    tors = [i for i in range(n) if inv[i] > 1]
    order = free + tors
    target = FgAbelianGroup(len(free), tuple(inv[i] for i in tors))
    rows = snf.u.to_rows()
    matrix = IntMatrix.from_rows([rows[i] for i in order], n)
    u_inv = unimodular_inverse(snf.u)
    section = IntMatrix.from_columns([u_inv.column(i) for i in order], n)
    return target, Projection(group, target, matrix, section)


def enumerate_group(group: FgAbelianGroup) -> Iterator[GroupVec]:
    return group.enumerate()
