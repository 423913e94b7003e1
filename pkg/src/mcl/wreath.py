"""Arithmetic in ``Z wr Gamma`` and in permutational wreath products.

An element is a pair ``(fun, top)`` with ``fun`` a finitely supported
function on the index group and ``top`` in ``Gamma``. In the plain wreath
product the index group is ``Gamma`` itself; in the permutational one it is a
quotient ``Q`` of ``Gamma`` and ``top`` acts through the projection. The plain
case is just the identity projection, so there is a single code path.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .abelian import FgAbelianGroup, GroupVec, Projection, Subgroup, quotient
from .errors import InputError

__all__ = [
    "FinSupFunc",
    "WreathElt",
    "WreathGroup",
    "delta",
    "support",
]


class FinSupFunc:
    """Finitely supported ``Z``-valued function on an abelian group.

    Zero values are never stored, so the key set is exactly the support.
    Instances are treated as immutable.
    """

    __slots__ = ("base", "_d", "_hash")

    def __init__(self, base: FgAbelianGroup, entries: Optional[Mapping] = None, *, _trusted=False):
        self.base = base
        self._hash = None
        if _trusted:
            self._d = entries
            return
        d = {}
        for at, val in (entries or {}).items():
            key = base.elem(at)
            v = d.get(key, 0) + int(val)
            if v:
                d[key] = v
            else:
                d.pop(key, None)
        self._d = d

    @classmethod
    def zero(cls, base: FgAbelianGroup) -> "FinSupFunc":
        return cls(base, {}, _trusted=True)

    def __getitem__(self, at) -> int:
        return self._d.get(tuple(at), 0)

    def items(self):
        return sorted(self._d.items())

    def support(self) -> frozenset:
        return frozenset(self._d)

    def total(self) -> int:
        return sum(self._d.values())

    def __len__(self):
        return len(self._d)

    def __bool__(self):
        return bool(self._d)

    def _same_base(self, other):
        if not isinstance(other, FinSupFunc) or other.base != self.base:
            raise InputError("functions live on different index groups")

    def __add__(self, other: "FinSupFunc") -> "FinSupFunc":
        self._same_base(other)
        d = dict(self._d)
        for k, v in other._d.items():
            s = d.get(k, 0) + v
            if s:
                d[k] = s
            else:
                del d[k]
        return FinSupFunc(self.base, d, _trusted=True)

    def __neg__(self) -> "FinSupFunc":
        return FinSupFunc(self.base, {k: -v for k, v in self._d.items()}, _trusted=True)

    def __sub__(self, other: "FinSupFunc") -> "FinSupFunc":
        return self + (-other)

    def __rmul__(self, k: int) -> "FinSupFunc":
        if not k:
            return FinSupFunc.zero(self.base)
        return FinSupFunc(self.base, {a: k * v for a, v in self._d.items()}, _trusted=True)

    def translate(self, q: GroupVec) -> "FinSupFunc":
        """``(q.u)(p) = u(p - q)``: move the support by ``q``."""
        if not self.base.contains(q):
            raise InputError(f"{q!r} is not an element of {self.base}")
        if not any(q):
            return self
        add = self.base._add
        return FinSupFunc(self.base, {add(a, q): v for a, v in self._d.items()}, _trusted=True)

    def __eq__(self, other):
        if not isinstance(other, FinSupFunc):
            return NotImplemented
        return self.base == other.base and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.base, frozenset(self._d.items())))
        return self._hash

    def __repr__(self):
        if not self._d:
            return "0"
        terms = []
        for at, v in self.items():
            label = at[0] if len(at) == 1 else at
            terms.append(f"{v:+d}*d{label}")
        return " ".join(terms)


def delta(base: FgAbelianGroup, at, value: int = 1) -> FinSupFunc:
    """``value`` times the Kronecker delta at ``at`` (an int is allowed for rank one)."""
    at = (at,) if isinstance(at, int) else tuple(at)
    return FinSupFunc(base, {at: value})


def support(x: FinSupFunc) -> frozenset:
    return x.support()


@dataclass(frozen=True)
class WreathElt:
    fun: FinSupFunc
    top: GroupVec

    def __repr__(self):
        t = self.top[0] if len(self.top) == 1 else self.top
        return f"({self.fun!r}, {t})"


@dataclass(frozen=True)
class WreathGroup:
    """``Z wr Gamma``, or ``Z wr_Q Gamma`` when a projection onto ``Q`` is given."""

    gamma: FgAbelianGroup
    projection: Optional[Projection] = None

    def __post_init__(self):
        if self.projection is not None and self.projection.source != self.gamma:
            raise InputError("projection must start at gamma")

    @classmethod
    def permutational(cls, gamma: FgAbelianGroup, kernel: Subgroup) -> "WreathGroup":
        """``Z wr_Q Gamma`` with ``Q = gamma / kernel``."""
        _, proj = quotient(gamma, kernel)
        return cls(gamma, proj)

    @property
    def index(self) -> FgAbelianGroup:
        return self.gamma if self.projection is None else self.projection.target

    def sigma(self, g: GroupVec) -> GroupVec:
        if self.projection is None:
            return g
        return self.projection(g)

    def lift(self, q: GroupVec) -> GroupVec:
        """A preimage in ``gamma`` of an index-group element."""
        if self.projection is None:
            return q
        return self.projection.lift(q)

    # -- construction ---------------------------------------------------
    def elem(self, fun=None, top=None) -> WreathElt:
        if fun is None:
            fun = FinSupFunc.zero(self.index)
        elif not isinstance(fun, FinSupFunc):
            fun = FinSupFunc(self.index, dict(fun))
        top = self.gamma.zero if top is None else self.gamma.elem(top)
        e = WreathElt(fun, top)
        self.check(e)
        return e

    def identity(self) -> WreathElt:
        return WreathElt(FinSupFunc.zero(self.index), self.gamma.zero)

    def in_base(self, fun: FinSupFunc) -> WreathElt:
        """The element ``(fun, e)`` of ``N``."""
        return self.elem(fun)

    def of_top(self, top) -> WreathElt:
        return self.elem(None, top)

    def check(self, a: WreathElt):
        if not isinstance(a, WreathElt):
            raise InputError(f"not a wreath element: {a!r}")
        if a.fun.base != self.index or not self.gamma.contains(a.top):
            raise InputError(f"{a!r} does not belong to {self}")

    def is_identity(self, a: WreathElt) -> bool:
        return not a.fun and not any(a.top)

    def in_n(self, a: WreathElt) -> bool:
        return not any(a.top)

    # -- group law ------------------------------------------------------
    def shift(self, g: GroupVec, u: FinSupFunc) -> FinSupFunc:
        """Left action of ``g`` in ``gamma`` on a function (through the quotient)."""
        if u.base != self.index:
            raise InputError("function does not live on the index group")
        if not self.gamma.contains(g):
            raise InputError(f"{g!r} is not an element of {self.gamma}")
        return u.translate(self.sigma(g))

    def multiply(self, a: WreathElt, b: WreathElt) -> WreathElt:
        """``(v, g)(v', g') = (v + g.v', g g')``."""
        self.check(a)
        self.check(b)
        return WreathElt(a.fun + self.shift(a.top, b.fun), self.gamma._add(a.top, b.top))

    def invert(self, a: WreathElt) -> WreathElt:
        """``(v, g)^-1 = (-g^-1.v, g^-1)``."""
        self.check(a)
        t = self.gamma._neg(a.top)
        return WreathElt(-self.shift(t, a.fun), t)

    def product(self, elts: Iterable[WreathElt]) -> WreathElt:
        out = self.identity()
        for e in elts:
            out = self.multiply(out, e)
        return out

    def power(self, a: WreathElt, k: int) -> WreathElt:
        base = a if k >= 0 else self.invert(a)
        out = self.identity()
        for _ in range(abs(k)):
            out = self.multiply(out, base)
        return out

    def conjugate(self, z: WreathElt, a: WreathElt) -> WreathElt:
        """``z a z^-1``."""
        return self.multiply(self.multiply(z, a), self.invert(z))

    def commutator(self, a: WreathElt, b: WreathElt) -> WreathElt:
        """``[a, b] = a b a^-1 b^-1``, computed by multiplication."""
        return self.multiply(self.multiply(a, b), self.multiply(self.invert(a), self.invert(b)))

    def commutator_formula(self, a: WreathElt, b: WreathElt) -> WreathElt:
        """Closed form of ``[(v, g), (w, l)]``.

        ``(g.w - [g,l].w + v - (g l g^-1).v, [g,l])``; with an abelian top
        group ``[g,l]`` is trivial, which the code does not assume.
        """
        self.check(a)
        self.check(b)
        G = self.gamma
        g, l = a.top, b.top
        gl = G._add(g, l)
        ginv, linv = G._neg(g), G._neg(l)
        comm = G._add(G._add(gl, ginv), linv)
        conj = G._add(gl, ginv)
        v, w = a.fun, b.fun
        fun = self.shift(g, w) - self.shift(comm, w) + v - self.shift(conj, v)
        return WreathElt(fun, comm)
