"""Rewriting a commutator as a mixed commutator when ``Gamma`` is cyclic.

Uses ``[g, h] = [g h^k, h] = [g, h g^k]``: a Euclidean algorithm on the
images of ``g`` and ``h`` in ``Gamma ~ Z`` or ``Z/k`` drives one of them into
the kernel ``N`` without changing the commutator.
"""
from __future__ import annotations

from typing import Iterator

from .abelian import FgAbelianGroup, quotient
from .errors import InputError
from .wreath import WreathElt, WreathGroup


def commcomp_right(g: WreathGroup, a: WreathElt, b: WreathElt, k: int) -> WreathElt:
    """``b a^k``; satisfies ``[a, b a^k] = [a, b]``."""
    return g.multiply(b, g.power(a, k))


def commcomp_left(g: WreathGroup, a: WreathElt, b: WreathElt, k: int) -> WreathElt:
    """``a b^k``; satisfies ``[a b^k, b] = [a, b]``."""
    return g.multiply(a, g.power(b, k))


class _CyclicCoordinate:
    """Isomorphism ``Gamma -> Z`` (``order == 0``) or ``Gamma -> Z/order``."""

    def __init__(self, gamma: FgAbelianGroup):
        target, proj = quotient(gamma, gamma.subgroup())
        if target.ngens > 1:
            raise InputError(f"{gamma} is not cyclic")
        self.proj = proj
        if target.ngens == 0:
            self.order = 1
        elif target.free_rank:
            self.order = 0
        else:
            self.order = target.torsion[0]

    def __call__(self, t) -> int:
        if self.order == 1:
            return 0
        return self.proj(t)[0]


def _sym_round(m: int, n: int) -> int:
    """Quotient ``q`` with ``|m - q n| <= |n| / 2``."""
    q, r = divmod(m, n)
    if 2 * abs(r) > abs(n):
        q += 1
    return q


def reduction_steps(g: WreathGroup, a: WreathElt, b: WreathElt) -> Iterator[tuple]:
    """Yield the successive pairs of the Euclidean reduction, starting at ``(a, b)``."""
    f = _CyclicCoordinate(g.gamma)
    x, y = a, b
    yield x, y
    if f.order == 0:
        while True:
            m, n = f(x.top), f(y.top)
            if m == 0 or n == 0:
                return
            if abs(m) >= abs(n):
                x = commcomp_left(g, x, y, -_sym_round(m, n))
            else:
                y = commcomp_right(g, x, y, -_sym_round(n, m))
            yield x, y
    else:
        while True:
            m, n = f(x.top), f(y.top)
            if m == 0 or n == 0:
                return
            if m >= n:
                x = commcomp_left(g, x, y, -(m // n))
            else:
                y = commcomp_right(g, x, y, -(n // m))
            yield x, y


def progress_measure(g: WreathGroup, pair) -> int:
    """``min(|f(top x)|, |f(top y)|)``, strictly decreasing along the reduction."""
    f = _CyclicCoordinate(g.gamma)
    x, y = pair
    if f.order == 0:
        return min(abs(f(x.top)), abs(f(y.top)))
    return min(f(x.top), f(y.top))


def reduce_to_mixed(g: WreathGroup, a: WreathElt, b: WreathElt) -> tuple:
    """``(x, y)`` with ``[x, y] = [a, b]`` and ``x`` or ``y`` in ``N``."""
    g.check(a)
    g.check(b)
    last = None
    for last in reduction_steps(g, a, b):
        pass
    return last
