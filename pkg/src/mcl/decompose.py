"""Explicit commutator factorizations and their verification.

A certificate is an ordered list of commutator factors, each optionally
conjugated, plus an optional outer conjugator. Its value is

    z * (prod_i  c_i [a_i, b_i] c_i^-1) * z^-1

and ``verify`` recomputes that product with the wreath-product arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .abelian import Subgroup
from .errors import InputError
from .wreath import FinSupFunc, WreathElt, WreathGroup

MIXED = "mixed"
GENERAL = "general"


@dataclass(frozen=True)
class Factor:
    kind: str
    a: WreathElt
    b: WreathElt
    conjugator: Optional[WreathElt] = None


@dataclass(frozen=True)
class Certificate:
    ambient: WreathGroup
    factors: tuple = ()
    conjugator: Optional[WreathElt] = None
    raw_length: int = field(default=-1, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if self.raw_length < 0:
            object.__setattr__(self, "raw_length", len(self.factors))
        for f in self.factors:
            if f.kind not in (MIXED, GENERAL):
                raise InputError(f"unknown factor kind {f.kind!r}")

    @property
    def length(self) -> int:
        return len(self.factors)

    def value(self) -> WreathElt:
        return evaluate(self)


def _factor_value(g: WreathGroup, f: Factor) -> WreathElt:
    c = g.commutator(f.a, f.b)
    if f.conjugator is not None:
        c = g.conjugate(f.conjugator, c)
    return c


def evaluate(cert: Certificate) -> WreathElt:
    g = cert.ambient
    out = g.product(_factor_value(g, f) for f in cert.factors)
    if cert.conjugator is not None:
        out = g.conjugate(cert.conjugator, out)
    return out


def is_well_formed(cert: Certificate) -> bool:
    """Every mixed factor really has one side in ``N``."""
    g = cert.ambient
    return all(g.in_n(f.a) or g.in_n(f.b) for f in cert.factors if f.kind == MIXED)


def verify(cert: Certificate, target: WreathElt) -> bool:
    try:
        return is_well_formed(cert) and evaluate(cert) == target
    except InputError:
        return False


def normalized(g: WreathGroup, factors: Sequence[Factor], conjugator=None) -> Certificate:
    """Drop factors whose commutator is trivial; remember the raw count."""
    kept = [f for f in factors if not g.is_identity(g.commutator(f.a, f.b))]
    return Certificate(g, tuple(kept), conjugator, raw_length=len(factors))


def _coset_blocks(theta: Subgroup, points) -> list:
    """Group points into cosets of ``theta``; representative = least point."""
    G = theta.ambient
    blocks = []
    for p in sorted(points):
        for blk in blocks:
            if theta.contains(G._add(p, G._neg(blk[0]))):
                blk.append(p)
                break
        else:
            blocks.append([p])
    return blocks


def decompose_mixed(g: WreathGroup, x: FinSupFunc, theta: Subgroup, *,
                    cosets: bool = False) -> Certificate:
    """Write ``x`` as a product of ``rank(theta)`` mixed commutators.

    Uses a minimal generating set ``t_1..t_r`` of ``theta`` and finds
    ``w_i`` with ``x = sum_i (t_i.w_i - w_i)``: every ``delta_p - delta_e`` is
    telescoped along the path from ``e`` to ``p`` given by the coordinates of
    ``p`` in the ``t_i``. Factor ``i`` is ``[(0, t_i), (w_i, 0)]``.

    By default ``x`` must be supported in ``theta`` with zero total sum. With
    ``cosets=True`` it is enough that every coset of ``theta`` carries zero
    sum; each coset is handled by translating its telescoping sums.
    """
    Q = g.index
    if x.base != Q:
        raise InputError("function does not live on the index group")
    if theta.ambient != Q:
        raise InputError("theta must be a subgroup of the index group")
    if cosets:
        blocks = _coset_blocks(theta, x.support())
    else:
        for p in x.support():
            if not theta.contains(p):
                raise InputError(f"support point {p} lies outside theta")
        blocks = [[Q.zero] + sorted(p for p in x.support() if any(p))]
    for blk in blocks:
        if sum(x[p] for p in blk):
            raise InputError("x does not sum to zero over theta" +
                             (" on every coset" if cosets else ""))

    gens = theta.minimal_generators()
    w = [dict() for _ in gens]

    def bump(i, at, val):
        s = w[i].get(at, 0) + val
        if s:
            w[i][at] = s
        else:
            w[i].pop(at, None)

    add, neg = Q._add, Q._neg
    for blk in blocks:
        rep = blk[0]
        for p in blk:
            c = x[p]
            if not c or p == rep:
                continue
            y = theta.coordinates(add(p, neg(rep)))
            cur = rep
            for i, (t, yi) in enumerate(zip(gens, y)):
                if yi > 0:
                    for _ in range(yi):
                        bump(i, cur, c)
                        cur = add(cur, t)
                else:
                    tn = neg(t)
                    for _ in range(-yi):
                        cur = add(cur, tn)
                        bump(i, cur, -c)
            assert cur == p

    factors = [
        Factor(MIXED, g.of_top(g.lift(t)), g.in_base(FinSupFunc(Q, wi, _trusted=True)))
        for t, wi in zip(gens, w)
    ]
    return normalized(g, factors)


def _as_shift_difference(g: WreathGroup, f: Factor):
    """Return ``(top, w)`` with ``[f] = top.w - w`` for a mixed factor."""
    if f.kind != MIXED:
        raise InputError("pairing needs mixed factors only")
    if g.in_n(f.b):
        top, w = f.a.top, f.b.fun
    elif g.in_n(f.a):
        # [u, (v, l)] = [(v, l), u]^-1 = l.(-u) - (-u)
        top, w = f.b.top, -f.a.fun
    else:
        raise InputError("mixed factor with neither side in N")
    if f.conjugator is not None:
        w = g.shift(f.conjugator.top, w)
    return top, w


def pair_into_commutators(cert: Certificate) -> Certificate:
    """Fuse consecutive mixed factors into single genuine commutators.

    ``(g1.w1 - w1) + (g2.w2 - w2) = [(-w2, g1), (w1, g2)]`` whenever the two
    tops commute, which is automatic for an abelian top group.
    """
    g = cert.ambient
    terms = [_as_shift_difference(g, f) for f in cert.factors]
    out = []
    for i in range(0, len(terms) - 1, 2):
        (g1, w1), (g2, w2) = terms[i], terms[i + 1]
        G = g.gamma
        if G._add(g1, g2) != G._add(g2, g1):
            raise InputError("tops do not commute")
        out.append(Factor(GENERAL, WreathElt(-w2, g1), WreathElt(w1, g2)))
    if len(terms) % 2:
        t, w = terms[-1]
        out.append(Factor(MIXED, g.of_top(t), g.in_base(w)))
    return Certificate(g, tuple(out), cert.conjugator, raw_length=len(out))


def split_rewrite(g: WreathGroup, fs: Sequence[WreathElt], gs: Sequence[WreathElt],
                  as_: Sequence[WreathElt], bs: Sequence[WreathElt]) -> Certificate:
    """At most ``2k`` mixed factors for ``prod[f_i,g_i] (prod[a_i,b_i])^-1``.

    Needs equal tops ``f_i ~ a_i`` and ``g_i ~ b_i``. With ``v1 = a^-1 f`` and
    ``v2 = b^-1 g`` in ``N``,

        [f, g][a, b]^-1 = (ab) [b^-1, v1] [v2, a^-1] (ab)^-1,

    and block ``j`` of the product is this identity conjugated by
    ``xi_j = prod_{i<j} [a_i, b_i]``.
    """
    k = len(fs)
    if not (len(gs) == len(as_) == len(bs) == k):
        raise InputError("split_rewrite needs four lists of equal length")
    factors = []
    xi = g.identity()
    for f, h, a, b in zip(fs, gs, as_, bs):
        for e in (f, h, a, b):
            g.check(e)
        if f.top != a.top or h.top != b.top:
            raise InputError("tops of f_i/a_i or g_i/b_i disagree")
        ainv, binv = g.invert(a), g.invert(b)
        v1 = g.multiply(ainv, f)
        v2 = g.multiply(binv, h)
        z = g.multiply(xi, g.multiply(a, b))
        factors.append(Factor(MIXED, binv, v1, z))
        factors.append(Factor(MIXED, v2, ainv, z))
        xi = g.multiply(xi, g.commutator(a, b))
    return normalized(g, factors)
