"""Mixed commutator length ``cl_{G,N}`` and commutator length ``cl_G``.

``G`` is ``Z wr Gamma`` (or its permutational variant) and ``N`` the base
``(+)_Q Z``. An element of ``[G, N]`` is identified with its function part.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .abelian import FgAbelianGroup, Subgroup, _preimage_lattice
from .decompose import Certificate, decompose_mixed, pair_into_commutators, verify
from .errors import ConditionError, InputError, ResourceLimitError
from .wreath import FinSupFunc, WreathGroup, delta

INFINITE = math.inf
DEFAULT_MAX_SUPPORT = 20


def max_support() -> int:
    raw = os.environ.get("MCL_MAX_SUPPORT")
    if raw is None:
        return DEFAULT_MAX_SUPPORT
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"MCL_MAX_SUPPORT must be an integer, got {raw!r}")


@dataclass
class ZeroSumReport:
    """Outcome of checking the hypotheses of the exact formula.

    ``target`` is the function actually examined: the input translated by
    ``-shift`` so that the identity is in its support.
    """

    target: FinSupFunc
    ok: bool
    subgroup: Optional[Subgroup] = None
    shift: Optional[tuple] = None
    reason: str = ""
    witness: Optional[tuple] = None
    admissible_sets: list = field(default_factory=list)
    generated_subgroups: list = field(default_factory=list)

    def __iter__(self):
        yield self.ok
        yield self.subgroup if self.ok else (self.witness or self.reason)


@dataclass
class LengthResult:
    value: object  # int or INFINITE
    kind: str      # "exact" | "upper" | "lower"
    certificate: Optional[Certificate] = None


@dataclass
class Bounds:
    lower: object
    upper: object
    theta: Optional[Subgroup] = None
    certificate: Optional[Certificate] = None

    @property
    def kind(self) -> str:
        return "exact" if self.lower == self.upper else "bounds"

    def __iter__(self):
        yield self.lower
        yield self.upper


def support(x: FinSupFunc) -> frozenset:
    return x.support()


@lru_cache(maxsize=1 << 16)
def _generates_same(group: FgAbelianGroup, s: frozenset, t: frozenset) -> bool:
    return _preimage_lattice(group, s) == _preimage_lattice(group, t)


def normalize_position(x: FinSupFunc):
    """Translate ``x`` so the identity lies in its support.

    Returns ``(translated, shift)`` with ``x = translated`` moved by ``shift``;
    the shift is the lexicographically least support point (zero if the
    identity is already there).
    """
    Q = x.base
    if not x or Q.zero in x.support():
        return x, Q.zero
    s0 = min(x.support())
    return x.translate(Q._neg(s0)), s0


def check_conditions(x: FinSupFunc, *, modulus: Optional[int] = None,
                     keep_sets: bool = False, limit: Optional[int] = None) -> ZeroSumReport:
    """Check (i) identity in the support, (ii) zero total sum and (iii) that
    every zero-sum subset of the support containing the identity generates
    the same subgroup as the whole support.

    ``x`` is first translated so that (i) holds. With ``modulus`` the
    zero-sum tests are taken modulo that integer (base ``Z/m``).
    """
    Q = x.base
    y, shift = normalize_position(x)
    if not y:
        return ZeroSumReport(y, False, shift=shift, reason="(i) support is empty")
    limit = max_support() if limit is None else limit
    pts = sorted(y.support())
    if len(pts) > limit:
        raise ResourceLimitError(
            f"support of size {len(pts)} exceeds the cap {limit} (set MCL_MAX_SUPPORT)")
    full = frozenset(pts)
    lam = Subgroup(Q, tuple(pts))

    def zero(v):
        return v % modulus == 0 if modulus else v == 0

    if not zero(y.total()):
        return ZeroSumReport(y, False, lam, shift, "(ii) total sum is not zero")

    others = [p for p in pts if any(p)]
    vals = [y[p] for p in others]
    e = Q.zero
    base = y[e]
    n = len(others)
    sums = [base] * (1 << n)
    report = ZeroSumReport(y, True, lam, shift)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + vals[low.bit_length() - 1]
    for mask in range(1 << n):
        if not zero(sums[mask]):
            continue
        s = frozenset([e] + [others[i] for i in range(n) if mask >> i & 1])
        if keep_sets:
            report.admissible_sets.append(s)
            report.generated_subgroups.append(Subgroup(Q, tuple(sorted(s))))
        if mask != (1 << n) - 1 and not _generates_same(Q, s, full):
            report.ok = False
            report.reason = "(iii) a zero-sum subset generates a smaller subgroup"
            report.witness = (tuple(sorted(s)), tuple(pts))
            if not keep_sets:
                return report
    return report


def cl_gn_exact(g: WreathGroup, x: FinSupFunc) -> LengthResult:
    """Exact ``cl_{G,N}(x)`` when the zero-sum conditions hold.

    The value is the rank of the subgroup generated by the (translated)
    support; the returned certificate has exactly that many mixed factors and
    is verified before returning.
    """
    if x.base != g.index:
        raise InputError("function does not live on the index group")
    if not x:
        return LengthResult(0, "exact", Certificate(g))
    rep = check_conditions(x)
    if not rep.ok:
        raise ConditionError(f"conditions fail: {rep.reason}; use cl_gn_bounds instead")
    lam = rep.subgroup
    r = lam.rank
    cert = decompose_mixed(g, rep.target, lam)
    if any(rep.shift):
        z = g.of_top(g.lift(rep.shift))
        cert = Certificate(g, cert.factors, z, raw_length=cert.raw_length)
    if cert.raw_length != r or cert.length != r or not verify(cert, g.in_base(x)):
        raise AssertionError("internal error: certificate does not reproduce x")
    return LengthResult(r, "exact", cert)


def _zero_sum_blocks(pts, vals, p_idx, remaining):
    """Minimal zero-sum subsets of ``remaining`` that contain ``p_idx``."""
    rest = [i for i in remaining if i != p_idx]
    n = len(rest)
    sums = [vals[p_idx]] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + vals[rest[low.bit_length() - 1]]
    out = []
    for m in range(1 << n):
        if sums[m]:
            continue
        # a block with a zero-sum proper part through p splits into two
        # zero-sum blocks, which can only lower the rank
        sub = (m - 1) & m
        while sub and sums[sub]:
            sub = (sub - 1) & m
        if not sub:
            out.append([p_idx] + [rest[i] for i in range(n) if m >> i & 1])
    return out


def min_vanishing_subgroup(x: FinSupFunc, limit: Optional[int] = None):
    """Least-rank subgroup all of whose cosets carry zero ``x``-sum.

    Only subgroups generated by differences inside the blocks of a
    zero-sum partition of the support need to be searched: if ``Theta``
    works, the subgroup generated by the support differences lying in
    ``Theta`` induces the same partition and has no larger rank.
    Returns ``(rank, subgroup)`` or ``(INFINITE, None)``.
    """
    Q = x.base
    if x.total():
        return INFINITE, None
    if not x:
        return 0, Subgroup(Q, ())
    pts = sorted(x.support())
    limit = max_support() if limit is None else limit
    if len(pts) > limit:
        raise ResourceLimitError(
            f"support of size {len(pts)} exceeds the cap {limit} (set MCL_MAX_SUPPORT)")
    vals = [x[p] for p in pts]
    add, neg = Q._add, Q._neg
    best = [INFINITE, None]
    block_cache = {}

    def rank_of(gens):
        return Subgroup(Q, tuple(sorted(gens))).rank

    def search(remaining: frozenset, gens: frozenset):
        if not remaining:
            r = rank_of(gens)
            if r < best[0]:
                best[0], best[1] = r, Subgroup(Q, tuple(sorted(gens)))
            return
        if rank_of(gens) >= best[0]:
            return
        p = min(remaining)
        key = (p, remaining)
        if key not in block_cache:
            block_cache[key] = _zero_sum_blocks(pts, vals, p, sorted(remaining))
        for blk in block_cache[key]:
            new = {add(pts[i], neg(pts[p])) for i in blk if i != p}
            search(remaining - set(blk), gens | new)

    search(frozenset(range(len(pts))), frozenset())
    return best[0], best[1]


def cl_gn_bounds(g: WreathGroup, x: FinSupFunc) -> Bounds:
    """Lower and upper bounds for ``cl_{G,N}(x)`` valid for every ``x``.

    Lower bound: a product of ``l`` mixed commutators with tops ``g_i`` has
    zero sum on every coset of ``<g_i>``, a subgroup of rank at most ``l``;
    so ``cl`` is at least the least rank of such a vanishing subgroup.
    Upper bound: the length of a verified certificate built from that
    subgroup coset by coset. For abelian index groups the two agree.
    """
    if x.base != g.index:
        raise InputError("function does not live on the index group")
    lower, theta = min_vanishing_subgroup(x)
    if theta is None:
        return Bounds(INFINITE, INFINITE)
    cert = decompose_mixed(g, x, theta, cosets=True)
    if not verify(cert, g.in_base(x)):
        raise AssertionError("internal error: coset certificate does not reproduce x")
    return Bounds(lower, cert.length, theta, cert)


def cl_gn(g: WreathGroup, x: FinSupFunc) -> LengthResult:
    """Exact value through the conditions when they hold, else through bounds."""
    if not x or check_conditions(x).ok:
        return cl_gn_exact(g, x)
    b = cl_gn_bounds(g, x)
    if b.lower == b.upper:
        return LengthResult(b.upper, "exact", b.certificate)
    return LengthResult(b.upper, "upper", b.certificate)


def cl_g_abelian(g: WreathGroup, x: FinSupFunc, mixed: Optional[LengthResult] = None) -> LengthResult:
    """``cl_G(x) = ceil(cl_{G,N}(x) / 2)`` for abelian ``Gamma``.

    Upper bound: pair the mixed certificate into genuine commutators. Lower
    bound: ``cl_{G,N} <= 2 cl_G`` because each commutator of two elements
    with commuting tops is a sum of two shift differences.
    """
    if mixed is None:
        mixed = cl_gn(g, x)
    if mixed.value == INFINITE:
        return LengthResult(INFINITE, mixed.kind)
    value = math.ceil(mixed.value / 2)
    cert = pair_into_commutators(mixed.certificate)
    if cert.length != value or not verify(cert, g.in_base(x)):
        raise AssertionError("internal error: paired certificate does not reproduce x")
    return LengthResult(value, mixed.kind, cert)


def build_xr(g: WreathGroup, generators: Sequence) -> FinSupFunc:
    """``sum_i delta_{l_i} - r delta_e`` for generators ``l_1..l_r``."""
    Q = g.index
    gens = [Q.elem(t) for t in generators]
    if any(not any(t) for t in gens):
        raise InputError("x_r needs nonzero generators")
    out = delta(Q, Q.zero, -len(gens))
    for t in gens:
        out = out + delta(Q, t, 1)
    return out
