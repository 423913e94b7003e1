import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import G, W, zero_sum_functions
from mcl.abelian import Subgroup
from mcl.decompose import verify
from mcl.errors import ConditionError, InputError, ResourceLimitError
from mcl.length import (
    INFINITE,
    build_xr,
    check_conditions,
    cl_g_abelian,
    cl_gn,
    cl_gn_bounds,
    cl_gn_exact,
    normalize_position,
    support,
)
from mcl.oracle import oracle_cl_g, oracle_cl_gn
from mcl.wreath import FinSupFunc, WreathGroup, delta

Z, Z2 = G("Z"), G("Z^2")
WZ, WZ2 = W("Z"), W("Z^2")


def dz(*pairs):
    return FinSupFunc(Z, {(p,): v for p, v in pairs})


def dz2(*pairs):
    return FinSupFunc(Z2, dict(pairs))


XR2 = dz2(((1, 0), 1), ((0, 1), 1), ((0, 0), -2))


def test_support():
    assert support(dz((1, 1), (0, -1))) == {(0,), (1,)}
    assert support(FinSupFunc(Z)) == frozenset()
    assert support(dz((1, 2), (2, -1), (0, -1))) == {(0,), (1,), (2,)}


def test_check_conditions_examples():
    ok, lam = check_conditions(XR2)
    assert ok and lam == Z2.whole()
    ok, witness = check_conditions(dz((1, 1), (0, -1), (10, 1), (11, -1)))
    assert not ok
    small, full = witness
    # {0, 10} is zero-sum and generates 10Z, not Z
    assert small == ((0,), (10,)) and full == ((0,), (1,), (10,), (11,))
    ok, lam = check_conditions(dz((2, 1), (-2, 1), (0, -2)))
    assert ok and lam == Subgroup(Z, ((2,),))


def test_check_conditions_reports_sets():
    rep = check_conditions(dz((1, 1), (0, -1), (10, 1), (11, -1)), keep_sets=True)
    for s, h in zip(rep.admissible_sets, rep.generated_subgroups):
        assert (0,) in s and sum(rep.target[p] for p in s) == 0
        assert h == Subgroup(Z, tuple(s))
    assert len(rep.admissible_sets) == 3   # {0,1}, {0,10}, full


def test_check_conditions_translates_first():
    x = dz((5, 1), (7, -1))
    rep = check_conditions(x)
    assert rep.ok and rep.shift == (5,) and rep.target == dz((0, 1), (2, -1))
    y, s = normalize_position(x)
    assert y.translate(s) == x


def test_cl_gn_exact_examples():
    r = cl_gn_exact(WZ, dz((1, 1), (0, -1)))
    assert (r.value, r.kind) == (1, "exact")
    assert cl_gn_exact(WZ2, XR2).value == 2
    r = cl_gn_exact(WZ, FinSupFunc(Z))
    assert r.value == 0 and r.certificate.length == 0
    with pytest.raises(ConditionError):
        cl_gn_exact(WZ, dz((1, 1), (0, -1), (10, 1), (11, -1)))


def test_cl_gn_exact_certificate_is_verified():
    x = dz((5, 1), (7, -1))
    r = cl_gn_exact(WZ, x)
    assert r.value == 1
    assert verify(r.certificate, WZ.in_base(x))
    assert r.certificate.conjugator.top == (5,)


def test_cl_gn_bounds_examples():
    assert tuple(cl_gn_bounds(WZ, dz((1, 1), (0, -1)))) == (1, 1)
    assert tuple(cl_gn_bounds(WZ, dz((0, 1)))) == (INFINITE, INFINITE)
    # two unit steps on different rows of Z^2: needs both directions
    x = dz2(((1, 0), 1), ((0, 0), -1), ((2, 1), 1), ((2, 0), -1))
    b = cl_gn_bounds(WZ2, x)
    assert tuple(b) == (2, 2) and b.kind == "exact"
    assert verify(b.certificate, WZ2.in_base(x))
    # its image in Z/3 x Z/3 already needs two mixed commutators, so 2 is a lower bound
    q = G("Z/3 x Z/3")
    image = FinSupFunc(q, {q.elem(p): v for p, v in x.items()})
    assert len(image) == len(x)
    assert oracle_cl_gn(q, image) == 2


def test_bounds_failing_conditions():
    x = dz((1, 1), (0, -1), (10, 1), (11, -1))
    b = cl_gn_bounds(WZ, x)
    assert tuple(b) == (1, 1)
    assert b.theta == Subgroup(Z, ((1,),)) or b.theta.rank == 1
    r = cl_gn(WZ, x)
    assert (r.value, r.kind) == (1, "exact")


def test_cl_g_abelian_examples():
    assert cl_g_abelian(WZ2, XR2).value == 1
    z3 = W("Z^3")
    x3 = build_xr(z3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert x3 == FinSupFunc(G("Z^3"), {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1, (0, 0, 0): -3})
    r = cl_g_abelian(z3, x3)
    assert r.value == 2 and r.certificate.length == 2
    assert cl_g_abelian(WZ, FinSupFunc(Z)).value == 0
    assert cl_g_abelian(WZ, dz((0, 1))).value == INFINITE


def test_build_xr_examples():
    assert build_xr(WZ2, [(1, 0), (0, 1)]) == XR2
    assert build_xr(WZ, [(1,)]) == dz((1, 1), (0, -1))
    x = build_xr(WZ, [(2,), (3,)])
    assert x == dz((2, 1), (3, 1), (0, -2))
    assert cl_gn(WZ, x).value == 1
    with pytest.raises(InputError):
        build_xr(WZ, [(0,)])


def test_support_cap(monkeypatch):
    x = FinSupFunc(Z, {(i,): 1 for i in range(1, 6)}) - delta(Z, 0, 5)
    monkeypatch.setenv("MCL_MAX_SUPPORT", "4")
    with pytest.raises(ResourceLimitError):
        check_conditions(x)
    monkeypatch.setenv("MCL_MAX_SUPPORT", "6")
    assert check_conditions(x).ok


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_xr_over_free_abelian(n):
    g = WreathGroup(G(f"Z^{n}"))
    for r in range(n + 1):
        gens = [tuple(int(i == j) for j in range(n)) for i in range(r)]
        x = build_xr(g, gens) if gens else FinSupFunc(g.index)
        mixed = cl_gn(g, x)
        comm = cl_g_abelian(g, x, mixed)
        assert (mixed.value, comm.value) == (r, math.ceil(r / 2))
        assert mixed.value <= 2 * comm.value


FINITE_Q = [G(s) for s in ["Z/2 x Z/2", "Z/3 x Z/3", "Z/2 x Z/4", "Z/6", "Z/2 x Z/2 x Z/2"]]


@pytest.mark.parametrize("q", FINITE_Q, ids=str)
@settings(max_examples=60)
@given(data=st.data())
def test_lengths_match_oracle_on_finite_index_groups(q, data):
    g = WreathGroup(q)
    x = data.draw(zero_sum_functions(q, max_support=6, lo=-2, hi=2))
    r = cl_gn(g, x)
    assert r.value == oracle_cl_gn(q, x)
    b = cl_gn_bounds(g, x)
    assert b.lower <= r.value <= b.upper
    if check_conditions(x).ok:
        assert tuple(b) == (r.value, r.value)
    assert cl_g_abelian(g, x, r).value == oracle_cl_g(q, x)


@pytest.mark.parametrize("q", FINITE_Q[:3], ids=str)
@settings(max_examples=30)
@given(data=st.data())
def test_oracle_translation_invariance(q, data):
    x = data.draw(zero_sum_functions(q, max_support=5, lo=-2, hi=2))
    t = q.elem(data.draw(st.lists(st.integers(0, 5), min_size=q.ngens, max_size=q.ngens)))
    assert oracle_cl_gn(q, x) == oracle_cl_gn(q, x.translate(t))
    assert cl_gn(WreathGroup(q), x).value == cl_gn(WreathGroup(q), x.translate(t)).value


@settings(max_examples=100)
@given(zero_sum_functions(Z2, max_support=5, lo=-3, hi=3, coord=3))
def test_bounds_certificates_verify_on_z2(x):
    b = cl_gn_bounds(WZ2, x)
    assert b.lower == b.upper
    assert verify(b.certificate, WZ2.in_base(x))
    r = cl_g_abelian(WZ2, x)
    assert verify(r.certificate, WZ2.in_base(x))
    assert r.value == math.ceil(b.upper / 2)
