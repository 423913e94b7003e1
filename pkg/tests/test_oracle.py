import csv

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import G, zero_sum_functions
from mcl.errors import InputError, ResourceLimitError
from mcl.oracle import INFINITE, FiniteWreath, bfs_wordlength, oracle_cl_g, oracle_cl_gn
from mcl.wreath import FinSupFunc, delta

Z2, Z3SQ = G("Z/2"), G("Z/3 x Z/3")
XR = FinSupFunc(Z3SQ, {(1, 0): 1, (0, 1): 1, (0, 0): -2})


def test_oracle_cl_gn_examples():
    assert oracle_cl_gn(Z2, delta(Z2, 1) - delta(Z2, 0)) == 1
    assert oracle_cl_gn(Z3SQ, XR) == 2
    assert oracle_cl_gn(Z3SQ, delta(Z3SQ, (0, 0))) == INFINITE
    assert oracle_cl_gn(Z3SQ, FinSupFunc(Z3SQ)) == 0


def test_oracle_cl_g_examples():
    assert oracle_cl_g(Z3SQ, XR) == 1
    assert oracle_cl_g(Z2, delta(Z2, 1) - delta(Z2, 0)) == 1
    assert oracle_cl_g(Z2, FinSupFunc(Z2)) == 0
    assert oracle_cl_g(Z2, delta(Z2, 0)) == INFINITE


def test_oracle_modular_base():
    # over Z/2 the function 2 delta_0 is zero
    assert oracle_cl_gn(Z2, delta(Z2, 0, 2), modulus=2) == 0
    assert oracle_cl_gn(Z2, delta(Z2, 0, 2)) == INFINITE
    # over Z/3, delta_0 + delta_1 + delta_2 ... has total 3 = 0
    z3 = G("Z/3")
    x = FinSupFunc(z3, {(0,): 1, (1,): 1, (2,): 1})
    assert oracle_cl_gn(z3, x) == INFINITE and oracle_cl_gn(z3, x, modulus=3) == 1


def test_oracle_limits():
    with pytest.raises(ResourceLimitError):
        oracle_cl_gn(G("Z/13"), FinSupFunc(G("Z/13")))
    with pytest.raises(InputError):
        oracle_cl_gn(G("Z"), FinSupFunc(G("Z")))
    with pytest.raises(ResourceLimitError):
        bfs_wordlength(2, G("Z/4 x Z/4"))
    with pytest.raises(InputError):
        bfs_wordlength(1, Z2)


def test_bfs_examples():
    t = bfs_wordlength(2, Z2)
    assert len(t.values) == 2 and int(t.cl_gn.max()) <= 1
    assert t.lookup([0, 0]) == (0, 0)
    t = bfs_wordlength(2, G("Z/2 x Z/2"))
    assert int((t.cl_gn - 2 * t.cl_g).max()) <= 0


SMALL = [G(s) for s in ["Z/2", "Z/3", "Z/2 x Z/2"]]


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("q", SMALL, ids=str)
def test_commutator_sets_match_brute_force(m, q):
    w = FiniteWreath(m, q)
    if w.order ** 2 > 200_000:
        pytest.skip("brute force too large")
    assert w.mixed_commutators() == w.mixed_commutators_brute()
    assert w.all_commutators() == w.all_commutators_brute()


BFS_CASES = [(m, G(s)) for m in (2, 3) for s in ["Z/2", "Z/3", "Z/4", "Z/2 x Z/2"]]


@pytest.mark.parametrize("m,q", BFS_CASES, ids=lambda v: str(v))
def test_lattice_oracle_matches_bfs(m, q):
    t = bfs_wordlength(m, q)
    for values, gn, gg in t.rows():
        x = FinSupFunc(q, dict(zip(t.elements, values)))
        assert oracle_cl_gn(q, x, modulus=m) == gn
        assert oracle_cl_g(q, x, modulus=m) == gg
        assert gn <= 2 * gg
        if len(q.torsion) <= 1:
            assert gn == gg


@pytest.mark.parametrize("q", [G("Z/2 x Z/2"), G("Z/3 x Z/3"), G("Z/2 x Z/4")], ids=str)
@settings(max_examples=40)
@given(data=st.data())
def test_shift_invariance_and_monotonicity(q, data):
    x = data.draw(zero_sum_functions(q, max_support=5, lo=-2, hi=2))
    els = list(q.enumerate())
    t = data.draw(st.sampled_from(els))
    v = oracle_cl_gn(q, x)
    assert oracle_cl_gn(q, x.translate(t)) == v
    y = x + delta(q, t) - delta(q, q.zero)
    assert abs(oracle_cl_gn(q, y) - v) <= 1


def test_csv_export(tmp_path):
    t = bfs_wordlength(2, G("Z/2 x Z/2"))
    out = tmp_path / "t.csv"
    t.to_csv(out)
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["element", "cl_g", "cl_gn"]
    assert len(rows) == 1 + len(t.values)
    assert rows[1] == ["[0 0 0 0]", "0", "0"]
