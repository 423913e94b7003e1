import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mcl.linalg import (
    IntMatrix,
    det,
    hermite_normal_form,
    lattice_coords,
    lattice_equal,
    lattice_member,
    lattice_rank,
    lattice_sum,
    smith_normal_form,
)


def matrices(max_dim=6, lo=-5, hi=5):
    return st.integers(0, max_dim).flatmap(
        lambda r: st.integers(0, max_dim).flatmap(
            lambda c: st.lists(st.integers(lo, hi), min_size=r * c, max_size=r * c).map(
                lambda e: IntMatrix(r, c, tuple(e)))))


def check_snf(m):
    res = smith_normal_form(m)
    assert res.u @ m @ res.v == res.d
    assert abs(det(res.u)) == 1 and abs(det(res.v)) == 1
    d = res.d
    for i in range(d.rows):
        for j in range(d.cols):
            if i != j:
                assert d[i, j] == 0
    diag = d.diag()
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    return res


def test_snf_diag_2_3():
    res = check_snf(IntMatrix.diagonal([2, 3]))
    assert res.invariants == [1, 6]


def test_snf_zero_and_identity():
    assert check_snf(IntMatrix.zeros(2, 2)).d.diag() == [0, 0]
    assert check_snf(IntMatrix.identity(3)).d.diag() == [1, 1, 1]


def test_snf_empty():
    res = smith_normal_form(IntMatrix.zeros(0, 0))
    assert res.d.diag() == []
    check_snf(IntMatrix.zeros(3, 0))
    check_snf(IntMatrix.zeros(0, 2))


def test_snf_large_intermediates_are_exact():
    m = IntMatrix.from_rows([[10 ** 20 + 1, 10 ** 19], [3, 7], [-10 ** 30, 5]])
    check_snf(m)


@given(matrices())
def test_snf_contract(m):
    check_snf(m)


def test_hnf_index_six():
    h = hermite_normal_form(IntMatrix.from_columns([(2, 0), (0, 3), (2, 3)], 2))
    assert h == IntMatrix.diagonal([2, 3])
    assert lattice_rank(h) == 2
    assert abs(det(h)) == 6
    for c in [(2, 0), (0, 3), (2, 3)]:
        assert lattice_member(h, c)


def test_hnf_identity_and_single_column():
    assert hermite_normal_form(IntMatrix.identity(3)) == IntMatrix.identity(3)
    assert hermite_normal_form(IntMatrix.from_columns([(4, 6)], 2)).columns() == [(4, 6)]
    assert hermite_normal_form(IntMatrix.from_columns([(-4, -6)], 2)).columns() == [(4, 6)]


@given(matrices(max_dim=5))
def test_hnf_idempotent_and_lattice_preserving(m):
    h = hermite_normal_form(m)
    assert hermite_normal_form(h) == h
    for c in m.columns():
        assert lattice_member(h, c)
    # and every basis column is an integer combination of the input columns
    for c in h.columns():
        assert lattice_member(m, c)
    # column permutations give the same canonical basis
    perm = IntMatrix.from_columns(list(reversed(m.columns())), m.rows)
    assert hermite_normal_form(perm) == h


@given(matrices(max_dim=4))
def test_hnf_rank_matches_snf(m):
    h = hermite_normal_form(m)
    assert h.cols == lattice_rank(m) == sum(1 for x in smith_normal_form(m).d.diag() if x)


def test_lattice_member_examples():
    b = IntMatrix.diagonal([2, 3])
    assert lattice_member(b, (4, 3))
    assert not lattice_member(b, (1, 0))
    assert lattice_member(IntMatrix.from_columns([(1, 1)], 2), (2, 2))
    with pytest.raises(ValueError):
        lattice_member(b, (1, 2, 3))


def test_lattice_rank_examples():
    assert lattice_rank(IntMatrix.diagonal([2, 3])) == 2
    assert lattice_rank(IntMatrix.zeros(3, 3)) == 0
    assert lattice_rank(IntMatrix.from_columns([(2, 4), (1, 2)], 2)) == 1


@given(st.integers(1, 3).flatmap(
    lambda d: st.tuples(
        st.lists(st.lists(st.integers(-3, 3), min_size=d, max_size=d), min_size=1, max_size=3),
        st.lists(st.integers(-6, 6), min_size=d, max_size=d))))
def test_membership_against_enumeration(data):
    cols, v = data
    d = len(v)
    m = IntMatrix.from_columns(cols, d)
    brute = False
    for coeffs in itertools.product(range(-4, 5), repeat=len(cols)):
        if all(sum(c * col[i] for c, col in zip(coeffs, cols)) == v[i] for i in range(d)):
            brute = True
            break
    fast = lattice_member(m, v)
    # small coefficients suffice in one direction only
    if brute:
        assert fast
    if fast:
        coeffs = lattice_coords(hermite_normal_form(m), v)
        h = hermite_normal_form(m)
        assert tuple(h.apply(coeffs)) == tuple(v)


def test_lattice_sum_and_equal():
    a = IntMatrix.from_columns([(2, 0)], 2)
    b = IntMatrix.from_columns([(0, 3), (2, 3)], 2)
    assert lattice_equal(lattice_sum(a, b), IntMatrix.diagonal([2, 3]))
    assert not lattice_equal(a, b)
