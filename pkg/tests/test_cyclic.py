import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import G, W, elements
from mcl.abelian import Subgroup
from mcl.cyclic import commcomp_left, commcomp_right, progress_measure, reduce_to_mixed, reduction_steps
from mcl.errors import InputError
from mcl.wreath import FinSupFunc, WreathElt, WreathGroup, delta

Z = G("Z")
WZ = W("Z")
CYCLIC = [W("Z")] + [W(f"Z/{k}") for k in range(2, 9)]


def test_commcomp_examples():
    g, h = WZ.of_top((2,)), WZ.of_top((3,))
    assert commcomp_right(WZ, g, h, 0) == h
    assert commcomp_right(WZ, g, h, -1) == WZ.of_top((1,))
    assert commcomp_left(WZ, g, h, 0) == g


@given(data=st.data(), k=st.integers(-3, 3))
def test_commcomp_preserves_commutator(data, k):
    g, h = data.draw(elements(WZ, 3, 3)), data.draw(elements(WZ, 3, 3))
    c = WZ.commutator(g, h)
    assert WZ.commutator(g, commcomp_right(WZ, g, h, k)) == c
    assert WZ.commutator(commcomp_left(WZ, g, h, k), h) == c


def test_reduce_examples():
    g, h = WreathElt(delta(Z, 0), (2,)), WZ.of_top((3,))
    x, y = reduce_to_mixed(WZ, g, h)
    assert WZ.in_n(x) or WZ.in_n(y)
    assert WZ.commutator(x, y) == WZ.commutator(g, h)
    n = WZ.in_base(delta(Z, 4))
    assert reduce_to_mixed(WZ, g, n) == (g, n)
    g4 = W("Z/4")
    q = g4.index
    a, b = WreathElt(delta(q, 1), (2,)), WreathElt(delta(q, 0), (3,))
    x, y = reduce_to_mixed(g4, a, b)
    assert g4.in_n(x) or g4.in_n(y)
    assert g4.commutator(x, y) == g4.commutator(a, b)


def test_non_cyclic_rejected():
    g = W("Z^2")
    with pytest.raises(InputError):
        reduce_to_mixed(g, g.of_top((1, 0)), g.of_top((0, 1)))
    g = W("Z/2 x Z/2")
    with pytest.raises(InputError):
        reduce_to_mixed(g, g.of_top((1, 0)), g.of_top((0, 1)))


def test_coprime_torsion_product_is_cyclic():
    g = W("Z/2 x Z/3")
    a, b = g.of_top((1, 1)), WreathElt(delta(g.index, (0, 0)), (1, 2))
    x, y = reduce_to_mixed(g, a, b)
    assert (g.in_n(x) or g.in_n(y)) and g.commutator(x, y) == g.commutator(a, b)


@pytest.mark.parametrize("g", CYCLIC, ids=lambda g: str(g.gamma))
def test_reduce_random_1000(g):
    rng = random.Random(len(str(g.gamma)))
    q = g.index
    for _ in range(1000 // len(CYCLIC) + 1):
        def rnd():
            fun = FinSupFunc(q, {q.elem([rng.randint(-6, 6)]): rng.randint(-3, 3) for _ in range(3)})
            return WreathElt(fun, g.gamma.elem([rng.randint(-40, 40)]))
        a, b = rnd(), rnd()
        steps = list(reduction_steps(g, a, b))
        measures = [progress_measure(g, p) for p in steps]
        assert all(m1 > m2 for m1, m2 in zip(measures, measures[1:]))
        x, y = steps[-1]
        assert g.in_n(x) or g.in_n(y)
        assert g.commutator(x, y) == g.commutator(a, b)


def test_permutational_cyclic():
    g = WreathGroup.permutational(Z, Subgroup(Z, ((3,),)))
    a, b = WreathElt(delta(g.index, 1), (7,)), g.of_top((5,))
    x, y = reduce_to_mixed(g, a, b)
    assert (g.in_n(x) or g.in_n(y)) and g.commutator(x, y) == g.commutator(a, b)
