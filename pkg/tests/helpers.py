"""Shared hypothesis strategies and small constructors for the test suite."""
from hypothesis import strategies as st

from mcl.abelian import FgAbelianGroup
from mcl.wreath import FinSupFunc, WreathElt, WreathGroup


def G(s):
    return FgAbelianGroup.parse(s)


def W(s):
    return WreathGroup(G(s))


def vec(group, draw, lo=-5, hi=5):
    return group.elem(draw(st.lists(st.integers(lo, hi), min_size=group.ngens, max_size=group.ngens)))


@st.composite
def functions(draw, group, max_support=5, lo=-5, hi=5, coord=5):
    n = draw(st.integers(0, max_support))
    entries = {}
    for _ in range(n):
        at = vec(group, draw, -coord, coord)
        entries[at] = entries.get(at, 0) + draw(st.integers(lo, hi))
    return FinSupFunc(group, entries)


@st.composite
def zero_sum_functions(draw, group, max_support=5, lo=-5, hi=5, coord=3):
    f = draw(functions(group, max_support, lo, hi, coord))
    return f - FinSupFunc(group, {group.zero: f.total()})


@st.composite
def elements(draw, g: WreathGroup, max_support=5, coord=5):
    fun = draw(functions(g.index, max_support, coord=coord))
    top = vec(g.gamma, draw, -coord, coord)
    return WreathElt(fun, top)


WREATHS = [W("Z"), W("Z^2"), W("Z x Z/3"), W("Z/5"), W("Z/2 x Z/4")]
