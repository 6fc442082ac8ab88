import random

import pytest
from hypothesis import given, settings, strategies as st

from polywitt.base_ring import FiniteField, WittScalar
from polywitt.errors import CapExceeded, ParameterMismatch, SchemaError
from polywitt.orbits import count_necklaces
from polywitt.suites import random_element, random_lift, random_map
from polywitt.tate import TateClass
from polywitt.witt_functor import (BasedSpace, LinearMap, WittElement, apply_map,
                                   apply_map_direct, basis_elements, build_tower, degrees,
                                   is_homogeneous, restrict_class, restriction, scalar_action,
                                   teichmuller, witt_space, witt_zero)
from polywitt.witt_structure import Submodule, kernel_of

F2, F3 = FiniteField(2), FiniteField(3)
F4, F9 = FiniteField(2, (1, 1, 1)), FiniteField(3, (1, 0, 1))
FIELDS = [F2, F3, F4, F9]


def W(f, *c):
    return WittScalar.make(f, c)


def comps(x):
    return {(i, key): list(c.coords) for i, key, c in x.components()}


def restrict_by_dilation(x: TateClass) -> TateClass:
    """R as r o Q(D)^-1: read the literal at the p-fold concatenation of each
    word, undo the Frobenius of the diagonal map, reduce one level."""
    sp = x.space
    target = sp.with_(L=sp.L - 1)
    return TateClass.from_literal(
        target, lambda u: x.literal(u * sp.p).frobenius(-1).restrict(target.n))


# -- frozen examples ----------------------------------------------------------------------

def test_teichmuller_example_p2():
    E = BasedSpace.standard(F2, 2)
    x = teichmuller(E, (1, 1), 2)
    assert comps(x) == {(0, (0,)): [1, 0], (0, (1,)): [1, 0], (1, (0, 1)): [1]}
    assert comps(restriction(x)) == {(0, (0,)): [1], (0, (1,)): [1]}


def test_teichmuller_basis_vector_and_zero():
    E = BasedSpace.standard(F3, 3)
    assert teichmuller(E, (0, 0, 0), 2).is_zero()
    assert comps(teichmuller(E, (0, 1, 0), 2)) == {(0, (1,)): [1, 0]}


def test_teichmuller_not_additive():
    E = BasedSpace.standard(F2, 2)
    lhs = teichmuller(E, (1, 0), 2) + teichmuller(E, (0, 1), 2)
    assert lhs != teichmuller(E, (1, 1), 2)


def test_identity_lift_by_three():
    E = BasedSpace.standard(F2, 2)
    ident = LinearMap.identity(E)
    three = WittScalar.from_int(F2, 2, 3)
    zero = WittScalar.zero(F2, 2)
    lift = [[three, zero], [zero, three]]
    for x in basis_elements(E, 2):
        assert apply_map(ident, x, lift) == x


def test_zero_map():
    E = BasedSpace.standard(F3, 2)
    x = teichmuller(E, (1, 2), 2)
    assert apply_map(LinearMap.zero(E, E), x).is_zero()


def test_scalar_action_examples():
    E = BasedSpace.standard(F2, 2)
    x = teichmuller(E, (1, 1), 2)
    assert scalar_action(WittScalar.one(F2, 2), x) == x
    assert scalar_action(WittScalar.from_int(F2, 2, 2), x) == x + x
    # multiplication by p kills the top layer and shifts the rest
    assert comps(x.mul_int(2)) == {(0, (0,)): [0, 1], (0, (1,)): [0, 1]}
    E3 = BasedSpace.standard(F3, 2)
    for y in basis_elements(E3, 2):
        for a in range(3):
            total = witt_zero(E3, 2)
            for _ in range(a):
                total = total + y
            assert scalar_action(WittScalar.from_int(F3, 2, a), y) == total


def test_rank_one_is_classical():
    E = BasedSpace.standard(F3, 1)
    for m in (1, 2, 3):
        assert witt_space(E, m).module_length == m
    x = WittElement(E, TateClass(witt_space(E, 3), {(0,): W(F3, 1, 2, 0)}))
    assert comps(restriction(x)) == {(0, (0,)): [1, 2]}


def test_restriction_kernel_dimension():
    for f, b, m in ((F2, 2, 2), (F2, 2, 3), (F3, 2, 1)):
        top, low = witt_space(BasedSpace.standard(f, b), m + 1), witt_space(
            BasedSpace.standard(f, b), m)
        ker = kernel_of(restrict_class, top, low)
        assert ker.length == count_necklaces(b, f.p, m)
        image = Submodule.span(low, (restrict_class(x) for x in top.basis()))
        assert image.length == low.module_length


def test_restriction_on_top_component():
    E = BasedSpace.standard(F2, 2)
    ts = witt_space(E, 2)
    x = WittElement(E, TateClass(ts, {(0, 1): W(F2, 1)}))
    assert restriction(x).is_zero()


def test_tower():
    E = BasedSpace.standard(F2, 2)
    t = build_tower(teichmuller(E, (1, 1), 3))
    assert [x.m for x in t.levels] == [1, 2, 3]
    assert t[2] == teichmuller(E, (1, 1), 2)
    z = build_tower(witt_zero(E, 3))
    assert all(x.is_zero() for x in z.levels)


def test_degrees():
    E = BasedSpace.standard(F2, 2, grading=(0, 1))
    x = teichmuller(E, (1, 1), 2)
    assert degrees(x) == {0, 1, 0.5}
    assert is_homogeneous(teichmuller(E, (0, 1), 3))
    assert not is_homogeneous(x)
    assert degrees(teichmuller(BasedSpace.standard(F2, 2, grading=(0, 0)), (1, 1), 2)) == {0}


def test_dim_zero():
    Z = BasedSpace.standard(F2, 0)
    assert witt_space(Z, 3).module_length == 0
    assert witt_zero(Z, 3).is_zero()


def test_errors():
    E = BasedSpace.standard(F2, 2)
    Fb = BasedSpace.standard(F2, 3)
    with pytest.raises(ParameterMismatch):
        teichmuller(E, (1, 1), 2) + teichmuller(E, (1, 1), 1)
    with pytest.raises(ParameterMismatch):
        apply_map(LinearMap.identity(Fb), teichmuller(E, (1, 1), 2))
    with pytest.raises(CapExceeded):
        teichmuller(BasedSpace.standard(F2, 3), (1, 1, 1), 4)
    with pytest.raises(SchemaError):
        WittElement.from_dict({"p": 2})


def test_serialization():
    E = BasedSpace.standard(F4, 2, grading=(0, 1))
    x = teichmuller(E, (1, 2), 2)
    assert WittElement.from_dict(x.to_dict()) == x
    fmap = LinearMap.make(E, BasedSpace.standard(F4, 1, "t"), [[1, 3]])
    assert LinearMap.from_dict(fmap.to_dict()) == fmap


# -- properties -------------------------------------------------------------------------------

CONFIGS = [(F2, 2, 1), (F2, 2, 2), (F2, 1, 3), (F3, 2, 1), (F3, 1, 2), (F4, 2, 2), (F9, 2, 1)]


@pytest.mark.parametrize("f,b,m", CONFIGS, ids=str)
def test_restriction_matches_dilation_route(f, b, m):
    E = BasedSpace.standard(f, b)

    @settings(max_examples=20, deadline=None)
    @given(st.randoms(use_true_random=False))
    def check(rng):
        x = random_element(E, m + 1, rng)
        assert restrict_class(x.cls) == restrict_by_dilation(x.cls)

    check()


@pytest.mark.parametrize("f,b,m", CONFIGS, ids=str)
def test_functor_properties(f, b, m):
    E = BasedSpace.standard(f, b)
    T = BasedSpace.standard(f, 2, "t")
    U = BasedSpace.standard(f, b, "u")

    @settings(max_examples=15, deadline=None)
    @given(st.randoms(use_true_random=False))
    def check(rng):
        g, h = random_map(E, T, rng), random_map(T, U, rng)
        x, y = random_element(E, m, rng), random_element(E, m, rng)
        e = tuple(rng.randrange(f.q) for _ in range(b))
        gx = apply_map(g, x)
        assert gx == apply_map(g, x, random_lift(g, m, rng))
        assert gx == apply_map_direct(g, x, random_lift(g, m, rng))
        assert apply_map(LinearMap.identity(E), x) == x
        assert apply_map(h @ g, x) == apply_map(h, gx)
        assert apply_map(g, x + y) == gx + apply_map(g, y)
        assert apply_map(g, teichmuller(E, e, m)) == teichmuller(T, g.apply(e), m)
        if m > 1:
            assert restriction(gx) == apply_map(g, restriction(x))
            assert restriction(teichmuller(E, e, m)) == teichmuller(E, e, m - 1)

    check()


def test_lift_independence_many():
    rng = random.Random("lift")
    for f, b, m in ((F2, 2, 2), (F3, 2, 1), (F4, 1, 2)):
        E = BasedSpace.standard(f, b)
        for _ in range(20):
            g = random_map(E, E, rng)
            x = random_element(E, m, rng)
            assert apply_map(g, x, random_lift(g, m, rng)) == apply_map(g, x,
                                                                        random_lift(g, m, rng))
