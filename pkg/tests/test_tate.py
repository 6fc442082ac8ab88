import itertools

import pytest
from hypothesis import given, settings, strategies as st

from polywitt.base_ring import FiniteField, WittScalar
from polywitt.errors import NotInvariant, RangeError, SchemaError
from polywitt.orbits import count_aperiodic
from polywitt.suites import _brute_h0_length
from polywitt.tate import (EquivariantVector, TateClass, TateSpace, lift_to_invariant,
                           module_length, project_to_tate, residual_trace,
                           restrict_to_subgroup, trace, transfer_from_subgroup)

F2, F3, F4 = FiniteField(2), FiniteField(3), FiniteField(2, (1, 1, 1))


def W(f, *c):
    return WittScalar.make(f, c)


def vec(ts, n, d):
    return EquivariantVector(ts, n, {w: W(ts.field, *c) for w, c in d.items()})


def test_trace_free_orbit():
    ts = TateSpace(F2, 2, 1)
    assert trace(vec(ts, 1, {(0, 1): (1,)})) == vec(ts, 1, {(0, 1): (1,), (1, 0): (1,)})


def test_trace_with_stabilizer():
    ts = TateSpace(F2, 2, 2)
    v = trace(vec(ts, 2, {(0, 1, 0, 1): (1, 0)}))
    two = WittScalar.from_int(F2, 2, 2)
    assert v[(0, 1, 0, 1)] == two and v[(1, 0, 1, 0)] == two and len(v.coeffs) == 2


def test_trace_of_invariant_is_group_order():
    ts = TateSpace(F3, 2, 1)
    v = vec(ts, 2, {(0, 0, 0): (1, 1)})
    assert trace(v) == v.scale(WittScalar.from_int(F3, 2, 3))


def test_project_examples():
    ts = TateSpace(F2, 2, 1)
    assert project_to_tate(vec(ts, 1, {(0, 1): (1,), (1, 0): (1,)})).is_zero()
    x = project_to_tate(vec(ts, 1, {(0, 0): (1,)}))
    assert x == TateClass(ts, {(0,): W(F2, 1)})


def test_project_rejects_non_invariant():
    ts = TateSpace(F2, 2, 1)
    with pytest.raises(NotInvariant):
        project_to_tate(vec(ts, 1, {(0, 1): (1,)}))


def test_lift_examples():
    ts = TateSpace(F2, 2, 2)
    assert lift_to_invariant(ts.zero()).coeffs == {}
    x = TateClass(ts, {(0, 1): W(F2, 1)})
    assert lift_to_invariant(x) == vec(ts, 2, {(0, 1, 0, 1): (1, 0), (1, 0, 1, 0): (1, 0)})
    y = TateClass(ts, {(1,): W(F2, 1, 1)})
    assert lift_to_invariant(y) == vec(ts, 2, {(1, 1, 1, 1): (1, 1)})


def test_restriction_to_subgroup_example():
    ts = TateSpace(F2, 2, 2)
    x = TateClass(ts, {(0,): W(F2, 1, 1)})
    y = restrict_to_subgroup(x)
    assert y.space == ts.with_(j=1)
    assert y == TateClass(y.space, {(0, 0): W(F2, 1)})


@pytest.mark.parametrize("b,p,m,expected", [(1, 2, 3, 3), (1, 3, 2, 2), (2, 2, 2, 5),
                                            (2, 2, 1, 2), (3, 2, 2, 9)])
def test_length_examples(b, p, m, expected):
    assert TateSpace(FiniteField(p), b, m).module_length == expected


@pytest.mark.parametrize("f,b,m", [(F2, 1, 1), (F2, 2, 1), (F2, 2, 2), (F2, 1, 3), (F3, 2, 1),
                                   (F3, 1, 2)])
def test_length_against_smith_form(f, b, m):
    expected = sum((m - i) * count_aperiodic(b, f.p, i) for i in range(m + 1))
    assert _brute_h0_length(f, b, m) == expected == TateSpace(f, b, m).module_length


def test_transfer_restrict_is_p():
    for f, b, L in ((F2, 2, 3), (F3, 2, 2), (F4, 2, 2)):
        ts = TateSpace(f, b, L, 1)
        up = ts.with_(j=0)
        for x in up.basis():
            assert transfer_from_subgroup(restrict_to_subgroup(x)) == x.scale(f.p)
        for y in ts.basis():
            assert restrict_to_subgroup(transfer_from_subgroup(y)) == residual_trace(y)


def test_basis_and_vectors():
    ts = TateSpace(F2, 2, 2)
    assert module_length(ts.basis()) == ts.module_length
    for x in ts.basis():
        assert TateClass.from_vector(ts, x.to_vector()) == x


def test_serialization_round_trip_and_errors():
    ts = TateSpace(F4, 2, 2, 1)
    x = sum(ts.basis(), ts.zero()).scale(W(F4, 2, 0))
    assert TateClass.from_dict(x.to_dict()) == x
    bad = x.to_dict()
    bad["components"][0]["coeff"] = [1, 1, 1]
    with pytest.raises(SchemaError):
        TateClass.from_dict(bad)
    bad = x.to_dict()
    bad["components"][0]["necklace"] = [1, 0, 1]
    with pytest.raises(SchemaError):
        TateClass.from_dict(bad)
    with pytest.raises(RangeError):
        TateSpace(F2, 2, 6)


def _classes(ts):
    coeffs = [st.tuples(*[st.integers(0, ts.q - 1)] * n) for n in ts.lengths]
    return st.tuples(*coeffs).map(lambda cs: TateClass(
        ts, {k: WittScalar(ts.field, c) for k, c in zip(ts.keys, cs)}))


SPACES = [TateSpace(F2, 2, 2), TateSpace(F3, 2, 1), TateSpace(F4, 2, 2), TateSpace(F2, 2, 3, 1),
          TateSpace(F2, 3, 1)]


@pytest.mark.parametrize("ts", SPACES, ids=repr)
def test_lift_project_round_trip(ts):
    @settings(max_examples=25, deadline=None)
    @given(_classes(ts), _classes(ts))
    def check(x, y):
        v = lift_to_invariant(x)
        assert v.is_invariant()
        assert project_to_tate(v) == x
        assert project_to_tate(lift_to_invariant(x) + lift_to_invariant(y)) == x + y
        assert x + y - y == x

    check()


@pytest.mark.parametrize("ts", SPACES[:3], ids=repr)
def test_trace_vanishes_in_tate(ts):
    words = [tuple(w) for w in itertools.product(range(ts.b), repeat=ts.p**ts.L)]

    @settings(max_examples=25, deadline=None)
    @given(st.dictionaries(st.sampled_from(words),
                           st.tuples(*[st.integers(0, ts.q - 1)] * ts.n), max_size=5))
    def check(d):
        v = EquivariantVector(ts, ts.n, {w: WittScalar(ts.field, c) for w, c in d.items()})
        t = trace(v)
        assert t.is_invariant()
        assert project_to_tate(t).is_zero()

    check()


def test_rotation_acts_trivially_at_level_zero():
    ts = TateSpace(F3, 2, 2)
    for x in ts.basis():
        assert x.rotate(1) == x
    sub = ts.with_(j=1)
    moved = [y for y in sub.basis() if y.rotate(1) != y]
    assert moved
    assert all(y.rotate(3) == y for y in sub.basis())
