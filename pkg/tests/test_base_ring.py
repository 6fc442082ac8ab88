import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from polywitt.base_ring import (FiniteField, Poly, WittScalar, compute_witt_polynomials,
                                from_zpn, scalar_from_dict, scalar_restrict,
                                scalar_verschiebung, teichmuller_scalar, teichmuller_zpn, to_zpn)
from polywitt.errors import DivisibilityError, ParameterMismatch, RangeError, SchemaError


F2, F3, F5 = FiniteField(2), FiniteField(3), FiniteField(5)
F4, F9 = FiniteField(2, (1, 1, 1)), FiniteField(3, (1, 0, 1))


def W(field, *coords):
    return WittScalar.make(field, coords)


# -- fields -----------------------------------------------------------------------------

@pytest.mark.parametrize("f", [F2, F3, F5, F4, F9, FiniteField(5, (3, 0, 1))])
def test_field_axioms(f):
    for x in f.elements():
        assert f.add(x, f.neg(x)) == 0
        if x:
            assert f.mul(x, f.inv(x)) == 1
        assert f.frobenius(x, f.d) == x
        for y in f.elements():
            assert f.mul(x, y) == f.mul(y, x)
            assert f.frobenius(f.mul(x, y)) == f.mul(f.frobenius(x), f.frobenius(y))
            assert f.frobenius(f.add(x, y)) == f.add(f.frobenius(x), f.frobenius(y))


def test_reducible_modulus_rejected():
    with pytest.raises(RangeError):
        FiniteField(2, (1, 0, 1))


def test_unsupported_prime():
    with pytest.raises(RangeError):
        FiniteField(7)


# -- universal polynomials ------------------------------------------------------------------

def test_s0_p2():
    P = compute_witt_polynomials(2, 1)
    xs, ys = P.variables()
    assert P.sum_polys[0] == xs[0] + ys[0]


def test_s1_and_p1_p2():
    P = compute_witt_polynomials(2, 2)
    (x0, x1), (y0, y1) = P.variables()
    assert P.sum_polys[1] == x1 + y1 - x0 * y0
    assert P.prod_polys[1] == x0 * x0 * y1 + x1 * y0 * y0 + x1 * y1 * 2


def _sympy_witt(p, n):
    X = sympy.symbols(f"x0:{n}")
    Y = sympy.symbols(f"y0:{n}")

    def ghost(v, i):
        return sum(p**j * v[j] ** (p ** (i - j)) for j in range(i + 1))

    def solve(target):
        out = []
        for i in range(n):
            rest = target(i) - sum(p**j * out[j] ** (p ** (i - j)) for j in range(i))
            out.append(sympy.expand(rest / p**i))
        return out

    S = solve(lambda i: ghost(X, i) + ghost(Y, i))
    P = solve(lambda i: ghost(X, i) * ghost(Y, i))
    return X + Y, S, P


def _as_terms(expr, gens):
    return {tuple(m): int(c) for m, c in sympy.Poly(expr, *gens).terms()}


@pytest.mark.parametrize("p,n", [(2, 3), (3, 3), (5, 2)])
def test_polynomials_match_sympy(p, n):
    gens, S, P = _sympy_witt(p, n)
    ours = compute_witt_polynomials(p, n)
    for i in range(n):
        assert ours.sum_polys[i].terms == _as_terms(S[i], gens)
        assert ours.prod_polys[i].terms == _as_terms(P[i], gens)


@pytest.mark.parametrize("p,n", [(2, 4), (3, 4), (5, 3)])
def test_ghost_identities(p, n):
    assert compute_witt_polynomials(p, n).check_ghost_identities() == []


def test_length_cap():
    with pytest.raises(RangeError):
        compute_witt_polynomials(2, 6)


def test_exact_div_failure():
    with pytest.raises(DivisibilityError):
        Poly.const(1, 3).exact_div(2)


# -- scalars: frozen examples --------------------------------------------------------------

def test_one_plus_one_p2():
    assert (W(F2, 1, 0) + W(F2, 1, 0)).coords == (0, 1)


def test_one_plus_one_p3():
    assert (W(F3, 1, 0) + W(F3, 1, 0)).coords == (2, 1)


def test_teichmuller_examples():
    assert to_zpn(teichmuller_scalar(F3, 2, 2)) == 8
    assert teichmuller_scalar(F2, 1, 3) == WittScalar.one(F2, 3)
    assert teichmuller_scalar(F2, 0, 3).is_zero()


def test_zpn_examples():
    assert to_zpn(W(F2, 1, 1)) == 3
    assert to_zpn(scalar_verschiebung(W(F2, 1))) == 2
    assert scalar_verschiebung(W(F2, 0)).is_zero()


def test_restrict_to_w0():
    assert scalar_restrict(W(F2, 1)).n == 0


def test_frobenius_trivial_on_prime_field():
    a = W(F3, 2, 1, 1)
    assert a.frobenius() == a


def test_frobenius_of_teichmuller():
    for c in F4.elements():
        assert teichmuller_scalar(F4, c, 3).frobenius() == \
            teichmuller_scalar(F4, F4.frobenius(c), 3)


def test_mismatched_lengths():
    with pytest.raises(ParameterMismatch):
        W(F2, 1) + W(F2, 1, 0)
    with pytest.raises(ParameterMismatch):
        W(F2, 1) + W(F4, 1)


# -- scalars: Z/p^n oracle ----------------------------------------------------------------

@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 1), (3, 2),
                                 (3, 3), (3, 4), (5, 1), (5, 2), (5, 3), (5, 4)])
def test_zpn_round_trip_exhaustive(p, n):
    f = FiniteField(p)
    for x in range(p**n):
        assert to_zpn(from_zpn(f, n, x)) == x


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3),
                                 (3, 4), (5, 2)])
def test_ring_ops_exhaustive(p, n):
    if p**n > 81:
        pytest.skip("exhaustive range is p^n <= 81")
    f = FiniteField(p)
    mod = p**n
    elems = [from_zpn(f, n, x) for x in range(mod)]
    for x, a in enumerate(elems):
        assert to_zpn(-a) == -x % mod
        assert to_zpn(a.restrict()) == x % (mod // p)
        assert to_zpn(scalar_verschiebung(a)) == p * x
        assert to_zpn(scalar_verschiebung(a).frobenius()) == p * x
        for y, b in enumerate(elems):
            assert to_zpn(a + b) == (x + y) % mod
            assert to_zpn(a * b) == x * y % mod


def _scalars(f, n):
    return st.lists(st.integers(0, f.q - 1), min_size=n, max_size=n).map(
        lambda c: WittScalar(f, tuple(c)))


@pytest.mark.parametrize("f", [F2, F3, F5, F4, F9])
@pytest.mark.parametrize("n", [1, 3, 4])
def test_ring_axioms_property(f, n):
    @settings(max_examples=30, deadline=None)
    @given(_scalars(f, n), _scalars(f, n), _scalars(f, n))
    def check(a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a - a == WittScalar.zero(f, n)
        assert (a * b).frobenius() == a.frobenius() * b.frobenius()
        # F V = p and the projection formula V(a) b = V(a F b)
        pa = a.pad(n + 1) * f.p
        assert scalar_verschiebung(a).frobenius() == pa
        assert scalar_verschiebung(a) * b.pad(n + 1) == scalar_verschiebung(a * b.frobenius())
        if n >= 2:
            assert scalar_verschiebung(a).restrict() == scalar_verschiebung(a.restrict())

    check()


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.data())
def test_zpn_homomorphism_property(p, n, data):
    f = FiniteField(p)
    x = data.draw(st.integers(0, p**n - 1))
    y = data.draw(st.integers(0, p**n - 1))
    a, b = from_zpn(f, n, x), from_zpn(f, n, y)
    assert to_zpn(a + b) == (x + y) % p**n
    assert to_zpn(a * b) == x * y % p**n
    c = data.draw(st.integers(0, p - 1))
    assert to_zpn(teichmuller_scalar(f, c, n)) == teichmuller_zpn(p, n, c)


def test_polynomials_agree_with_engine():
    for f, n in ((F2, 4), (F3, 3), (F4, 3), (F9, 2)):
        P = compute_witt_polynomials(f.p, n)
        for a_c in itertools.islice(itertools.product(range(f.q), repeat=n), 40):
            a = WittScalar(f, a_c)
            b = WittScalar(f, tuple(reversed(a_c)))
            vals = list(a.coords) + list(b.coords)

            def ev(poly):
                return poly.evaluate(vals, 0, 1, f.add, f.mul,
                                     lambda c, x: f.mul(f.from_coeffs([c % f.p]), x))

            assert tuple(ev(s) for s in P.sum_polys) == (a + b).coords
            assert tuple(ev(s) for s in P.prod_polys) == (a * b).coords


# -- serialization ---------------------------------------------------------------------------

def test_scalar_round_trip():
    for a in (W(F2, 1, 0, 1), W(F9, 4, 7)):
        assert scalar_from_dict(a.to_dict()) == a


def test_scalar_schema_error():
    with pytest.raises(SchemaError):
        scalar_from_dict({"p": 2, "n": 2, "q": 2, "coords": [1]})
    with pytest.raises(SchemaError):
        scalar_from_dict({"p": 2})
