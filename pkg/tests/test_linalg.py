import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from polywitt.linalg import (ModuleShape, contains, determinant, elementary_divisors, intersection,
                             kernel, matmul, rank_mod_p, span_length, spans_equal, valuation)


def _sympy_length(A, p, N):
    """Length of the row span over Z/p^N from the integer Smith form."""
    if not A:
        return 0
    D = smith_normal_form(sympy.Matrix(A), domain=sympy.ZZ)
    diag = [abs(int(D[k, k])) for k in range(min(D.shape))]
    return sum(N - min(valuation(d, p, N), N) for d in diag)


def _random_matrix(rng, rows, cols, mod):
    return [[rng.randrange(mod) for _ in range(cols)] for _ in range(rows)]


@pytest.mark.parametrize("p,N", [(2, 1), (2, 3), (3, 2), (5, 2)])
def test_span_length_matches_sympy(p, N):
    rng = random.Random(f"{p}:{N}")
    for _ in range(25):
        A = _random_matrix(rng, rng.randrange(1, 5), rng.randrange(1, 5), p**N)
        if rng.random() < 0.5:
            A = [[x * p for x in r] for r in A]
        assert span_length(A, p, N) == _sympy_length(A, p, N)


def test_elementary_divisors_example():
    assert elementary_divisors([[2, 0], [0, 4]], 2, 3) == [1, 2]
    assert elementary_divisors([[4, 0], [0, 1]], 2, 2) == [0]


def test_kernel_is_kernel():
    rng = random.Random(1)
    p, N = 2, 3
    mod = p**N
    for _ in range(20):
        A = _random_matrix(rng, 4, 3, mod)
        K = kernel(A, p, N)
        for x in K:
            assert all(v % mod == 0 for v in matmul([x], A, mod)[0])
        # length bookkeeping: |ker| + |im| = rows * N
        assert span_length(K, p, N) + span_length(A, p, N) == 4 * N


def test_intersection_and_membership():
    p, N = 3, 2
    A = [[1, 0, 0], [0, 3, 0]]
    B = [[0, 1, 0], [0, 0, 1]]
    I = intersection(A, B, p, N)
    assert spans_equal(I, [[0, 3, 0]], p, N)
    assert contains(A, [2, 6, 0], p, N)
    assert not contains(A, [0, 1, 0], p, N)


def test_rank_mod_p_and_determinant():
    assert rank_mod_p([[1, 1], [1, 1]], 2) == 1
    assert rank_mod_p([[1, 2], [3, 4]], 5) == 2
    assert determinant([[1, 2], [3, 4]], 9) == (1 * 4 - 2 * 3) % 9


def test_module_shape_embed():
    shape = ModuleShape(2, (2, 1), 3)
    assert shape.embed([1, 1]) == [2, 4]
    assert span_length(shape.generators(), 2, 3) == shape.length == 3


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(1, 3), st.integers(1, 4), st.integers(1, 4),
       st.randoms(use_true_random=False))
def test_span_length_property(p, N, rows, cols, rng):
    A = _random_matrix(rng, rows, cols, p**N)
    L = span_length(A, p, N)
    assert L == _sympy_length(A, p, N)
    assert L <= min(rows, cols) * N
    # rank mod p counts the unit elementary divisors
    assert rank_mod_p(A, p) == sum(1 for v in elementary_divisors(A, p, N) if v == 0)
