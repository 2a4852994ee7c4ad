import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from eqfloer.linalg import (
    GF, QQ, ZZ, RingSpec, determinant, in_span, inverse, invariant_factors, kernel_and_image,
    mat_mul, mat_vec, rank, rref, smith_normal_form, solve_linear, span_rank,
)


def minors_gcd(M, k):
    m, n = len(M), len(M[0])
    g = 0
    for rows in itertools.combinations(range(m), k):
        for cols in itertools.combinations(range(n), k):
            g = math.gcd(g, determinant([[M[i][j] for j in cols] for i in rows]))
    return g


def random_matrix(rng, m, n, lo=-6, hi=6):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]


def test_ring_parse():
    assert RingSpec.parse("Z") == ZZ
    assert RingSpec.parse("Q") == QQ
    assert RingSpec.parse("F5") == GF(5)
    with pytest.raises(ValueError):
        RingSpec.parse("F2")
    with pytest.raises(ValueError):
        RingSpec.parse("F9")
    with pytest.raises(ValueError):
        RingSpec.parse("R")


def test_snf_small_example():
    M = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    D, U, V = smith_normal_form(M)
    assert mat_mul(mat_mul(U, M), V) == D
    assert [D[i][i] for i in range(3)] == [2, 6, 12]
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1


def test_snf_minor_gcds():
    rng = random.Random(7)
    for _ in range(60):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        M = random_matrix(rng, m, n)
        D, U, V = smith_normal_form(M)
        assert mat_mul(mat_mul(U, M), V) == D
        diag = [D[i][i] for i in range(min(m, n))]
        prod = 1
        for k in range(1, min(m, n) + 1):
            g = minors_gcd(M, k)
            if g == 0:
                assert all(d == 0 for d in diag[k - 1:])
                break
            prod *= diag[k - 1]
            assert prod == g


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_snf_divisor_chain(m, n, data):
    M = data.draw(st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n), min_size=m, max_size=m))
    D, U, V = smith_normal_form(M)
    assert mat_mul(mat_mul(U, M), V) == D
    diag = [D[i][i] for i in range(min(m, n))]
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)
    off = [D[i][j] for i in range(m) for j in range(n) if i != j]
    assert not any(off)


def test_invariant_factors_of_zero_and_unit():
    assert invariant_factors([[0, 0], [0, 0]]) == []
    assert invariant_factors([[1, 0], [0, 1]]) == [1, 1]


def test_rref_and_rank_over_fields():
    M = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    R, piv = rref(M, QQ)
    assert piv == [0, 1]
    assert rank(M, QQ) == 2
    # over F3 the row [1, 2, 3] = [1, 2, 0] and the matrix keeps rank 2
    assert rank(M, GF(3)) == 2
    assert rank([[3, 6], [1, 2]], GF(3)) == 1


@pytest.mark.parametrize("ring", [ZZ, QQ, GF(5)])
def test_kernel_vectors_are_killed(ring):
    rng = random.Random(11)
    for _ in range(30):
        M = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 5), -3, 3)
        n = len(M[0])
        ker, img = kernel_and_image(M, ring, ncols=n)
        for k in ker:
            assert not any(ring.reduce(x) for x in mat_vec(M, k, ring))
        if ring.is_field:
            assert len(ker) + rank(M, ring) == n


def test_integer_kernel_is_saturated():
    # kernel of [2, 4] over Z is generated by (-2, 1), not (-4, 2)
    ker, _ = kernel_and_image([[2, 4]], ZZ, ncols=2)
    assert len(ker) == 1
    assert math.gcd(*ker[0]) == 1


def test_solve_linear_consistency():
    assert solve_linear([[2, 0], [0, 3]], [4, 9], ZZ) == [2, 3]
    assert solve_linear([[2]], [1], ZZ) is None
    assert solve_linear([[2]], [1], QQ) == [Fraction(1, 2)]
    assert solve_linear([[1, 1], [1, 1]], [1, 2], QQ) is None
    assert solve_linear([[2]], [1], GF(3)) == [2]


def test_inverse_and_determinant():
    M = [[2, 1], [7, 4]]
    assert determinant(M) == 1
    Minv = inverse(M, ZZ)
    assert mat_mul(M, Minv) == [[1, 0], [0, 1]]
    assert determinant([[1, 2, 3], [4, 5, 6], [7, 8, 10]]) == -3
    with pytest.raises((ValueError, ZeroDivisionError)):
        inverse([[2, 0], [0, 1]], ZZ)


def test_span_helpers():
    vs = [[1, 0, 1], [0, 1, 1]]
    assert span_rank(vs, QQ) == 2
    assert in_span([1, 1, 2], vs, QQ)
    assert not in_span([0, 0, 1], vs, QQ)
