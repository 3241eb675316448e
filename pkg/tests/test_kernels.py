from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from hamdisc.kernels import (
    ball_intersection,
    ball_intersection_expansion,
    ball_intersection_table,
    distance_kernel,
    kernel_values,
    krawtchouk,
    krawtchouk_table,
    odd_krawtchouk_matrix,
)

from oracles import intersection_by_enumeration, krawtchouk_by_words


@pytest.mark.parametrize(
    "n, k, x, want",
    [(3, 0, 2, 1), (3, 1, 0, 3), (3, 1, 1, 1), (3, 1, 3, -3), (3, 2, 1, -1), (3, 3, 1, -1), (5, 2, 2, -2)],
)
def test_krawtchouk_examples(n, k, x, want):
    assert krawtchouk(n, k, x) == want
    assert krawtchouk_table(n)[k, x] == want


@pytest.mark.parametrize("n", range(1, 16))
def test_table_matches_defining_sum(n):
    K = krawtchouk_table(n)
    for k in range(n + 1):
        assert list(K.row(k)) == [krawtchouk(n, k, x) for x in range(n + 1)]


@pytest.mark.parametrize("n", range(1, 9))
def test_krawtchouk_is_a_character_sum(n):
    K = krawtchouk_table(n)
    for k in range(n + 1):
        for x in range(n + 1):
            assert K[k, x] == krawtchouk_by_words(n, k, x)


@pytest.mark.parametrize("n", range(1, 16))
def test_symmetry_and_orthogonality(n):
    K = krawtchouk_table(n)
    for k in range(n + 1):
        assert K[k, 0] == comb(n, k)
        for x in range(n + 1):
            assert K[k, n - x] == (-1) ** k * K[k, x]
            # reciprocity C(n,x) K_k(x) = C(n,k) K_x(k)
            assert comb(n, x) * K[k, x] == comb(n, k) * K[x, k]
        for j in range(n + 1):
            s = sum(comb(n, x) * K[k, x] * K[j, x] for x in range(n + 1))
            assert s == (comb(n, k) * 2**n if j == k else 0)


@pytest.mark.parametrize("n", [1, 3, 5, 7, 9, 11, 13, 15])
def test_half_range_orthogonality_of_odd_degrees(n):
    K = krawtchouk_table(n)
    m = (n - 1) // 2
    for k in range(1, n + 1, 2):
        for j in range(1, n + 1, 2):
            s = sum(comb(n, x) * K[k, x] * K[j, x] for x in range(m + 1))
            assert s == (comb(n, k) * 2 ** (n - 1) if j == k else 0)


def test_krawtchouk_rejects_bad_indices():
    with pytest.raises(ValueError):
        krawtchouk(3, 4, 0)
    with pytest.raises(ValueError):
        krawtchouk(3, 0, -1)


@pytest.mark.parametrize("m", range(0, 7))
def test_ball_intersection_matches_enumeration(m):
    for w in range(2 * m + 2):
        assert ball_intersection(m, w) == intersection_by_enumeration(m, w)


def test_ball_intersection_small_cases():
    assert ball_intersection_table(1) == (4, 2, 2, 0)
    assert ball_intersection(1, 0) == 4


@pytest.mark.parametrize("m", range(0, 12))
def test_ball_intersection_structure(m):
    n = 2 * m + 1
    mu = ball_intersection_table(m)
    assert mu[0] == 2 ** (n - 1)
    assert mu[n] == 0
    # complementary pairing: mu(w) + mu(n - w) = 2^(n-1)
    for w in range(n + 1):
        assert mu[w] + mu[n - w] == 2 ** (n - 1)
    # non-increasing in the distance, strictly on each parity class
    assert all(a >= b for a, b in zip(mu, mu[1:]))
    for w in range(n - 1):
        assert mu[w] > mu[w + 2]


def test_expansion_for_m_equal_one():
    ex = ball_intersection_expansion(1)
    assert ex.constant == 2
    assert ex.odd_coeffs == (Fraction(1, 2), Fraction(1, 2))
    assert ex.coeff(2) == 0


@pytest.mark.parametrize("m", range(1, 11))
def test_expansion_constant_and_positivity(m):
    ex = ball_intersection_expansion(m)
    n = 2 * m + 1
    assert ex.constant == 2 ** (n - 2)
    assert all(c > 0 for c in ex.odd_coeffs)
    assert all(ex.coeff(k) == 0 for k in range(2, n + 1, 2))


@pytest.mark.parametrize("m", range(1, 8))
def test_expansion_reconstructs_kernel(m):
    ex = ball_intersection_expansion(m)
    assert [ex.reconstruct(w) for w in range(2 * m + 2)] == list(ball_intersection_table(m))


@pytest.mark.parametrize("m", range(1, 8))
def test_expansion_coefficients_by_projection(m):
    """Coefficients recovered independently via orthogonality."""
    n = 2 * m + 1
    K = krawtchouk_table(n)
    mu = ball_intersection_table(m)
    ex = ball_intersection_expansion(m)
    for k in range(n + 1):
        proj = Fraction(sum(comb(n, w) * mu[w] * K[k, w] for w in range(n + 1)), comb(n, k) * 2**n)
        assert proj == ex.coeff(k)


def test_odd_matrix_m1():
    Phi = odd_krawtchouk_matrix(1)
    assert Phi.entries == ((3, 1), (1, -1))
    assert Phi.determinant() == -4
    assert Phi.certified_rank() == 2


@pytest.mark.parametrize("m", range(1, 8))
def test_odd_matrix_full_rank(m):
    Phi = odd_krawtchouk_matrix(m)
    assert Phi.certified_rank() == m + 1
    assert Phi.determinant() != 0
    G = Phi.weighted_gram()
    assert [G[i][i] for i in range(m + 1)] == Phi.expected_gram_diagonal()


def test_distance_kernel_values():
    assert [distance_kernel(3, w) for w in range(4)] == [0, 4, 4, 6]
    assert distance_kernel(1, 1) == 1


@given(st.integers(1, 40), st.data())
def test_distance_kernel_is_nonnegative(n, data):
    w = data.draw(st.integers(0, n))
    assert distance_kernel(n, w) >= 0
    assert (distance_kernel(n, w) == 0) == (w == 0)


def test_kernel_values_dispatch():
    assert kernel_values("volume", 3) == [1, 4, 7, 8]
    assert kernel_values("intersection", 3) == [4, 2, 2, 0]
    with pytest.raises(ValueError):
        kernel_values("intersection", 4)
    with pytest.raises(ValueError):
        kernel_values("nope", 3)
