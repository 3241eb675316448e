"""Krawtchouk polynomials and the radial kernels built from them.

Everything here is exact: integers for Krawtchouk values and kernel
values, ``Fraction`` for expansion coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .hamming import ball_volume


def _check_index(name: str, v: int, n: int) -> None:
    if not 0 <= v <= n:
        raise ValueError(f"{name}={v} outside 0..{n}")


def krawtchouk(n: int, k: int, x: int) -> int:
    """Binary Krawtchouk polynomial K_k(x) of length ``n`` by its defining sum."""
    _check_index("k", k, n)
    _check_index("x", x, n)
    return sum((-1) ** j * comb(x, j) * comb(n - x, k - j) for j in range(k + 1))


@dataclass(frozen=True)
class KrawtchoukTable:
    n: int
    values: tuple[tuple[int, ...], ...]

    def __getitem__(self, kx: tuple[int, int]) -> int:
        k, x = kx
        return self.values[k][x]

    def row(self, k: int) -> tuple[int, ...]:
        return self.values[k]


@lru_cache(maxsize=64)
def krawtchouk_table(n: int) -> KrawtchoukTable:
    """Table of K_k(x), 0 <= k, x <= n, filled by the three-term recurrence

        (k + 1) K_{k+1}(x) = (n - 2x) K_k(x) - (n - k + 1) K_{k-1}(x).
    """
    if n < 1:
        raise ValueError("n must be positive")
    rows = [[1] * (n + 1), [n - 2 * x for x in range(n + 1)]]
    for k in range(1, n):
        prev, cur = rows[k - 1], rows[k]
        nxt = []
        for x in range(n + 1):
            num = (n - 2 * x) * cur[x] - (n - k + 1) * prev[x]
            q, r = divmod(num, k + 1)
            assert r == 0
            nxt.append(q)
        rows.append(nxt)
    return KrawtchoukTable(n, tuple(tuple(r) for r in rows[: n + 1]))


def ball_intersection(m: int, w: int) -> int:
    """Size of the intersection of two radius-``m`` balls in length ``2m+1``
    whose centres are at distance ``w``.

    Count the words agreeing with the first centre except in ``i`` of the
    ``w`` differing positions and ``j`` of the ``n - w`` common ones.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    n = 2 * m + 1
    _check_index("w", w, n)
    total = 0
    for i in range(w + 1):
        for j in range(n - w + 1):
            if i + j <= m and 0 <= w - i + j <= m:
                total += comb(w, i) * comb(n - w, j)
    return total


@lru_cache(maxsize=64)
def ball_intersection_table(m: int) -> tuple[int, ...]:
    return tuple(ball_intersection(m, w) for w in range(2 * m + 2))


@dataclass(frozen=True)
class IntersectionExpansion:
    """Krawtchouk coefficients of the ball-intersection kernel.

    Only the constant term and odd degrees appear; ``odd_coeffs[r]`` is the
    coefficient of K_{2r+1}.
    """

    m: int
    constant: Fraction
    odd_coeffs: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return 2 * self.m + 1

    def coeff(self, k: int) -> Fraction:
        if k == 0:
            return self.constant
        if k % 2 == 0:
            return Fraction(0)
        return self.odd_coeffs[(k - 1) // 2]

    def reconstruct(self, w: int) -> Fraction:
        K = krawtchouk_table(self.n)
        return self.constant + sum(
            (c * K[2 * r + 1, w] for r, c in enumerate(self.odd_coeffs)), Fraction(0)
        )


def ball_intersection_expansion(m: int) -> IntersectionExpansion:
    if m < 0:
        raise ValueError("m must be nonnegative")
    n = 2 * m + 1
    lead = Fraction(comb(2 * m, m) ** 2, 2**n)
    odd = tuple(
        lead * Fraction(comb(m, (k - 1) // 2) ** 2, comb(2 * m, k - 1) ** 2)
        for k in range(1, n + 1, 2)
    )
    return IntersectionExpansion(m, Fraction(2) ** (n - 2), odd)


def distance_kernel(n: int, w: int) -> int:
    """Pair kernel of the quadratic-discrepancy invariance identity with
    uniform radius weights: ``2^(n-w) * w * C(w-1, ceil(w/2) - 1)``."""
    _check_index("w", w, n)
    if w == 0:
        return 0
    return 2 ** (n - w) * w * comb(w - 1, (w + 1) // 2 - 1)


@dataclass(frozen=True)
class OddKrawtchoukMatrix:
    """Rows K_1, K_3, ..., K_{2m+1} evaluated at 0..m, for length 2m+1."""

    m: int
    entries: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return 2 * self.m + 1

    def weighted_gram(self) -> list[list[int]]:
        """Phi B Phi^T with B = diag(C(n, w), w = 0..m)."""
        n, size = self.n, self.m + 1
        B = [comb(n, w) for w in range(size)]
        return [
            [sum(self.entries[a][w] * B[w] * self.entries[b][w] for w in range(size)) for b in range(size)]
            for a in range(size)
        ]

    def expected_gram_diagonal(self) -> list[int]:
        n = self.n
        return [2 ** (n - 1) * comb(n, 2 * r + 1) for r in range(self.m + 1)]

    def certified_rank(self) -> int:
        """Rank read off the weighted Gram identity.

        The Gram matrix equals a diagonal with positive entries, so the rank
        is the full size ``m + 1``.  Raises if the identity fails.
        """
        G = self.weighted_gram()
        diag = self.expected_gram_diagonal()
        size = self.m + 1
        for a in range(size):
            for b in range(size):
                want = diag[a] if a == b else 0
                if G[a][b] != want:
                    raise ArithmeticError(f"Gram identity fails at ({a}, {b}): {G[a][b]} != {want}")
        return size

    def determinant(self) -> int:
        return _bareiss_det([list(r) for r in self.entries])


def odd_krawtchouk_matrix(m: int) -> OddKrawtchoukMatrix:
    if m < 0:
        raise ValueError("m must be nonnegative")
    K = krawtchouk_table(2 * m + 1)
    return OddKrawtchoukMatrix(
        m, tuple(tuple(K[2 * r + 1, c] for c in range(m + 1)) for r in range(m + 1))
    )


def _bareiss_det(a: list[list[int]]) -> int:
    # Fraction-free elimination, exact on integers.
    size = len(a)
    sign, prev = 1, 1
    for k in range(size - 1):
        if a[k][k] == 0:
            for i in range(k + 1, size):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def kernel_values(name: str, n: int) -> list[int | Fraction]:
    """Named kernel tabulated over distances 0..n (used by the CLI)."""
    if name == "distance":
        return [distance_kernel(n, w) for w in range(n + 1)]
    if name == "intersection":
        if n % 2 == 0:
            raise ValueError("the ball-intersection kernel needs odd n")
        return list(ball_intersection_table((n - 1) // 2))
    if name == "volume":
        return [ball_volume(n, t) for t in range(n + 1)]
    raise ValueError(f"unknown kernel {name!r}")
