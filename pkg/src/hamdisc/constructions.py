"""Point-set constructions: iid random codes, jittered coset sampling,
antipodal families and Hamming codes.

Every randomized construction is a pure function of its parameters and a
64-bit seed.  Sub-streams are derived with :func:`derive_seed`, a SplitMix64
finaliser applied to ``seed + (index + 1) * 0x9E3779B97F4A7C15``, so any single
trial can be replayed without running the ones before it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamming import (
    EXHAUSTIVE_MAX_N,
    Code,
    DimensionError,
    InfeasibleError,
    _check_n,
    capped_entropy,
    full_mask,
    popcount,
)

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Seed of the ``index``-th sub-stream of ``seed``."""
    return splitmix64((seed + (index + 1) * _GOLDEN) & _MASK64)


def make_rng(seed: int) -> np.random.Generator:
    if not 0 <= seed <= _MASK64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    return np.random.Generator(np.random.PCG64(seed))


def _uniform_words(rng: np.random.Generator, n: int, size: int) -> list[int]:
    if n <= 63:
        return [int(v) for v in rng.integers(0, 1 << n, size=size, dtype=np.uint64)]
    return [int(v) for v in rng.integers(0, 1 << 64, size=size, dtype=np.uint64, endpoint=False)]


def _distinct_below(rng: np.random.Generator, bound: int, k: int, n: int) -> list[int]:
    """``k`` distinct integers drawn uniformly from ``range(bound)``, in draw order."""
    if bound <= 1 << 22:
        return [int(v) for v in rng.choice(bound, size=k, replace=False)]
    chosen: dict[int, None] = {}
    while len(chosen) < k:
        for v in _uniform_words(rng, n, k - len(chosen)):
            if v < bound:
                chosen.setdefault(v)
    return list(chosen)[:k]


def random_uniform_code(n: int, N: int, seed: int) -> Code:
    """``N`` distinct words drawn uniformly; repeats are redrawn."""
    _check_n(n)
    if not 1 <= N <= 1 << n:
        raise InfeasibleError(f"need 1 <= N <= 2^{n}, got N={N}")
    rng = make_rng(seed)
    chosen: dict[int, None] = {}
    while len(chosen) < N:
        for v in _uniform_words(rng, n, N - len(chosen)):
            chosen.setdefault(v)
    return Code(n, tuple(chosen))


@dataclass(frozen=True)
class CosetPartition:
    """Translates of the subcube of words supported on the first ``k`` coordinates.

    Coset ``i`` is ``V + (i << k)``: its leader is supported on the last
    ``n - k`` coordinates.
    """

    n: int
    k: int

    @property
    def count(self) -> int:
        return 1 << (self.n - self.k)

    @property
    def coset_size(self) -> int:
        return 1 << self.k

    def leader(self, i: int) -> int:
        return i << self.k

    @property
    def representatives(self) -> range:
        return range(0, 1 << self.n, 1 << self.k)

    def coset(self, i: int) -> range:
        base = self.leader(i)
        return range(base, base + self.coset_size)

    def index_of(self, x: int) -> int:
        return x >> self.k

    def diameter(self) -> int:
        return self.k


def coset_partition(n: int, k: int) -> CosetPartition:
    _check_n(n)
    if not 1 <= k < n:
        raise ValueError(f"subcube dimension k={k} must satisfy 1 <= k < {n}")
    return CosetPartition(n, k)


def jittered_code(n: int, N: int, seed: int) -> Code:
    """One uniform point in each coset of the partition with ``N`` cells."""
    _check_n(n)
    if N < 1 or N & (N - 1):
        raise InfeasibleError(f"N={N} is not a power of two")
    k = n - (N.bit_length() - 1)
    part = coset_partition(n, k)
    offsets = _uniform_words(make_rng(seed), k, N)
    return Code(n, tuple(part.leader(i) | off for i, off in enumerate(offsets)))


def straddling_cosets(part: CosetPartition, y: int, t: int) -> int:
    """Number of cosets meeting ``B(y, t)`` without lying inside it."""
    if part.n > EXHAUSTIVE_MAX_N:
        raise DimensionError("straddle count enumerates the whole space")
    words = np.arange(1 << part.n, dtype=np.uint64)
    inside = (popcount(words ^ np.uint64(y)) <= t).reshape(part.count, part.coset_size)
    hits = inside.sum(axis=1)
    return int(np.count_nonzero((hits > 0) & (hits < part.coset_size)))


def antipodal_code(n: int, K: int, extra_point: bool, seed: int) -> Code:
    """``K`` random antipodal pairs, plus optionally one unpaired point."""
    _check_n(n)
    if n % 2 == 0:
        raise DimensionError(f"antipodal families are built for odd n, got {n}")
    if K < 0 or 2 * K + int(extra_point) > 1 << n or K + int(extra_point) == 0:
        raise InfeasibleError(f"cannot place {K} pairs (+{int(extra_point)}) in 2^{n} words")
    rng = make_rng(seed)
    mask = full_mask(n)
    # Pair representatives have a zero last coordinate.
    reps = _distinct_below(rng, 1 << (n - 1), K + int(extra_point), n)
    pts = []
    for r in reps[:K]:
        pts += [r, r ^ mask]
    if extra_point:
        r = reps[K]
        pts.append(r ^ mask if rng.integers(0, 2) else r)
    return Code(n, tuple(pts))


def hamming_code(m: int) -> Code:
    """Binary Hamming code of length ``2^m - 1``.

    Position ``j`` (1-based) carries the check column ``j`` written in
    binary, so a word is a codeword when the XOR of the positions of its
    ones vanishes.
    """
    if m < 2:
        raise ValueError("Hamming codes need m >= 2")
    n = (1 << m) - 1
    if n > EXHAUSTIVE_MAX_N:
        raise DimensionError(f"length {n} exceeds the enumeration cap {EXHAUSTIVE_MAX_N}")
    words = np.arange(1 << n, dtype=np.int64)
    syndrome = np.zeros_like(words)
    for j in range(n):
        syndrome ^= ((words >> j) & 1) * (j + 1)
    return Code(n, tuple(int(w) for w in words[syndrome == 0]))


def perfect_code_complement_minimizer(m: int) -> Code:
    """All words outside the Hamming code, i.e. its ``n`` nontrivial cosets."""
    H = hamming_code(m).as_set()
    n = (1 << m) - 1
    return Code(n, tuple(x for x in range(1 << n) if x not in H))


def jitter_exponent(alpha: float, beta: float) -> float:
    """Exponent gain of jittered sampling at rate ``alpha`` and radius cutoff ``beta``.

    ``(1 - H(1 + beta - alpha)) / alpha``; zero once ``alpha <= 1/2 + beta``.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha={alpha} must lie in (0, 1)")
    if not 0.0 < beta < 0.5:
        raise ValueError(f"beta={beta} must lie in (0, 1/2)")
    return (1.0 - capped_entropy(min(1.0, 1.0 + beta - alpha))) / alpha

