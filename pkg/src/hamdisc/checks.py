"""Identity and characterization checks bundled by ``verify_all``.

Each check returns ``(passed, detail)``; none of them raise on a failed
identity.
"""

from __future__ import annotations

import math
from math import comb

from .constructions import derive_seed, hamming_code, make_rng, perfect_code_complement_minimizer, random_uniform_code
from .discrepancy import (
    WeightVector,
    distance_distribution,
    fold_weights,
    lp_power,
    macwilliams_inverse,
    macwilliams_transform,
    stolarsky_hemisphere,
    stolarsky_uniform,
)
from .hamming import Code, complement_code, full_mask
from .kernels import (
    ball_intersection,
    ball_intersection_expansion,
    krawtchouk_table,
    odd_krawtchouk_matrix,
)
from .search import exhaustive_min, hemisphere_objective, lp_objective, verify_hemisphere_characterization


def random_codes(count: int, seed: int, dims, max_fraction: float = 0.5):
    """Seeded stream of random codes with ``1 <= N <= max_fraction * 2^n``."""
    rng = make_rng(seed)
    dims = list(dims)
    for i in range(count):
        n = dims[int(rng.integers(len(dims)))]
        N = int(rng.integers(1, max(1, int(max_fraction * (1 << n))) + 1))
        yield random_uniform_code(n, N, derive_seed(seed, i))


def uniform_identity(count: int, seed: int) -> tuple[bool, str]:
    bad = [Z for Z in random_codes(count, seed, range(3, 11)) if not stolarsky_uniform(Z).holds]
    ok = not bad and stolarsky_uniform(Code.from_words(["000", "111"])).lhs == 3
    return ok, f"{count} codes, {len(bad)} failures"


def hemisphere_identity(count: int, seed: int) -> tuple[bool, str]:
    bad = [Z for Z in random_codes(count, seed, (3, 5, 7, 9)) if not stolarsky_hemisphere(Z).holds]
    ok = not bad
    ok &= stolarsky_hemisphere(Code.from_words(["000", "111"])).lhs == 0
    ok &= stolarsky_hemisphere(Code.from_words(["000", "100"])).lhs == 1
    return ok, f"{count} codes, {len(bad)} failures"


def hemisphere_extremes(max_n: int) -> tuple[bool, str]:
    from fractions import Fraction

    failures = []
    for n, sizes in ((3, range(1, 9)), (5, range(1, 5))):
        if n > max_n:
            continue
        for N in sizes:
            want = Fraction(N % 2, 2)
            for p in (1, 2, math.inf):
                got = exhaustive_min(n, N, hemisphere_objective(n, p)).minimum
                if got != want:
                    failures.append((n, N, p, got))
    return not failures, f"failures: {failures}" if failures else "all extremal values exact"


def characterization(full: bool) -> tuple[bool, str]:
    cases = [(3, N) for N in (2, 4, 6, 8)] + ([(5, 2), (5, 4)] if full else [(5, 2)])
    details = []
    ok = True
    for n, N in cases:
        rep = verify_hemisphere_characterization(n, N)
        pairs = 1 << (n - 1)
        expected = comb(pairs, N // 2)
        ok &= rep.holds and rep.zero_discrepancy == expected
        details.append(f"n={n},N={N}:{rep.zero_discrepancy}/{expected}")
    return ok, " ".join(details)


def kernel_algebra(max_n: int) -> tuple[bool, str]:
    for n in range(1, max_n + 1, 2):
        K = krawtchouk_table(n)
        m = (n - 1) // 2
        for k in range(n + 1):
            for w in range(n + 1):
                if K[k, w] != (-1) ** k * K[k, n - w]:
                    return False, f"symmetry fails at n={n}, k={k}, w={w}"
            for j in range(n + 1):
                full_sum = sum(K[k, w] * K[j, w] * comb(n, w) for w in range(n + 1))
                if full_sum != (comb(n, k) << n if j == k else 0):
                    return False, f"orthogonality fails at n={n}, ({k}, {j})"
                if j % 2 and k % 2:
                    half = sum(K[k, w] * K[j, w] * comb(n, w) for w in range(m + 1))
                    if half != (comb(n, k) << (n - 1) if j == k else 0):
                        return False, f"half-range orthogonality fails at n={n}, ({k}, {j})"
    for m in range(1, (max_n - 1) // 2 + 1):
        if m > 7:
            break
        ex = ball_intersection_expansion(m)
        if any(ex.reconstruct(w) != ball_intersection(m, w) for w in range(2 * m + 2)):
            return False, f"expansion fails at m={m}"
        if odd_krawtchouk_matrix(m).certified_rank() != m + 1:
            return False, f"rank fails at m={m}"
    return True, f"n <= {max_n}"


def macwilliams_roundtrip(count: int, seed: int) -> tuple[bool, str]:
    for Z in random_codes(count, seed, range(1, 11), max_fraction=1.0):
        A = distance_distribution(Z)
        dual = macwilliams_transform(A, Z.N)
        if dual[0] != 1 or macwilliams_inverse(dual, Z.N) != A:
            return False, f"round trip fails for n={Z.n}, N={Z.N}"
    return True, f"{count} codes"


def perfect_code_minimizer() -> tuple[bool, str]:
    res = exhaustive_min(3, 6, lp_objective(WeightVector.uniform(3), 2))
    mask = full_mask(3)
    expected = {complement_code(Code(3, (y, y ^ mask))) for y in range(8)}
    ok = set(res.minimizers) == expected and perfect_code_complement_minimizer(2) in expected
    ok &= hamming_code(2) == Code.from_words(["000", "111"])
    return ok, f"minimum {res.minimum}, {res.minimizer_count} minimizers"


def symmetries(count: int, seed: int) -> tuple[bool, str]:
    for Z in random_codes(count, seed, range(3, 9), max_fraction=1.0):
        G = WeightVector.uniform(Z.n)
        base = lp_power(G, Z, 2)
        if Z.N < 1 << Z.n and lp_power(G, complement_code(Z), 2) != base:
            return False, f"complement identity fails for n={Z.n}, N={Z.N}"
        if lp_power(fold_weights(G), Z, 2) != base:
            return False, f"folding identity fails for n={Z.n}, N={Z.N}"
    return True, f"{count} codes"
