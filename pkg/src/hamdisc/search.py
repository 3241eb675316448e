"""Extremal discrepancy search.

``exhaustive_min`` enumerates every ``N``-subset of the space and is the
ground truth for tiny instances.  ``local_search_min`` is a single-swap
descent whose result is only an upper bound on the extremal value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np

from .constructions import derive_seed, make_rng, random_uniform_code
from .discrepancy import (
    WeightVector,
    _integral_exponent,
    ball_counts,
    exact_root,
    linf_from_counts,
    lp_power_from_counts,
    macwilliams_transform,
    parse_radii,
    radius_set,
    Spectrum,
)
from .hamming import Code, DimensionError, InfeasibleError, full_mask, popcount, require_exhaustive

DEFAULT_BUDGET = 10**7
MINIMIZER_CAP = 100


class BudgetExceeded(InfeasibleError):
    """The exhaustive enumeration would exceed its evaluation budget."""


@dataclass(frozen=True)
class Objective:
    """A discrepancy functional to minimise.

    Scores are compared in a monotone surrogate: ``D^p`` for finite ``p``
    (exact when ``p`` is an integer) and the maximum itself for ``p = inf``.
    """

    kind: str  # "lp" | "linf" | "hemisphere"
    n: int
    p: float | int | Fraction
    weights: WeightVector | None = None
    radii: tuple[int, ...] = ()
    label: str = ""

    @property
    def is_max(self) -> bool:
        return self.kind == "linf" or self.p == math.inf

    def needed_radii(self) -> list[int]:
        if self.weights is not None and not self.is_max:
            return self.weights.support()
        return list(self.radii)

    def score_counts(self, counts: np.ndarray, N: int):
        radii = self.needed_radii()
        if self.is_max:
            return linf_from_counts(counts, radii, self.n, N)
        return lp_power_from_counts(self.weights, counts, radii, N, self.p)

    def __call__(self, Z: Code):
        if Z.n != self.n:
            raise DimensionError(f"objective for n={self.n}, code has n={Z.n}")
        return self.score_counts(ball_counts(Z, self.needed_radii()), Z.N)

    def value(self, score):
        """Discrepancy value from a score: exact where a rational root exists."""
        if self.is_max:
            return score
        k = _integral_exponent(self.p)
        if k is not None:
            r = exact_root(score, k)
            return r if r is not None else float(score) ** (1.0 / k)
        return float(score) ** (1.0 / float(self.p))


def _parse_p(text: str):
    if text in ("inf", "infinity"):
        return math.inf
    q = Fraction(text)
    if q <= 0:
        raise ValueError(f"p must be positive, got {text}")
    return int(q) if q.denominator == 1 else float(q)


def parse_objective(text: str, n: int) -> Objective:
    """``lp:<weights>:<p>``, ``linf:<radii>`` or ``hemisphere:<p>``."""
    kind, _, rest = text.partition(":")
    if kind == "lp":
        wspec, _, ptxt = rest.rpartition(":")
        if not wspec:
            raise ValueError(f"objective {text!r} needs weights and p")
        p = _parse_p(ptxt)
        if p == math.inf:
            raise ValueError("use linf:<radii> for p = inf")
        return Objective("lp", n, p, WeightVector.parse(wspec, n), label=text)
    if kind == "linf":
        return Objective("linf", n, math.inf, radii=parse_radii(rest, n), label=text)
    if kind == "hemisphere":
        if n % 2 == 0:
            raise DimensionError("hemisphere objective needs odd n")
        m = (n - 1) // 2
        p = _parse_p(rest or "2")
        return Objective("hemisphere", n, p, WeightVector.single(n, m), radii=(m,), label=text)
    raise ValueError(f"unknown objective {text!r}")


def lp_objective(G: WeightVector, p) -> Objective:
    return Objective("lp", G.n, p, G, label=f"lp:{p}")


def linf_objective(n: int, I) -> Objective:
    return Objective("linf", n, math.inf, radii=radius_set(n, I), label="linf")


def hemisphere_objective(n: int, p) -> Objective:
    if n % 2 == 0:
        raise DimensionError("hemisphere objective needs odd n")
    m = (n - 1) // 2
    return Objective("hemisphere", n, p, WeightVector.single(n, m), radii=(m,), label=f"hemisphere:{p}")


@dataclass
class SearchResult:
    objective: str
    n: int
    N: int
    minimum: Fraction | float
    score: Fraction | float
    minimizers: list[Code]
    minimizer_count: int
    method: str
    evaluations: int
    upper_bound_only: bool = False
    trajectory: list = field(default_factory=list)

    def to_dict(self) -> dict:
        from .io import encode_value

        return {
            "objective": self.objective,
            "n": self.n,
            "N": self.N,
            "minimum": encode_value(self.minimum),
            "score": encode_value(self.score),
            "method": self.method,
            "evaluations": self.evaluations,
            "upper_bound_only": self.upper_bound_only,
            "minimizer_count": self.minimizer_count,
            "minimizers_truncated": self.minimizer_count > len(self.minimizers),
            "minimizers": [Z.strings() for Z in self.minimizers],
            "trajectory": encode_value(list(self.trajectory)),
        }


def colex_subsets(M: int, k: int) -> Iterator[tuple[int, ...]]:
    """All ``k``-subsets of ``range(M)`` in colexicographic order."""
    if k == 0:
        yield ()
        return
    for top in range(k - 1, M):
        for rest in colex_subsets(top, k - 1):
            yield rest + (top,)


@lru_cache(maxsize=8)
def _distance_matrix(n: int) -> np.ndarray:
    w = np.arange(1 << n, dtype=np.uint64)
    return popcount(w[:, None] ^ w[None, :]).astype(np.int8)


def _subset_counts(n: int, idx: tuple[int, ...], radii) -> np.ndarray:
    sub = _distance_matrix(n)[:, list(idx)]
    return np.stack([(sub <= t).sum(axis=1) for t in radii]).astype(np.int64)


def _check_budget(n: int, N: int, budget: int) -> int:
    require_exhaustive(n)
    if not 1 <= N <= 1 << n:
        raise InfeasibleError(f"need 1 <= N <= 2^{n}")
    total = math.comb(1 << n, N)
    if total > budget:
        raise BudgetExceeded(f"C(2^{n}, {N}) = {total} subsets exceeds the budget {budget}; use local search")
    return total


def exhaustive_min(n: int, N: int, objective: Objective, budget: int = DEFAULT_BUDGET) -> SearchResult:
    _check_budget(n, N, budget)
    radii = objective.needed_radii()
    best = None
    minimizers: list[tuple[int, ...]] = []
    count = evals = 0
    for idx in colex_subsets(1 << n, N):
        s = objective.score_counts(_subset_counts(n, idx, radii), N)
        evals += 1
        if best is None or s < best:
            best, minimizers, count = s, [idx], 1
        elif s == best:
            count += 1
            if len(minimizers) < MINIMIZER_CAP:
                minimizers.append(idx)
    return SearchResult(
        objective.label,
        n,
        N,
        objective.value(best),
        best,
        [Code(n, idx) for idx in minimizers],
        count,
        "exhaustive",
        evals,
    )


def local_search_min(
    n: int,
    N: int,
    objective: Objective,
    seed: int,
    restarts: int = 8,
    max_steps: int = 1000,
) -> SearchResult:
    """Best of ``restarts`` single-swap strict descents from random starts."""
    require_exhaustive(n)
    if not 1 <= N <= 1 << n:
        raise InfeasibleError(f"need 1 <= N <= 2^{n}")
    best_score, best_code, best_traj = None, None, []
    evals = 0
    for r in range(restarts):
        rseed = derive_seed(seed, r)
        rng = make_rng(derive_seed(rseed, 0))
        current = list(random_uniform_code(n, N, rseed).points)
        score = objective(Code(n, tuple(current)))
        evals += 1
        traj = [score]
        for _ in range(max_steps):
            members = set(current)
            outside = [x for x in range(1 << n) if x not in members]
            if not outside:
                break
            improved = False
            for flat in rng.permutation(N * len(outside)):
                i, j = divmod(int(flat), len(outside))
                cand = current.copy()
                cand[i] = outside[j]
                s = objective(Code(n, tuple(cand)))
                evals += 1
                if s < score:
                    current, score, improved = cand, s, True
                    traj.append(s)
                    break
            if not improved:
                break
        if best_score is None or score < best_score:
            best_score, best_code, best_traj = score, Code(n, tuple(sorted(current))), traj
    return SearchResult(
        objective.label,
        n,
        N,
        objective.value(best_score),
        best_score,
        [best_code],
        1,
        "local-search",
        evals,
        upper_bound_only=True,
        trajectory=best_traj,
    )


@dataclass
class CharacterizationReport:
    """Exhaustive check that four descriptions of the same family coincide."""

    n: int
    N: int
    subsets: int
    zero_discrepancy: int
    antipodal: int
    symmetric_distances: int
    vanishing_odd_duals: int
    disagreements: int

    @property
    def holds(self) -> bool:
        return self.disagreements == 0

    def __bool__(self) -> bool:
        return self.holds


def verify_hemisphere_characterization(n: int, N: int, budget: int = DEFAULT_BUDGET) -> CharacterizationReport:
    """Check zero hemisphere discrepancy <=> union of antipodal pairs <=>
    symmetric distance distribution <=> vanishing odd dual coefficients,
    over every ``N``-subset."""
    if n % 2 == 0:
        raise DimensionError("hemispheres need odd n")
    if N % 2:
        raise ValueError("the characterization concerns even N")
    total = _check_budget(n, N, budget)
    m = (n - 1) // 2
    mask = full_mask(n)
    D = _distance_matrix(n)
    tallies = [0, 0, 0, 0]
    disagreements = 0
    for idx in colex_subsets(1 << n, N):
        cnt = (D[:, list(idx)] <= m).sum(axis=1)
        zero = bool(np.all(2 * cnt == N))
        s = set(idx)
        antipodal = all(x ^ mask in s for x in idx)
        pairs = np.bincount(D[np.ix_(idx, idx)].ravel(), minlength=n + 1)
        A = Spectrum(n, tuple(Fraction(int(c), N) for c in pairs))
        symmetric = A.is_symmetric()
        dual = macwilliams_transform(A, N)
        odd_zero = all(dual[k] == 0 for k in range(1, n + 1, 2))
        flags = (zero, antipodal, symmetric, odd_zero)
        for i, f in enumerate(flags):
            tallies[i] += f
        disagreements += len(set(flags)) > 1
    return CharacterizationReport(n, N, total, *tallies, disagreements)
