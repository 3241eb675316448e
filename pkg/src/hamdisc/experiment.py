"""Monte Carlo campaigns over randomized constructions, and the bundled
verification suite behind ``hamdisc verify``."""

from __future__ import annotations

import json
import math
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

from . import __version__
from .bounds import bound_jittered, bound_linf_general, bound_random
from .constructions import antipodal_code, derive_seed, jittered_code, random_uniform_code
from .hamming import Code, InfeasibleError, MAX_N
from .io import encode_value
from .search import parse_objective

CONSTRUCTIONS = ("random", "jittered", "antipodal")
SEED_RULE = "splitmix64(seed + (trial + 1) * 0x9E3779B97F4A7C15)"


@dataclass(frozen=True)
class ExperimentSpec:
    construction: str
    n: int
    size: int
    objective: str
    trials: int
    seed: int
    extra_point: bool = False

    def __post_init__(self):
        if self.construction not in CONSTRUCTIONS:
            raise ValueError(f"construction must be one of {CONSTRUCTIONS}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not 1 <= self.n <= MAX_N:
            raise InfeasibleError(f"n={self.n} outside 1..{MAX_N}")

    def build(self, trial: int) -> Code:
        s = derive_seed(self.seed, trial)
        if self.construction == "random":
            return random_uniform_code(self.n, self.size, s)
        if self.construction == "jittered":
            return jittered_code(self.n, self.size, s)
        return antipodal_code(self.n, self.size, self.extra_point, s)

    @property
    def N(self) -> int:
        if self.construction == "antipodal":
            return 2 * self.size + int(self.extra_point)
        return self.size


@dataclass
class ExperimentReport:
    spec: dict
    values: list
    powers: list
    summary: dict
    bounds: list
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return encode_value(asdict(self))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ExperimentReport:
        return cls(**json.loads(text))


def _bounds_for(spec: ExperimentSpec, obj) -> list[dict]:
    if obj.kind != "lp":
        return []
    n, N, p = spec.n, spec.N, float(obj.p)
    reports = [bound_random(p, N, n)]
    support = obj.weights.support()
    beta = max(support) / n
    if spec.construction == "jittered" and 0 < beta < 0.5:
        alpha = math.log2(N) / n
        if 0 < alpha < 1:
            reports.append(bound_jittered(p, N, alpha, beta))
    reports.append(bound_linf_general(n, N))
    return [r.to_dict() for r in reports]


def run_experiment(spec: ExperimentSpec, threads: int = 1) -> ExperimentReport:
    """Run every trial with its derived seed; output is independent of ``threads``."""
    obj = parse_objective(spec.objective, spec.n)
    if spec.construction == "antipodal" and 2 * spec.size + spec.extra_point > 1 << spec.n:
        raise InfeasibleError("antipodal capacity exceeded")

    def one(trial: int):
        return obj(spec.build(trial))

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        scores = list(pool.map(one, range(spec.trials)))

    values = [obj.value(s) for s in scores]
    fvals = [float(v) for v in values]
    summary = {
        "mean": statistics.fmean(fvals),
        "min": min(fvals),
        "max": max(fvals),
    }
    if not obj.is_max:
        fpow = [float(s) for s in scores]
        summary.update(
            mean_power=statistics.fmean(fpow),
            min_power=min(fpow),
            max_power=max(fpow),
            stdev_power=statistics.stdev(fpow) if len(fpow) > 1 else 0.0,
        )
        if all(isinstance(s, Fraction) for s in scores):
            summary["mean_power_exact"] = sum(scores, Fraction(0)) / len(scores)
        if obj.p >= 1:
            p = float(obj.p)
            summary["expectation_bound"] = 2.0**p * (p + 1.0) ** (p / 2.0) * spec.N ** (p / 2.0)
    return ExperimentReport(
        spec=asdict(spec),
        values=[encode_value(v) for v in values],
        powers=[encode_value(s) for s in scores] if not obj.is_max else [],
        summary=encode_value(summary),
        bounds=_bounds_for(spec, obj),
        metadata={"version": __version__, "trial_seed_rule": SEED_RULE, "N": spec.N},
    )


# --------------------------------------------------------------------------
# verification bundle


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _timed(name: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crashing check is a failing check
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, ok, detail, round(time.perf_counter() - t0, 3))


def verify_all(level: str = "quick") -> list[CheckResult]:
    from . import checks

    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    full = level == "full"
    suite = [
        ("uniform invariance identity", lambda: checks.uniform_identity(200 if full else 30, seed=1)),
        ("hemisphere invariance identity", lambda: checks.hemisphere_identity(200 if full else 30, seed=2)),
        ("hemisphere extremal values", lambda: checks.hemisphere_extremes(5 if full else 3)),
        ("zero-discrepancy characterization", lambda: checks.characterization(full)),
        ("kernel algebra", lambda: checks.kernel_algebra(15 if full else 9)),
        ("MacWilliams round trip", lambda: checks.macwilliams_roundtrip(100 if full else 20, seed=3)),
        ("perfect-code complement minimizer", checks.perfect_code_minimizer),
        ("complement and folding symmetries", lambda: checks.symmetries(50 if full else 10, seed=4)),
    ]
    return [_timed(name, fn) for name, fn in suite]
