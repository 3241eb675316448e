"""Closed-form upper bounds on ball discrepancies and reference curves."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Iterable

from .constructions import jitter_exponent


@dataclass(frozen=True)
class BoundReport:
    name: str
    params: dict
    value: float | None
    applicable: bool = True
    reason: str = ""
    improves: bool | None = None
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.applicable and self.value is not None:
            raise ValueError("an inapplicable bound carries no value")
        if self.value is not None and self.value < 0:
            raise ValueError("bounds are nonnegative")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["notes"] = list(self.notes)
        return d


def _moment_constant(p: float) -> float:
    if p <= 0:
        raise ValueError(f"p must be positive, got {p}")
    return 2.0 * math.sqrt(p + 1.0) if p >= 1 else 2.0**1.5


def _is_pow2(N: int) -> bool:
    return N >= 1 and N & (N - 1) == 0


def bound_random(p: float, N: int, n: int | None = None) -> BoundReport:
    """Upper bound on ``D_p(G, n, N)`` for any weights, via iid random codes."""
    c = _moment_constant(p)
    if N < 1:
        raise ValueError("N must be positive")
    params = {"p": p, "N": N, "n": n}
    if n is not None and N > 1 << (n - 1):
        return BoundReport("random", params, None, False, f"N={N} exceeds 2^(n-1)={1 << (n - 1)}")
    return BoundReport("random", params, c * math.sqrt(N))


def bound_jittered(p: float, N: int, alpha: float, beta: float) -> BoundReport:
    """Upper bound for weights vanishing above radius ``beta * n`` and ``N = 2^(alpha n)``."""
    c = _moment_constant(p)
    params = {"p": p, "N": N, "alpha": alpha, "beta": beta}
    if not _is_pow2(N):
        return BoundReport("jittered", params, None, False, f"N={N} is not a power of two")
    kappa = jitter_exponent(alpha, beta)
    params["kappa"] = kappa
    improves = alpha > 0.5 + beta
    return BoundReport(
        "jittered",
        params,
        c * N ** ((1.0 - kappa) / 2.0),
        improves=improves,
        notes=("improves the iid bound",) if improves else (),
    )


def bound_linf_general(n: int, N: int) -> BoundReport:
    params = {"n": n, "N": N}
    if N > 1 << (n - 1):
        return BoundReport("linf", params, None, False, f"N={N} exceeds 2^(n-1)")
    return BoundReport("linf", params, 8.0 * math.sqrt(1 + n) * math.sqrt(N))


def bound_linf_restricted(N: int, alpha: float, beta: float) -> BoundReport:
    params = {"N": N, "alpha": alpha, "beta": beta}
    if not _is_pow2(N):
        return BoundReport("linf-restricted", params, None, False, f"N={N} is not a power of two")
    kappa = jitter_exponent(alpha, beta)
    params["kappa"] = kappa
    value = 8.0 * math.sqrt(2.0 + math.log2(N) / alpha) * N ** ((1.0 - kappa) / 2.0)
    return BoundReport("linf-restricted", params, value, improves=alpha > 0.5 + beta)


def linf_from_lp(I: Iterable[int] | int, n: int, p: float, lp_value: float) -> float:
    """Turn ``D_p(G_I, Z)`` into an upper bound on ``D_inf(I, Z)``.

    ``I`` may be the radius set itself or its size.
    """
    if p < 1:
        raise ValueError(f"p must be at least 1, got {p}")
    size = I if isinstance(I, int) else len(set(I))
    return size ** (1.0 / p) * 2.0 ** (n / p) * lp_value


@dataclass(frozen=True)
class Band:
    lower: float
    upper: float
    shape_only: bool = True


def reference_quadratic_band(n: int, N: int, c: float = 1.0, C: float = 1.0) -> Band:
    """Two-sided growth curve for the extremal uniform-weight quadratic discrepancy.

    The constants are not known; the defaults only fix the shape.
    """
    if c <= 0 or C <= 0:
        raise ValueError("constants must be positive")
    lower = c * n**-0.75 * math.sqrt(N) * math.sqrt(max(0.0, 1.0 - N / 2.0**n))
    upper = C * n**-0.25 * math.sqrt(N)
    return Band(lower, upper)


def bound_for(which: str, **kw) -> BoundReport:
    """Dispatch used by the CLI's ``bounds eval``."""
    if which == "random":
        return bound_random(kw["p"], kw["N"], kw.get("n"))
    if which == "jittered":
        return bound_jittered(kw["p"], kw["N"], kw["alpha"], kw["beta"])
    if which == "linf":
        return bound_linf_general(kw["n"], kw["N"])
    if which == "linf-restricted":
        return bound_linf_restricted(kw["N"], kw["alpha"], kw["beta"])
    if which == "band":
        band = reference_quadratic_band(kw["n"], kw["N"], kw.get("c", 1.0), kw.get("C", 1.0))
        return BoundReport(
            "band",
            {"n": kw["n"], "N": kw["N"], "c": kw.get("c", 1.0), "C": kw.get("C", 1.0), "lower": band.lower},
            band.upper,
            notes=("shape only: constants unspecified",),
        )
    raise ValueError(f"unknown bound {which!r}")
