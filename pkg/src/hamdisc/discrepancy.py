"""Ball discrepancies of codes, distance spectra and the invariance identities.

Local discrepancies are handled in the integer form ``2^n * D(Z, y, t) =
2^n |B(y, t) & Z| - N v(t)`` so that every power sum with an integer
exponent is exact.  Occupancy counts for all centres are built shell by
shell: each code point scatters one increment to every centre at distance
``w``, which costs ``N * C(n, w)`` per shell rather than ``N * 2^n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .hamming import Code, DimensionError, ball_volume, popcount, require_exhaustive, sphere_patterns
from .kernels import ball_intersection_expansion, ball_intersection_table, distance_kernel, krawtchouk_table

_CHUNK = 1 << 22


# --------------------------------------------------------------------------
# weights and radius sets


@dataclass(frozen=True)
class WeightVector:
    """Nonnegative radius weights ``g_0 .. g_{n-1}`` summing exactly to one."""

    n: int
    g: tuple[Fraction, ...]

    def __post_init__(self):
        g = tuple(Fraction(x) for x in self.g)
        object.__setattr__(self, "g", g)
        if len(g) != self.n:
            raise ValueError(f"need {self.n} weights, got {len(g)}")
        if any(x < 0 for x in g):
            raise ValueError("weights must be nonnegative")
        if sum(g) != 1:
            raise ValueError(f"weights sum to {sum(g)}, not 1")

    @classmethod
    def uniform(cls, n: int) -> WeightVector:
        return cls(n, (Fraction(1, n),) * n)

    @classmethod
    def single(cls, n: int, t: int) -> WeightVector:
        if not 0 <= t < n:
            raise ValueError(f"radius {t} outside 0..{n - 1}")
        return cls(n, tuple(Fraction(int(s == t)) for s in range(n)))

    @classmethod
    def hemisphere(cls, n: int) -> WeightVector:
        if n % 2 == 0:
            raise DimensionError("hemispheres need odd n")
        return cls.single(n, (n - 1) // 2)

    @classmethod
    def on_radii(cls, n: int, radii: Iterable[int]) -> WeightVector:
        I = radius_set(n, radii)
        return cls(n, tuple(Fraction(int(t in I), len(I)) for t in range(n)))

    @classmethod
    def cutoff(cls, n: int, beta) -> WeightVector:
        """Uniform weights on the radii ``t <= beta * n``."""
        beta = Fraction(beta)
        if beta < 0:
            raise ValueError(f"cutoff {beta} must be nonnegative")
        return cls.on_radii(n, range(min(math.floor(beta * n), n - 1) + 1))

    @classmethod
    def from_file(cls, path: str | Path, n: int) -> WeightVector:
        tokens = Path(path).read_text(encoding="utf-8").split()
        return cls(n, tuple(Fraction(tok) for tok in tokens))

    @classmethod
    def parse(cls, spec: str, n: int) -> WeightVector:
        """``uniform``, ``hemisphere``, ``cutoff:BETA``, ``radii:0,1,..`` or ``file:PATH``."""
        kind, _, arg = spec.partition(":")
        if kind == "uniform":
            return cls.uniform(n)
        if kind == "hemisphere":
            return cls.hemisphere(n)
        if kind == "cutoff":
            return cls.cutoff(n, Fraction(arg))
        if kind == "radii":
            return cls.on_radii(n, parse_radii(arg, n))
        if kind == "file":
            return cls.from_file(arg, n)
        raise ValueError(f"unknown weight spec {spec!r}")

    def support(self) -> list[int]:
        return [t for t, x in enumerate(self.g) if x]


def radius_set(n: int, radii: Iterable[int]) -> tuple[int, ...]:
    I = tuple(sorted(set(int(t) for t in radii)))
    if not I:
        raise ValueError("radius set must be nonempty")
    if I[0] < 0 or I[-1] > n - 1:
        raise ValueError(f"radii must lie in 0..{n - 1}")
    return I


def parse_radii(text: str, n: int) -> tuple[int, ...]:
    if text in ("", "all"):
        return tuple(range(n))
    out: list[int] = []
    for part in text.split(","):
        lo, dash, hi = part.partition("-")
        out.extend(range(int(lo), int(hi) + 1) if dash else [int(lo)])
    return radius_set(n, out)


def fold_weights(G: WeightVector) -> WeightVector:
    """Move the weight of radius ``n-1-t`` onto ``t`` for ``t <= (n-1)//2``.

    Balls of radius ``t`` and ``n-1-t`` around antipodal centres are
    complementary, so the folded vector gives the same discrepancy.
    """
    n = G.n
    g = [Fraction(0)] * n
    for t in range((n - 1) // 2 + 1):
        u = n - 1 - t
        g[t] = G.g[t] + (G.g[u] if u != t else 0)
    return WeightVector(n, tuple(g))


# --------------------------------------------------------------------------
# occupancy counts


def ball_counts(Z: Code, radii: Sequence[int]) -> np.ndarray:
    """``out[i, y] = |B(y, radii[i]) & Z|`` for every centre ``y``."""
    n = Z.n
    require_exhaustive(n)
    size = 1 << n
    radii = [int(t) for t in radii]
    out = np.zeros((len(radii), size), dtype=np.int64)
    inner = [t for t in radii if 0 <= t < n]
    if inner:
        top = max(inner)
        pts = Z.array()
        running = np.zeros(size, dtype=np.int64)
        wanted = {}
        for i, t in enumerate(radii):
            wanted.setdefault(t, []).append(i)
        for w in range(top + 1):
            running += _shell_counts(pts, n, w)
            for i in wanted.get(w, ()):
                out[i] = running
    for i, t in enumerate(radii):
        if t >= n:
            out[i] = Z.N
    return out


def _shell_counts(pts: np.ndarray, n: int, w: int) -> np.ndarray:
    E = sphere_patterns(n, w)
    size = 1 << n
    acc = np.zeros(size, dtype=np.int64)
    step = max(1, _CHUNK // len(E))
    for lo in range(0, len(pts), step):
        idx = (pts[lo : lo + step, None] ^ E[None, :]).ravel()
        acc += np.bincount(idx.astype(np.int64), minlength=size)
    return acc


def scaled_local(counts: np.ndarray, n: int, N: int, t: int) -> np.ndarray:
    """``2^n * D(Z, y, t)`` as int64 from occupancy counts at radius ``t``."""
    return counts.astype(np.int64) * (1 << n) - N * ball_volume(n, t)


def local_discrepancy(Z: Code, y, t: int) -> Fraction:
    """``|B(y, t) & Z| - N 2^{-n} v(t)``, exact."""
    yb = getattr(y, "bits", y)
    yn = getattr(y, "n", Z.n)
    if yn != Z.n:
        raise DimensionError(f"centre has dimension {yn}, code has {Z.n}")
    inside = sum(1 for z in Z.points if (z ^ yb).bit_count() <= t)
    return inside - Fraction(Z.N * ball_volume(Z.n, t), 1 << Z.n)


# --------------------------------------------------------------------------
# power sums


def _integral_exponent(p) -> int | None:
    if isinstance(p, (int, np.integer)):
        return int(p)
    if isinstance(p, Rational):
        return int(p) if p.denominator == 1 else None
    if isinstance(p, float) and p.is_integer():
        return int(p)
    return None


def _check_p(p) -> None:
    if isinstance(p, float) and not math.isfinite(p):
        raise ValueError("p must be finite; use the L-infinity routines for p = inf")
    if p <= 0:
        raise ValueError(f"p must be positive, got {p}")


def _mean_abs_power(scaled: np.ndarray, n: int, p) -> Fraction | float:
    """``2^{-n} sum_y |scaled_y / 2^n|^p``; exact when ``p`` is an integer."""
    vals, cnts = np.unique(np.abs(scaled), return_counts=True)
    k = _integral_exponent(p)
    if k is not None:
        total = sum(int(c) * int(v) ** k for v, c in zip(vals, cnts))
        return Fraction(total, 1 << (n * k + n))
    return float(np.sum(cnts * (vals / float(1 << n)) ** float(p))) / float(1 << n)


def lp_power_from_counts(G: WeightVector, counts: np.ndarray, radii: Sequence[int], N: int, p):
    n = G.n
    exact = _integral_exponent(p) is not None
    total = Fraction(0) if exact else 0.0
    for row, t in zip(counts, radii):
        gt = G.g[t]
        if gt:
            term = _mean_abs_power(scaled_local(row, n, N, t), n, p)
            total += gt * term if exact else float(gt) * term
    return total


def lp_power(G: WeightVector, Z: Code, p) -> Fraction | float:
    """``D_p(G, Z)^p``; a ``Fraction`` for integer ``p``, else a float."""
    _check_p(p)
    if G.n != Z.n:
        raise DimensionError(f"weights for n={G.n}, code has n={Z.n}")
    radii = G.support()
    return lp_power_from_counts(G, ball_counts(Z, radii), radii, Z.N, p)


def root(power, p) -> float:
    return float(power) ** (1.0 / float(p))


def lp_discrepancy(G: WeightVector, Z: Code, p) -> float:
    return root(lp_power(G, Z, p), p)


def linf_from_counts(counts: np.ndarray, radii: Sequence[int], n: int, N: int) -> Fraction:
    best = 0
    for row, t in zip(counts, radii):
        best = max(best, int(np.abs(scaled_local(row, n, N, t)).max()))
    return Fraction(best, 1 << n)


def linf_discrepancy(I: Iterable[int], Z: Code) -> Fraction:
    radii = radius_set(Z.n, I)
    return linf_from_counts(ball_counts(Z, radii), radii, Z.n, Z.N)


def exact_root(q: Fraction, p: int) -> Fraction | None:
    """The rational ``p``-th root of ``q >= 0`` when one exists."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative argument")
    rn, rd = _int_root(q.numerator, p), _int_root(q.denominator, p)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _int_root(a: int, p: int) -> int | None:
    if a < 2:
        return a
    x = 1 << -(-a.bit_length() // p)
    while True:
        y = ((p - 1) * x + a // x ** (p - 1)) // p
        if y >= x:
            break
        x = y
    return x if x**p == a else None


# --------------------------------------------------------------------------
# hemispheres


def _check_odd(n: int) -> int:
    if n % 2 == 0:
        raise DimensionError(f"hemisphere discrepancy needs odd n, got {n}")
    return (n - 1) // 2


def doubled_hemisphere_local(Z: Code) -> np.ndarray:
    """``2 D(Z, y, m) = 2 |B(y, m) & Z| - N`` for every centre ``y``."""
    m = _check_odd(Z.n)
    return 2 * ball_counts(Z, [m])[0] - Z.N


def hemisphere_power(Z: Code, p) -> Fraction | float:
    m = _check_odd(Z.n)
    return lp_power(WeightVector.single(Z.n, m), Z, p)


def hemisphere_linf(Z: Code) -> Fraction:
    return Fraction(int(np.abs(doubled_hemisphere_local(Z)).max()), 2)


def hemisphere_discrepancy(Z: Code, p) -> float:
    """Hemisphere ``L_p`` discrepancy; ``p`` may be ``math.inf``."""
    if p == math.inf:
        return float(hemisphere_linf(Z))
    return root(hemisphere_power(Z, p), p)


# --------------------------------------------------------------------------
# spectra


@dataclass(frozen=True)
class Spectrum:
    n: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != self.n + 1:
            raise ValueError(f"spectrum for n={self.n} needs {self.n + 1} entries")

    def __getitem__(self, w: int) -> Fraction:
        return self.values[w]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def is_symmetric(self) -> bool:
        return all(self.values[w] == self.values[self.n - w] for w in range(self.n + 1))


def pair_distance_counts(Z: Code) -> list[int]:
    """Number of ordered pairs of code points at each distance 0..n."""
    pts = Z.array()
    counts = np.zeros(Z.n + 1, dtype=np.int64)
    step = max(1, _CHUNK // len(pts))
    for lo in range(0, len(pts), step):
        d = popcount(pts[lo : lo + step, None] ^ pts[None, :]).ravel()
        counts += np.bincount(d.astype(np.int64), minlength=Z.n + 1)
    return [int(c) for c in counts]


def distance_distribution(Z: Code) -> Spectrum:
    return Spectrum(Z.n, tuple(Fraction(c, Z.N) for c in pair_distance_counts(Z)))


def macwilliams_transform(A: Spectrum, N: int) -> Spectrum:
    if N <= 0:
        raise ValueError("N must be positive")
    K = krawtchouk_table(A.n)
    return Spectrum(
        A.n,
        tuple(sum((A[w] * K[i, w] for w in range(A.n + 1)), Fraction(0)) / N for i in range(A.n + 1)),
    )


def macwilliams_inverse(dual: Spectrum, N: int) -> Spectrum:
    if N <= 0:
        raise ValueError("N must be positive")
    K = krawtchouk_table(dual.n)
    scale = Fraction(N, 1 << dual.n)
    return Spectrum(
        dual.n,
        tuple(scale * sum((dual[w] * K[i, w] for w in range(dual.n + 1)), Fraction(0)) for i in range(dual.n + 1)),
    )


# --------------------------------------------------------------------------
# invariance identities


@dataclass(frozen=True)
class UniformIdentity:
    lhs: Fraction
    rhs: Fraction

    @property
    def residual(self) -> Fraction:
        return self.lhs - self.rhs

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def stolarsky_uniform(Z: Code) -> UniformIdentity:
    """Both sides of the quadratic invariance identity for uniform weights.

    ``lhs = 2^n n D_2(G_1, Z)^2`` is summed over every centre and radius;
    ``rhs`` is the closed form minus the pair-kernel energy of ``Z``.
    """
    n, N = Z.n, Z.N
    lhs = n * (1 << n) * lp_power(WeightVector.uniform(n), Z, 2)
    energy = sum(c * distance_kernel(n, w) for w, c in enumerate(pair_distance_counts(Z)))
    rhs = Fraction(n * N * N * math.comb(2 * n, n), 1 << (n + 1)) - energy
    return UniformIdentity(lhs, rhs)


@dataclass(frozen=True)
class HemisphereIdentity:
    lhs: Fraction
    rhs_kernel: Fraction
    rhs_dual: Fraction
    kernel_mean_gap: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs_kernel == self.rhs_dual == self.kernel_mean_gap

    @property
    def residual(self) -> Fraction:
        return max(abs(self.lhs - r) for r in (self.rhs_kernel, self.rhs_dual, self.kernel_mean_gap))


def stolarsky_hemisphere(Z: Code) -> HemisphereIdentity:
    """Evaluate ``2^n N^-2 D_2(Z)^2`` for hemispheres four independent ways."""
    n, N = Z.n, Z.N
    m = _check_odd(n)
    doubled = doubled_hemisphere_local(Z)
    lhs = Fraction(int(np.sum(doubled.astype(object) ** 2)), 4 * N * N)

    A = distance_distribution(Z)
    mu = ball_intersection_table(m)
    code_mean = sum((A[w] * mu[w] for w in range(n + 1)), Fraction(0)) / N
    rhs_kernel = code_mean - Fraction(2) ** (n - 2)

    dual = macwilliams_transform(A, N)
    expansion = ball_intersection_expansion(m)
    rhs_dual = sum((expansion.coeff(k) * dual[k] for k in range(1, n + 1, 2)), Fraction(0))

    space_mean = Fraction(sum(math.comb(n, w) * mu[w] for w in range(n + 1)), 1 << n)
    return HemisphereIdentity(lhs, rhs_kernel, rhs_dual, code_mean - space_mean)
