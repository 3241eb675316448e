"""Words, codes and the metric structure of the binary Hamming space.

A word of length ``n`` is stored as a Python ``int`` whose bit ``i`` holds
coordinate ``i + 1``; the textual form lists coordinates left to right, so
``"100"`` is the integer 1.  Codes keep their points as a tuple of such ints,
which is what every numeric routine in the package consumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

# Sweeps over all 2^n centres or subsets.
EXHAUSTIVE_MAX_N = 30
# Constructions and closed-form evaluators.
MAX_N = 64


class DimensionError(ValueError):
    """Words or codes of incompatible or unsupported dimension."""


class InfeasibleError(ValueError):
    """Parameters outside what a routine can handle (size caps, budgets)."""


def _check_n(n: int, cap: int = MAX_N) -> None:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise DimensionError(f"dimension must be a positive integer, got {n!r}")
    if n > cap:
        raise DimensionError(f"dimension {n} exceeds cap {cap}")


def require_exhaustive(n: int) -> None:
    _check_n(n, EXHAUSTIVE_MAX_N)


@dataclass(frozen=True)
class Word:
    bits: int
    n: int

    def __post_init__(self):
        _check_n(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise DimensionError(f"bits {self.bits:#x} do not fit in {self.n} positions")

    @classmethod
    def from_str(cls, s: str) -> Word:
        s = s.strip()
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"not a binary word: {s!r}")
        return cls(parse_word(s), len(s))

    def __str__(self) -> str:
        return format_word(self.bits, self.n)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()


def parse_word(s: str) -> int:
    return sum(1 << i for i, c in enumerate(s) if c == "1")


def format_word(x: int, n: int) -> str:
    return "".join("1" if x >> i & 1 else "0" for i in range(n))


def full_mask(n: int) -> int:
    return (1 << n) - 1


def hamming_distance(x: Word, y: Word) -> int:
    if x.n != y.n:
        raise DimensionError(f"dimension mismatch: {x.n} vs {y.n}")
    return (x.bits ^ y.bits).bit_count()


def antipode(y: Word) -> Word:
    """Bitwise complement within the word's ``n`` positions."""
    return Word(y.bits ^ full_mask(y.n), y.n)


def ball_volume(n: int, t: int) -> int:
    """Number of words within distance ``t`` of a fixed centre.

    Zero for negative radii and ``2**n`` for radii beyond ``n``.
    """
    _check_n(n, cap=10**6)
    if t < 0:
        return 0
    if t >= n:
        return 1 << n
    return sum(math.comb(n, i) for i in range(t + 1))


def binary_entropy(lam: float) -> float:
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"entropy argument must lie in [0, 1], got {lam}")
    if lam in (0.0, 1.0):
        return 0.0
    return -lam * math.log2(lam) - (1.0 - lam) * math.log2(1.0 - lam)


def capped_entropy(lam: float) -> float:
    """Binary entropy on [0, 1/2], held at 1 above 1/2.

    This is the exponent governing ``v(lam * n) <= 2**(n * H(lam))``.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"entropy argument must lie in [0, 1], got {lam}")
    return 1.0 if lam > 0.5 else binary_entropy(lam)


def volume_exponent_bound(n: int, lam: float) -> float:
    return 2.0 ** (n * capped_entropy(lam))


def _sorted_unique(points: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(points)))


@dataclass(frozen=True)
class Code:
    """A nonempty set of distinct words of common length ``n``.

    ``points`` keeps insertion order; equality compares the underlying sets.
    """

    n: int
    points: tuple[int, ...]

    def __post_init__(self):
        _check_n(self.n)
        pts = tuple(int(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ValueError("a code needs at least one point")
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate words in code")
        top = 1 << self.n
        for p in pts:
            if p < 0 or p >= top:
                raise DimensionError(f"point {p} does not fit in {self.n} bits")

    @classmethod
    def from_words(cls, words: Iterable[Word | str]) -> Code:
        ws = [Word.from_str(w) if isinstance(w, str) else w for w in words]
        if not ws:
            raise ValueError("a code needs at least one point")
        n = ws[0].n
        if any(w.n != n for w in ws):
            raise DimensionError("words of mixed dimension")
        return cls(n, tuple(w.bits for w in ws))

    @classmethod
    def full_space(cls, n: int) -> Code:
        require_exhaustive(n)
        return cls(n, tuple(range(1 << n)))

    @property
    def N(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Word]:
        return (Word(p, self.n) for p in self.points)

    def __contains__(self, w: Word | int) -> bool:
        bits = w.bits if isinstance(w, Word) else w
        return bits in self.as_set()

    def __eq__(self, other):
        if not isinstance(other, Code):
            return NotImplemented
        return self.n == other.n and self.as_set() == other.as_set()

    def __hash__(self):
        return hash((self.n, self.as_set()))

    def as_set(self) -> frozenset[int]:
        return frozenset(self.points)

    def array(self) -> np.ndarray:
        return np.fromiter(self.points, dtype=np.uint64, count=len(self.points))

    def sorted(self) -> Code:
        return Code(self.n, _sorted_unique(self.points))

    def strings(self) -> list[str]:
        return [format_word(p, self.n) for p in self.points]

    def is_antipodal(self) -> bool:
        """True when the code is closed under taking antipodes."""
        s = self.as_set()
        mask = full_mask(self.n)
        return all(p ^ mask in s for p in self.points)

    def antipodal_split(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Split into the antipodally closed part and the remainder."""
        s = self.as_set()
        mask = full_mask(self.n)
        paired = tuple(p for p in self.points if p ^ mask in s)
        rest = tuple(p for p in self.points if p ^ mask not in s)
        return paired, rest


def complement_code(Z: Code) -> Code:
    require_exhaustive(Z.n)
    if Z.N >= 1 << Z.n:
        raise ValueError("the complement of the whole space is empty")
    s = Z.as_set()
    return Code(Z.n, tuple(x for x in range(1 << Z.n) if x not in s))


def ball(y: int, t: int, n: int) -> list[int]:
    """All words within distance ``t`` of ``y`` (brute force, small ``n``)."""
    require_exhaustive(n)
    return [x for x in range(1 << n) if (x ^ y).bit_count() <= t]


@lru_cache(maxsize=256)
def sphere_patterns(n: int, w: int) -> np.ndarray:
    """All weight-``w`` error patterns of length ``n`` as a read-only uint64 array."""
    if w < 0 or w > n:
        return np.zeros(0, dtype=np.uint64)
    out = np.empty(math.comb(n, w), dtype=np.uint64)
    # Gosper's hack walks the weight-w integers in increasing order.
    x = (1 << w) - 1
    limit = 1 << n
    i = 0
    while x < limit:
        out[i] = x
        i += 1
        if x == 0:
            break
        c = x & -x
        r = x + c
        x = (((r ^ x) >> 2) // c) | r
    out.flags.writeable = False
    return out


def popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a)


def read_code(path: str | Path) -> Code:
    """Parse the ``n=<dim>`` header plus one binary word per line."""
    lines = [ln.strip() for ln in Path(path).read_text(encoding="utf-8").splitlines()]
    lines = [ln for ln in lines if ln]
    return parse_code_text(lines)


def parse_code_text(lines: list[str]) -> Code:
    if not lines or not lines[0].startswith("n="):
        raise ValueError("code file must start with a line 'n=<dimension>'")
    n = int(lines[0][2:])
    _check_n(n)
    seen: set[str] = set()
    pts = []
    for ln in lines[1:]:
        if len(ln) != n or set(ln) - {"0", "1"}:
            raise ValueError(f"bad word line {ln!r} for n={n}")
        if ln in seen:
            raise ValueError(f"duplicate word {ln}")
        seen.add(ln)
        pts.append(parse_word(ln))
    return Code(n, tuple(pts))


def format_code(Z: Code) -> str:
    return "\n".join([f"n={Z.n}", *Z.strings()]) + "\n"


def write_code(Z: Code, path: str | Path) -> None:
    Path(path).write_text(format_code(Z), encoding="utf-8")

