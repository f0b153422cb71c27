"""Exact combinatorics of Lagrangian petal projections.

A petal projection with ``n`` petals is determined by its height function
``h``: strand ``i`` is the ``h(i)``-th highest strand at the multi-crossing
(1 is topmost).  Strands are numbered in traversal order and petal ``p``
joins strand ``p`` to strand ``p + 1`` (petal ``n`` closes back to strand 1).

Everything in this module is integer arithmetic on immutable values.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    Empty,
    EvenPetalCount,
    IndexOutOfRange,
    NotBijection,
    NotStrictlyOrdered,
    TooSmall,
)

__all__ = [
    "PetalPermutation",
    "LagrangianPetalDiagram",
    "TBResult",
    "validate_permutation",
    "sign_sigma",
    "sigma_sum",
    "cyclic_ascents",
    "canonical_twists",
    "rotation_number",
    "thurston_bennequin",
    "canonical_rotation",
    "cyclic_shift",
    "lambda_family",
    "tb_upper_bound",
    "sigma_sum_bound",
    "stabilize",
]


@dataclass(frozen=True)
class PetalPermutation:
    heights: tuple[int, ...]

    def __post_init__(self):
        _check_heights(self.heights)

    @property
    def n(self) -> int:
        return len(self.heights)

    def h(self, i: int) -> int:
        """Height rank of strand ``i`` (1-based)."""
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(f"strand {i} not in 1..{self.n}")
        return self.heights[i - 1]

    def h_next(self, p: int) -> int:
        """Height of the strand following strand ``p`` cyclically."""
        return self.heights[p % self.n]

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.heights)


@dataclass(frozen=True)
class LagrangianPetalDiagram:
    """A petal permutation together with half-twist counts on each petal.

    ``twists[p - 1]`` is the number of half-twists on petal ``p``.
    """

    perm: PetalPermutation
    twists: tuple[int, ...]

    def __post_init__(self):
        if len(self.twists) != self.perm.n:
            raise IndexOutOfRange(
                f"expected {self.perm.n} twist counts, got {len(self.twists)}"
            )
        if any(t < 0 for t in self.twists):
            raise NotBijection("twist counts must be non-negative")
        if sum(self.twists) < 1:
            raise TooSmall("a Lagrangian petal projection has at least one half-twist")

    @property
    def n(self) -> int:
        return self.perm.n

    @property
    def k(self) -> int:
        return sum(self.twists)

    @property
    def standard(self) -> bool:
        return self.twists == _ascent_twists(self.perm)


@dataclass(frozen=True)
class TBResult:
    tb: int
    k: int
    sigma_sum: int


def _check_heights(values: Sequence[int]) -> None:
    n = len(values)
    if n == 0:
        raise Empty("empty permutation")
    if sorted(values) != list(range(1, n + 1)):
        raise NotBijection(f"{tuple(values)} is not a bijection on 1..{n}")
    if n % 2 == 0:
        raise EvenPetalCount(f"petal projections with n >= 2 petals need n odd, got {n}")


def validate_permutation(values: Iterable[int]) -> PetalPermutation:
    """Build a :class:`PetalPermutation` from heights listed in traversal order."""
    values = tuple(int(v) for v in values)
    return PetalPermutation(values)


def sign_sigma(perm: PetalPermutation, i: int, j: int) -> int:
    """Sign of the crossing between strands ``i < j`` once the multi-crossing is spread out."""
    n = perm.n
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexOutOfRange(f"({i}, {j}) outside 1..{n}")
    if i >= j:
        raise NotStrictlyOrdered(f"need i < j, got ({i}, {j})")
    i_above = perm.heights[i - 1] > perm.heights[j - 1]
    same_parity = (i + j) % 2 == 0
    return 1 if i_above == same_parity else -1


def sigma_sum(perm: PetalPermutation) -> int:
    hs = perm.heights
    n = len(hs)
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            # 0-based indices keep the parity of i + j
            total += 1 if (hs[i] > hs[j]) == ((i + j) % 2 == 0) else -1
    return total


def cyclic_ascents(perm: PetalPermutation) -> tuple[int, ...]:
    """Petals ``p`` with ``h(p) < h(p + 1)``, indices taken cyclically."""
    return tuple(p for p in range(1, perm.n + 1) if perm.h(p) < perm.h_next(p))


def _ascent_twists(perm: PetalPermutation) -> tuple[int, ...]:
    if perm.n == 1:
        # a single lobe must be balanced by a twisted lobe of equal area
        return (1,)
    ascents = set(cyclic_ascents(perm))
    return tuple(1 if p in ascents else 0 for p in range(1, perm.n + 1))


def canonical_twists(perm: PetalPermutation) -> LagrangianPetalDiagram:
    """Standard diagram with one half-twist on exactly the ascending petals."""
    return LagrangianPetalDiagram(perm, _ascent_twists(perm))


def rotation_number(diag: LagrangianPetalDiagram) -> int:
    return (diag.n + 1) // 2 - diag.k


def thurston_bennequin(diag: LagrangianPetalDiagram) -> TBResult:
    s = sigma_sum(diag.perm)
    return TBResult(tb=s - diag.k, k=diag.k, sigma_sum=s)


def cyclic_shift(perm: PetalPermutation, r: int) -> PetalPermutation:
    """Relabel strands so the new strand 1 is old strand ``r + 1``."""
    n = perm.n
    r %= n
    return PetalPermutation(perm.heights[r:] + perm.heights[:r])


def canonical_rotation(perm: PetalPermutation) -> PetalPermutation:
    return cyclic_shift(perm, perm.heights.index(1))


def lambda_family(n: int) -> PetalPermutation:
    """The interleaved family (1, (n+3)/2, 2, (n+5)/2, ..., (n-1)/2, n, (n+1)/2)."""
    if n % 2 == 0:
        raise EvenPetalCount(f"family is defined for odd n, got {n}")
    if n < 3:
        raise TooSmall(f"family starts at n = 3, got {n}")
    return PetalPermutation(
        tuple((i + 1) // 2 if i % 2 else (n + 1 + i) // 2 for i in range(1, n + 1))
    )


def tb_upper_bound(n: int) -> int:
    if n < 1 or n % 2 == 0:
        raise EvenPetalCount(f"bound is stated for odd n >= 1, got {n}")
    m = (n - 1) // 2
    return m * m - 1


def sigma_sum_bound(n: int) -> int:
    m = (n - 1) // 2
    return m * m


def stabilize(diag: LagrangianPetalDiagram, petal: int) -> LagrangianPetalDiagram:
    """Add one half-twist to ``petal``; tb and rot both drop by one."""
    if not 1 <= petal <= diag.n:
        raise IndexOutOfRange(f"petal {petal} not in 1..{diag.n}")
    twists = list(diag.twists)
    twists[petal - 1] += 1
    return LagrangianPetalDiagram(diag.perm, tuple(twists))
