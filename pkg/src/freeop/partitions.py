"""Integer partitions with stabilizer and orbit-size arithmetic.

All counts are exact Python integers; nothing here ever touches floats.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.parts:
            raise ValueError("partition must have at least one part")
        if any(p < 1 for p in self.parts):
            raise ValueError(f"parts must be positive: {self.parts}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {self.parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def m(self) -> int:
        return len(self.parts)

    def multiplicities(self) -> dict[int, int]:
        """Map part value -> how many times it occurs."""
        return dict(Counter(self.parts))

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def partitions(n: int, min_parts: int = 1) -> list[Partition]:
    """All partitions of n with at least min_parts parts.

    Emitted in decreasing lexicographic order, e.g. for (5, 2):
    (4,1), (3,2), (3,1,1), (2,2,1), (2,1,1,1), (1,1,1,1,1).
    """
    if min_parts < 1:
        raise ValueError("min_parts must be >= 1")
    if n < 1:
        return []
    out: list[Partition] = []

    def rec(remaining: int, largest: int, prefix: list[int]) -> None:
        if remaining == 0:
            if len(prefix) >= min_parts:
                out.append(Partition(tuple(prefix)))
            return
        for p in range(min(largest, remaining), 0, -1):
            prefix.append(p)
            rec(remaining - p, p, prefix)
            prefix.pop()

    rec(n, n, [])
    return out


def stabilizer_order(p: Partition) -> int:
    """Order of the subgroup of S_m permuting equal parts among themselves."""
    order = 1
    for mult in p.multiplicities().values():
        order *= math.factorial(mult)
    return order


def orbit_count(p: Partition) -> int:
    """n! / (n_1! ... n_m! * stabilizer_order), always an exact integer.

    This is the number of set partitions of an n-set whose block-size
    profile is p.
    """
    denom = stabilizer_order(p)
    for part in p.parts:
        denom *= math.factorial(part)
    num = math.factorial(p.n)
    q, r = divmod(num, denom)
    if r:
        raise ArithmeticError(f"orbit count for {p} is not integral (bug)")
    return q
