"""Comparison results and probe-sequence helpers shared by suffix searches."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class Order(enum.Enum):
    """Lexicographic relation between two suffixes."""

    LESS = "LESS"
    EQUAL = "EQUAL"
    GREATER = "GREATER"

    def flipped(self) -> "Order":
        if self is Order.LESS:
            return Order.GREATER
        if self is Order.GREATER:
            return Order.LESS
        return Order.EQUAL


def order_of(a: int, b: int) -> Order:
    if a < b:
        return Order.LESS
    if a > b:
        return Order.GREATER
    return Order.EQUAL


@dataclass
class LcpProbes:
    """Per-call probe counts for one longest-common-prefix computation."""

    border: int = 0     # full-overlap and two-symbol screening probes
    threshold: int = 0  # the single mid-scale screening probe
    squaring: int = 0   # repeated-squaring upper-bound probes
    search: int = 0     # exponential + binary search probes

    @property
    def total(self) -> int:
        return self.border + self.threshold + self.squaring + self.search


def ceil_pow_two_thirds(n: int) -> int:
    """ceil((log2 n)^(2/3)), at least 1; exponent of the mid-scale probe."""
    if n < 2:
        return 1
    return max(1, math.ceil(math.log2(n) ** (2.0 / 3.0)))


def squaring_upper_bound(eq_at, cap: int, rec: LcpProbes) -> int:
    """First length of the squaring sequence (2, 4, 16, ...) that mismatches.

    eq_at(cap) must be False, which guarantees termination; the result is a
    certified upper bound on the match length because a mismatch verdict is
    never wrong.
    """
    length = 2
    while True:
        length = min(cap, length * length)
        rec.squaring += 1
        if not eq_at(length) or length == cap:
            return length


def exponential_search(eq_at, known_neq: int, rec: LcpProbes) -> int:
    """Largest t with eq_at(t), given eq_at(2) holds and eq_at(known_neq) not."""
    lo = 2
    hi = known_neq
    t = 4
    while t < hi:
        rec.search += 1
        if eq_at(t):
            lo = t
            t *= 2
        else:
            hi = t
            break
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        rec.search += 1
        if eq_at(mid):
            lo = mid
        else:
            hi = mid
    return lo
