"""Circular-string support: rotations, wrapped ranges, and unrolled queries.

A circular handle stores some linearization of its canonical string; the
1-based field `start` records which canonical position sits at stored
position 1 (canonical index i lives at stored position
((n + i - start) mod n) + 1).  Operations take canonical indices; a range
with i > j wraps around the seam.

Ranges are made physically contiguous before use: a canonical-linear range
whose stored image crosses the seam triggers a re-rotation to start 1, and a
wrapped range triggers a re-rotation that puts its first symbol at stored
position 1.  Rotations never change the canonical string.

"Unrolled" queries treat a string as its infinite self-concatenation.  By
the periodicity bound, two unrollings agreeing on their first
|s1| + |s2| - gcd(|s1|, |s2|) symbols agree forever, so every unrolled
comparison is capped at cap_length = |s1| + |s2|.
"""

from __future__ import annotations

import enum

from . import splaycore as sc
from .compare import LcpProbes, Order, ceil_pow_two_thirds, \
    exponential_search, order_of, squaring_upper_bound
from .errors import RangeError, UsageError
from .fingerprint import Fp


class OmegaLength(enum.Enum):
    """Marker for an unbounded common-prefix length."""

    INFINITE = "INFINITE"


INFINITE = OmegaLength.INFINITE


def _require_circular(s) -> int:
    if s.mode != "circular":
        raise UsageError(f"{s!r} is not circular")
    return s.tree.size


def _check_pos(s, i) -> None:
    n = s.tree.size
    if not 1 <= i <= n:
        raise RangeError(f"position {i} outside [1, {n}]")


def cap_length(s1, s2) -> int:
    """Probe cap for unrolled comparisons of the two strings."""
    return s1.tree.size + s2.tree.size


# ------------------------------------------------------- coordinate mapping

def stored_point(s, i: int) -> int:
    """Stored position of canonical index i."""
    _check_pos(s, i)
    return (i - s.start) % s.tree.size + 1


def insert_point(s, i: int, block: int = 1) -> tuple[int, int]:
    """(stored slot, new start) for inserting `block` symbols at index i."""
    n = s.tree.size
    if not 1 <= i <= n + 1:
        raise RangeError(f"insert position {i} outside [1, {n + 1}]")
    if n == 0:
        return 1, 1
    r = s.start
    q = i - r + 1 if i >= r else n + 1 + i - r
    if q == 1:
        new_start = i
    elif i < r:
        new_start = r + block
    else:
        new_start = r
    return q, new_start


def delete_point(s, i: int) -> tuple[int, int]:
    """(stored position, new start) for deleting the symbol at index i."""
    n = s.tree.size
    _check_pos(s, i)
    r = s.start
    q = i - r + 1 if i >= r else n + 1 + i - r
    if n == 1:
        new_start = 1
    elif i < r:
        new_start = r - 1
    elif i == r:
        new_start = r if r <= n - 1 else 1
    else:
        new_start = r
    return q, new_start


# ------------------------------------------------------------- re-rotation

def _tree_rotate(forest, s, q: int) -> None:
    """Make stored position q the new stored front (split + swapped join)."""
    if q == 1:
        return
    left, right = sc.split(s.tree, q - 1, forest.cfg, forest.stats)
    s.tree.root = sc.join(right, left, forest.cfg, forest.stats)


def rotate(forest, s, i: int) -> None:
    """Public rotation: the stored string becomes stored[i..] stored[..i-1].

    The canonical string is unchanged; only the internal linearization and
    the start offset move.
    """
    n = _require_circular(s)
    if not 1 <= i <= n:
        raise RangeError(f"rotation point {i} outside [1, {n}]")
    new_start = (s.start - 1 + i - 1) % n + 1
    _tree_rotate(forest, s, i)
    s.start = new_start


def rotate_to_front(forest, s, target: int) -> None:
    """Re-rotate so canonical index `target` sits at stored position 1."""
    n = s.tree.size
    if n == 0:
        s.start = 1
        return
    q = (target - s.start) % n + 1
    _tree_rotate(forest, s, q)
    s.start = target


# ------------------------------------------------------------ range guard

def resolve_range(forest, s, i: int, j: int) -> tuple[int, int]:
    """Stored endpoints of the canonical range i..j, re-rotating if needed.

    i > j denotes the wrapped range through the seam (never empty); its
    length is n - i + 1 + j.
    """
    n = s.tree.size
    _check_pos(s, i)
    _check_pos(s, j)
    if i <= j:
        length = j - i + 1
        a = (i - s.start) % n + 1
        if a + length - 1 <= n:
            return a, a + length - 1
        rotate_to_front(forest, s, 1)
        return i, j
    length = n - i + 1 + j
    rotate_to_front(forest, s, i)
    return 1, length


def extract_range(forest, s, i: int, j: int) -> tuple[int, int, int]:
    """Stored endpoints plus the remainder's new start for an extraction.

    The string is first re-rotated so the range begins at stored position 1;
    the remainder keeps canonical order, restarting at 1 when the extracted
    range wrapped or reached the canonical end.
    """
    n = s.tree.size
    _check_pos(s, i)
    _check_pos(s, j)
    length = j - i + 1 if i <= j else n - i + 1 + j
    rotate_to_front(forest, s, i)
    remainder = n - length
    new_start = i if (i <= j and i <= remainder) else 1
    return 1, length, new_start


# -------------------------------------------------- wrapped fingerprints

def circular_fp(forest, s, i: int, j: int) -> Fp:
    """Fingerprint of stored[i..] stored[..j] without physical rotation.

    Either part may be empty (i = n+1, or j = 0).  Positions are stored
    coordinates; used for seam-crossing probes where re-rotating each time
    would be wasteful.
    """
    n = _require_circular(s)
    if n == 0:
        raise RangeError("empty string has no wrapped ranges")
    if not (1 <= i <= n + 1 and 0 <= j <= n and j < i):
        raise RangeError(f"wrapped range ({i}, {j}) invalid for size {n}")
    p = forest.cfg.modulus
    if i <= n:
        f_head, p_head = forest._tree_range_fp_power(s.tree, i, n)
    else:
        f_head, p_head = 0, 1
    if j >= 1:
        f_tail, p_tail = forest._tree_range_fp_power(s.tree, 1, j)
    else:
        f_tail, p_tail = 0, 1
    return Fp((f_head * p_tail + f_tail) % p,
              p_head * p_tail % p,
              (n - i + 1) + j)


def _slice_fp(forest, s, q: int, length: int) -> tuple[int, int]:
    """(fingerprint, power) of the stored circular slice [q, q+length)."""
    if length == 0:
        return 0, 1
    n = s.tree.size
    if q + length - 1 <= n:
        return forest._tree_range_fp_power(s.tree, q, q + length - 1)
    p = forest.cfg.modulus
    f_head, p_head = forest._tree_range_fp_power(s.tree, q, n)
    f_tail, p_tail = forest._tree_range_fp_power(
        s.tree, 1, length - (n - q + 1))
    return (f_head * p_tail + f_tail) % p, p_head * p_tail % p


def _omega_fp_spliced(forest, s, i: int, length: int) -> int:
    """Fingerprint of the unrolled string from canonical i, via seam splices.

    Never moves the rotation, so it is safe when both probe targets live in
    the same tree.
    """
    n = s.tree.size
    q = (i - s.start) % n + 1
    copies, part = divmod(length, n)
    part_fp, part_power = _slice_fp(forest, s, q, part)
    if copies == 0:
        return part_fp
    turn_fp, turn_power = _slice_fp(forest, s, q, n)
    p = forest.cfg.modulus
    geo = forest.ctx.geomsum(turn_power, copies - 1)
    return (turn_fp * geo % p * part_power + part_fp) % p


def _omega_fp_rotated(forest, s, i: int, length: int) -> int:
    """Fingerprint of the unrolled string from canonical i, via rotation.

    Rotates the conjugate beginning at i to the stored front, reads whole-
    tree aggregates, then rotates back.
    """
    old_start = s.start
    rotate_to_front(forest, s, i)
    root = s.tree.root
    sc.fix(root, forest.cfg.fmap, forest.stats)
    n = root.size
    copies, part = divmod(length, n)
    turn_fp = root.fp
    turn_power = root.power
    if part:
        part_fp, part_power = forest._tree_range_fp_power(s.tree, 1, part)
    else:
        part_fp, part_power = 0, 1
    p = forest.cfg.modulus
    if copies == 0:
        out = part_fp
    else:
        geo = forest.ctx.geomsum(turn_power, copies - 1)
        out = (turn_fp * geo % p * part_power + part_fp) % p
    rotate_to_front(forest, s, old_start)
    return out


def _omega_fp(forest, s, i, length, same_pair: bool) -> int:
    if same_pair:
        return _omega_fp_spliced(forest, s, i, length)
    return _omega_fp_rotated(forest, s, i, length)


# ------------------------------------------------------- unrolled queries

def equal_omega(forest, s1, i1: int, s2, i2: int, l: int) -> bool:
    """Whether the unrolled strings agree on their first l symbols (whp).

    l is capped at |s1| + |s2|: agreement that far implies agreement forever.
    """
    _require_circular(s1)
    _require_circular(s2)
    _check_pos(s1, i1)
    _check_pos(s2, i2)
    if l < 0:
        raise RangeError("negative length")
    if l == 0:
        return True
    l = min(l, cap_length(s1, s2))
    same = s1 is s2
    k1 = _omega_fp(forest, s1, i1, l, same)
    k2 = _omega_fp(forest, s2, i2, l, same)
    forest.stats.equal_tests += 1
    return k1 == k2


def equal_omega_omega(forest, s1, i1: int, l1: int,
                      s2, i2: int, l2: int) -> bool:
    """Whether the unrollings of two unrolled substrings coincide (whp).

    Reduces to comparing the l2-fold copy of one window against the l1-fold
    copy of the other, all in fingerprint space.
    """
    _require_circular(s1)
    _require_circular(s2)
    _check_pos(s1, i1)
    _check_pos(s2, i2)
    if l1 < 1 or l2 < 1:
        raise RangeError("window lengths must be at least 1")
    same = s1 is s2
    k1 = _omega_fp(forest, s1, i1, l1, same)
    k2 = _omega_fp(forest, s2, i2, l2, same)
    ctx = forest.ctx
    p = ctx.modulus
    d1 = pow(ctx.base, l1, p)
    d2 = pow(ctx.base, l2, p)
    forest.stats.equal_tests += 1
    return k1 * ctx.geomsum(d1, l2 - 1) % p \
        == k2 * ctx.geomsum(d2, l1 - 1) % p


def _omega_symbol(forest, s, i: int, t: int) -> int:
    """t-th symbol (1-based) of the unrolled string starting at canonical i."""
    n = s.tree.size
    return forest.access(s, (i + t - 2) % n + 1)


class _OmegaSide:
    """One probe target for the unrolled suffix search.

    Extracts a working window when the probe range is one physical tree
    range (distinct handles, window within one stored span); otherwise
    probes the original string through seam splices.
    """

    def __init__(self, forest, s, i: int, size: int, allow_extract: bool):
        self.forest = forest
        self.s = s
        self.i = i
        n = s.tree.size
        self.window = None
        if allow_extract and size <= n:
            a = (i - s.start) % n + 1
            if a + size - 1 <= n:
                self.stored_at = a
                self.window = forest._extract_window(s.tree, a, a + size - 1)

    def prefix_fp(self, t: int) -> int:
        if self.window is not None:
            return self.forest._tree_range_fp(self.window, 1, t)
        return _omega_fp_spliced(self.forest, self.s, self.i, t)

    def put_back(self) -> None:
        if self.window is not None:
            self.forest._reintroduce_window(self.s.tree, self.stored_at,
                                            self.window)
            self.window = None


def lcp_omega(forest, s1, i1: int, s2, i2: int):
    """Longest common prefix of two unrolled strings, plus their order.

    Returns (INFINITE, EQUAL) when the unrollings coincide; otherwise the
    finite length (strictly below |s1| + |s2|) and the strict order.
    """
    _require_circular(s1)
    _require_circular(s2)
    _check_pos(s1, i1)
    _check_pos(s2, i2)
    if s1 is s2 and i1 == i2:
        return INFINITE, Order.EQUAL
    cap = cap_length(s1, s2)
    rec = LcpProbes()
    forest.stats.lcp_calls += 1
    forest.stats.last_lcp = rec
    same = s1 is s2

    def eq_at(t):
        return _omega_fp_spliced(forest, s1, i1, t) \
            == _omega_fp_spliced(forest, s2, i2, t)

    rec.border += 1
    if eq_at(cap):
        return INFINITE, Order.EQUAL
    two_equal = False
    if cap > 2:
        rec.border += 1
        two_equal = eq_at(2)
    if not two_equal:
        a = _omega_symbol(forest, s1, i1, 1)
        b = _omega_symbol(forest, s2, i2, 1)
        if a != b:
            result = 0, order_of(a, b)
        else:
            result = 1, order_of(_omega_symbol(forest, s1, i1, 2),
                                 _omega_symbol(forest, s2, i2, 2))
        forest.stats.lcp_squaring_probes += rec.squaring
        return result

    mid_scale = 1 << ceil_pow_two_thirds(cap)
    if mid_scale >= cap:
        mid_scale = cap
        mid_equal = False
    else:
        rec.threshold += 1
        mid_equal = eq_at(mid_scale)
    if mid_equal:
        upper = squaring_upper_bound(eq_at, cap, rec)
    else:
        sides = _make_sides(forest, s1, i1, s2, i2, mid_scale, same)
        upper = squaring_upper_bound(
            lambda t: sides[0].prefix_fp(t) == sides[1].prefix_fp(t),
            mid_scale, rec)
        for side in sides:
            side.put_back()

    sides = _make_sides(forest, s1, i1, s2, i2, upper, same)
    length = exponential_search(
        lambda t: sides[0].prefix_fp(t) == sides[1].prefix_fp(t), upper, rec)
    for side in sides:
        side.put_back()

    forest.stats.lcp_squaring_probes += rec.squaring
    a = _omega_symbol(forest, s1, i1, length + 1)
    b = _omega_symbol(forest, s2, i2, length + 1)
    return length, order_of(a, b)


def _make_sides(forest, s1, i1, s2, i2, size, same):
    allow = not same
    return (_OmegaSide(forest, s1, i1, size, allow),
            _OmegaSide(forest, s2, i2, size, allow))
