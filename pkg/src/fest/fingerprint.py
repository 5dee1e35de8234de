"""Rolling-hash arithmetic over a prime field.

A string s[1..n] is summarized by the residue
(s[1]*b^(n-1) + s[2]*b^(n-2) + ... + s[n]) mod p for a random base b.
Values are carried around as `Fp` triples (residue, b^n mod p, n) so that
two summaries compose in constant time without modular exponentiation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import DomainError, UsageError

#: 2^61 - 1, a Mersenne prime.  Large enough that 61x61-bit products fit in
#: native Python ints cheaply, and far above any desk-scale collection size.
DEFAULT_MODULUS = (1 << 61) - 1


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 2^64."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Fp:
    """Fingerprint of a concrete string: residue, base power, and length.

    Invariant: power == b^length mod p.
    """

    fp: int
    power: int
    length: int


EMPTY_FP = Fp(fp=0, power=1, length=0)


class FingerprintContext:
    """Owns the modulus and the random base; all residue math flows through it.

    Immutable after construction and freely shareable between threads.  The
    seed is recorded so failing runs can be replayed with the same base.
    """

    __slots__ = ("modulus", "base", "seed")

    def __init__(self, seed: int = 0, modulus: int = DEFAULT_MODULUS,
                 base: int | None = None):
        if not _is_prime(modulus):
            raise UsageError(f"modulus {modulus} is not prime")
        if base is None:
            base = random.Random(seed).randrange(1, modulus)
        if not 1 <= base <= modulus - 1:
            raise UsageError(f"base {base} outside [1, {modulus - 1}]")
        self.modulus = modulus
        self.base = base
        self.seed = seed

    def __repr__(self):
        return (f"FingerprintContext(seed={self.seed}, "
                f"modulus={self.modulus}, base={self.base})")

    def eval(self, symbols) -> Fp:
        """Fingerprint a concrete symbol sequence by Horner evaluation."""
        p = self.modulus
        b = self.base
        acc = 0
        n = 0
        for c in symbols:
            if not 0 <= c < p:
                raise DomainError(f"symbol {c} outside [0, {p})")
            acc = (acc * b + c) % p
            n += 1
        return Fp(acc, pow(b, n, p), n)

    def concat(self, left: Fp, right: Fp) -> Fp:
        """Fingerprint of the concatenation, from the parts' fingerprints."""
        p = self.modulus
        return Fp((left.fp * right.power + right.fp) % p,
                  left.power * right.power % p,
                  left.length + right.length)

    def geomsum(self, d: int, k: int) -> int:
        """(d^k + d^(k-1) + ... + 1) mod p in O(log k) multiplications.

        Uses the doubling recurrence rather than the closed form, which would
        need a modular inverse.
        """
        if k < 0:
            raise UsageError("geomsum needs k >= 0")
        p = self.modulus
        d %= p
        acc = 1        # multiplier accumulated from odd steps
        tail = 0       # sum accumulated from even steps, scaled by acc
        # geomsum(d, 2k+1) = (d+1) * geomsum(d^2, k)
        # geomsum(d, 2k)   = d * geomsum(d, 2k-1) + 1
        while k > 0:
            if k % 2:
                acc = acc * (d + 1) % p
                d = d * d % p
                k //= 2
            else:
                tail = (tail + acc) % p
                # d here is the current level's ratio; absorb one term
                acc = acc * d % p
                k -= 1
        return (acc + tail) % p

    def power_fp(self, base_fp: Fp, k: int) -> Fp:
        """Fingerprint of the k-fold self-concatenation of a string.

        k = 0 yields the empty fingerprint (extension beyond the k >= 1 core).
        """
        if k < 0:
            raise UsageError("power_fp needs k >= 0")
        if k == 0:
            return EMPTY_FP
        p = self.modulus
        d = base_fp.power
        return Fp(base_fp.fp * self.geomsum(d, k - 1) % p,
                  pow(d, k, p),
                  base_fp.length * k)
