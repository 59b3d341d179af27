"""Primality and prime enumeration helpers."""

from __future__ import annotations

from math import isqrt

__all__ = ["is_prime", "primes_in_range"]


def is_prime(n: int) -> bool:
    """Trial division up to ``sqrt(n)``."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for p in range(3, isqrt(n) + 1, 2):
        if n % p == 0:
            return False
    return True


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes ``p`` with ``lo < p <= hi``, via a byte sieve up to ``hi``."""
    if hi < 2:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(hi) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [p for p in range(max(lo + 1, 2), hi + 1) if sieve[p]]
