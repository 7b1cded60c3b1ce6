"""Integer factorization: trial division below 10**6, then Brent's Pollard rho."""

from __future__ import annotations

import math
from functools import lru_cache
from random import Random

TRIAL_LIMIT = 10**6

# Deterministic Miller-Rabin witnesses for n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * TRIAL_LIMIT
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(TRIAL_LIMIT) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, TRIAL_LIMIT, i)))
    return tuple(i for i in range(TRIAL_LIMIT) if sieve[i])


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, overwhelming confidence above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, rng: Random) -> int:
    """Return a nontrivial factor of the odd composite n."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int], rng: Random) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split(r, out, rng)
        _split(r, out, rng)
        return
    d = _brent(n, rng)
    _split(d, out, rng)
    _split(n // d, out, rng)


def factor(n: int) -> list[tuple[int, int]]:
    """Complete factorization of n >= 1 as (prime, exponent) pairs, primes increasing.

    >>> factor(26542080)
    [(2, 16), (3, 4), (5, 1)]
    """
    if n < 1:
        raise ValueError(f"factor expects a positive integer, got {n}")
    out: dict[int, int] = {}
    for i, p in enumerate(_small_primes()):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
        # a large prime cofactor would otherwise cost the full trial range
        if i & 0xFF == 0xFF and is_probable_prime(n):
            break
    if n > 1:
        _split(n, out, Random(n))
    return sorted(out.items())


def factor_product(parts) -> list[tuple[int, int]]:
    """Factor a product by factoring each positive integer part and merging."""
    out: dict[int, int] = {}
    for part in parts:
        for p, e in factor(abs(part)):
            out[p] = out.get(p, 0) + e
    return sorted(out.items())


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
