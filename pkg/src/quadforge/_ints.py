"""Exact integer helpers shared by the field, feasibility and scan code.

Everything here is plain integer arithmetic (Python ints are unbounded, so
the 128-bit headroom the scans need is automatic).  Primality is a
deterministic Miller-Rabin valid far beyond the scan ranges; factorization
is trial division plus Brent's variant of Pollard rho.
"""

from __future__ import annotations

import math
from functools import lru_cache

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def icbrt(n: int) -> int:
    """Integer cube root: the largest r with r**3 <= n."""
    if n < 0:
        raise ValueError("negative input")
    if n == 0:
        return 0
    r = round(n ** (1 / 3))
    while r ** 3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def is_square_int(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def _pollard_brent(n: int) -> int:
    # n odd composite, not a prime power of a small prime
    if n % 2 == 0:
        return 2
    x0 = 2
    c = 1
    while True:
        x = y = x0
        d = 1
        q = 1
        m = 128
        while d == 1:
            ys = y
            for _ in range(m):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            d = math.gcd(q, n)
            x = y
        if d != n:
            return d
        # backtrack
        y = ys
        while True:
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
            if d > 1:
                break
        if d != n:
            return d
        c += 1


def factorize(n: int) -> dict[int, int]:
    """Prime factorization as {prime: exponent}."""
    if n <= 0:
        raise ValueError("positive integer required")
    out: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        # trial divide a bit further before rho
        d = None
        f = 49
        while f * f <= m and f < 10_000:
            if m % f == 0:
                d = f
                break
            f += 2
        if d is None:
            d = _pollard_brent(m)
        stack.append(d)
        stack.append(m // d)
    return out


def merge_factors(*facs: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for fac in facs:
        for p, e in fac.items():
            out[p] = out.get(p, 0) + e
    return out


def divide_factors(fac: dict[int, int], by: dict[int, int]) -> dict[int, int]:
    """Exponent-wise subtraction; raises if the division is not exact."""
    out = dict(fac)
    for p, e in by.items():
        have = out.get(p, 0) - e
        if have < 0:
            raise ValueError("non-exact factor division")
        if have:
            out[p] = have
        else:
            out.pop(p, None)
    return out


def divisors_from_factors(fac: dict[int, int]) -> list[int]:
    """All divisors, ascending."""
    divs = [1]
    for p, e in fac.items():
        pk = 1
        block = []
        for _ in range(e):
            pk *= p
            block.extend(d * pk for d in divs)
        divs.extend(block)
    divs.sort()
    return divs


@lru_cache(maxsize=8)
def spf_sieve(limit: int) -> list[int]:
    """Smallest-prime-factor table for 0..limit."""
    spf = list(range(limit + 1))
    for i in range(2, math.isqrt(limit) + 1):
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def factorize_sieved(n: int, spf: list[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    while n > 1:
        p = spf[n]
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = e
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, f) with q = p**f, or None if q is not a prime power."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    ((p, f),) = fac.items()
    return p, f


def iter_prime_powers(lo: int, hi: int):
    """Yield (q, p, f) for every prime power q with lo <= q <= hi."""
    if hi < lo:
        return
    spf = spf_sieve(hi) if hi <= 2_000_000 else None
    for q in range(max(lo, 2), hi + 1):
        if spf is not None:
            p = spf[q]
            m = q
            while m % p == 0:
                m //= p
            if m != 1:
                continue
            f = round(math.log(q, p))
            yield q, p, f
        else:
            pf = prime_power(q)
            if pf is not None:
                yield q, pf[0], pf[1]
