"""Deterministic integer factorization with explicit work budgets.

Trial division, Brent's cycle-finding with a fixed parameter schedule, and
a seeded elliptic-curve stage.  Budgets are iteration counts, never wall
clock, so a given input always produces the same (possibly partial)
factorization.  `factor` returns the prime factors it found together with
an unfactored cofactor; callers that need completeness must check that the
cofactor is 1.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import gmpy2

_SMALL_PRIME_BOUND = 100_000
_small_primes: list[int] = []
_small_prime_limit = 0


def small_primes(bound: int = _SMALL_PRIME_BOUND) -> list[int]:
    """All primes below max(bound, every earlier bound); the cache only grows,
    so callers needing primes *up to* bound must filter the result themselves.
    """
    global _small_primes, _small_prime_limit
    if bound > _small_prime_limit:
        sieve = bytearray([1]) * bound
        sieve[0:2] = b"\x00\x00"
        for i in range(2, int(bound ** 0.5) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
        _small_primes = [i for i in range(bound) if sieve[i]]
        _small_prime_limit = bound
    return _small_primes


def is_probable_prime(n: int) -> bool:
    return bool(gmpy2.is_prime(gmpy2.mpz(n), 40))


def _brent_rho(n: int, c: int, max_iters: int) -> int | None:
    """Brent's variant of Pollard rho with increment c; None on failure."""
    n = gmpy2.mpz(n)
    y, m = gmpy2.mpz(2), 128
    g, r, q = gmpy2.mpz(1), 1, gmpy2.mpz(1)
    iters = 0
    x = ys = y
    while g == 1 and iters < max_iters:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gmpy2.gcd(q, n)
            k += m
        iters += r
        r <<= 1
    if g == n:
        g = gmpy2.mpz(1)
        while g == 1:
            ys = (ys * ys + c) % n
            g = gmpy2.gcd(abs(x - ys), n)
    if 1 < g < n:
        return int(g)
    return None


@dataclass
class FactorResult:
    factors: dict[int, int] = field(default_factory=dict)
    cofactor: int = 1  # composite (or 1) leftover, coprime to found primes

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def add(self, p: int, e: int = 1) -> None:
        self.factors[p] = self.factors.get(p, 0) + e


def _ecm_stage(n: int, curves: int) -> int | None:
    """Seeded ECM attempts on n; returns a nontrivial factor or None."""
    from sympy.ntheory import ecm

    schedule = [(2_000, 160_000, max(4, curves // 4)),
                (11_000, 1_900_000, max(4, curves // 2)),
                (50_000, 12_000_000, curves)]
    for b1, b2, ncurves in schedule:
        try:
            fs = ecm(n, B1=b1, B2=b2, max_curve=ncurves, seed=1234)
        except Exception:
            continue
        fs = {int(f) for f in fs if 1 < int(f) < n}
        if fs:
            return min(fs)
    return None


def factor(n: int, rho_iters: int = 1 << 21, ecm_curves: int = 0) -> FactorResult:
    """Factor |n| as far as the work budget allows.

    rho_iters caps the Brent iterations per attempt; ecm_curves > 0 enables
    the ECM stage for cofactors that survive rho.  Deterministic.
    """
    res = FactorResult()
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    for p in small_primes():
        if p * p > n:
            break
        while n % p == 0:
            res.add(p)
            n //= p
    if n == 1:
        return res
    primes, cofactor = _decompose(n, rho_iters, ecm_curves)
    for p in primes:
        res.add(p)
    res.cofactor = cofactor
    return res


@lru_cache(maxsize=4096)
def _decompose(n: int, rho_iters: int, ecm_curves: int):
    """(found primes tuple, composite cofactor) for n free of small primes."""
    stack = [n]
    primes = []
    cofactor = 1
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            primes.append(m)
            continue
        root, exact = gmpy2.iroot(gmpy2.mpz(m), 2)
        if exact:
            stack.extend([int(root), int(root)])
            continue
        d = None
        for c in (1, 3, 5, 7, 11):
            d = _brent_rho(m, c, rho_iters)
            if d:
                break
        if d is None and ecm_curves > 0:
            d = _ecm_stage(m, ecm_curves)
        if d is None:
            cofactor *= m
            continue
        stack.extend([d, m // d])
    return tuple(sorted(primes)), cofactor


def prime_divisors_upto(n: int, bound: int) -> list[int]:
    """All primes p <= bound dividing |n| (bound <= small-prime table)."""
    n = abs(int(n))
    out = []
    for p in small_primes(max(bound + 1, 1000)):
        if p > bound:
            break
        if n % p == 0:
            out.append(p)
    return out
