"""Small number theory helpers used throughout the package."""

from math import gcd, isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    """All primes p with 2 <= p <= n, ascending."""
    return [p for p in range(2, n + 1) if is_prime(p)]


def prime_valuation(n: int, p: int) -> int:
    """Largest k with p**k dividing n.  Requires n != 0 and p >= 2."""
    assert n != 0 and p >= 2
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def prime_divisors(n: int) -> list[int]:
    """Distinct prime divisors of n, ascending."""
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def factorial_valuation(n: int, p: int) -> int:
    """Valuation of n! at the prime p (Legendre's formula)."""
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total


__all__ = [
    "gcd",
    "is_prime",
    "primes_upto",
    "prime_valuation",
    "prime_divisors",
    "factorial_valuation",
]
