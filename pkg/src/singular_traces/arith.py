"""Elementary integer arithmetic shared across modules."""

from math import isqrt

# primes p for which Gamma_0(p)* has genus zero
GENUS_ZERO_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 41, 47, 59, 71)


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def kronecker(a, n):
    """Kronecker symbol ``(a | n)``; for odd prime ``n`` this is the Legendre symbol."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    # factors of two in n
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a | n) for odd n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_discriminant(d):
    """True when ``-d`` is a negative discriminant, i.e. ``d > 0`` and ``d = 0, 3 mod 4``."""
    return d > 0 and d % 4 in (0, 3)


def sqrt_residues(n, m):
    """All ``x mod m`` with ``x^2 = n mod m`` (brute force; m is small here)."""
    n %= m
    return [x for x in range(m) if x * x % m == n]


def is_square_mod(n, m):
    n %= m
    return any(x * x % m == n for x in range(m // 2 + 1))


def isqrt_exact(n):
    """Integer square root if ``n`` is a perfect square, else ``None``."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None
