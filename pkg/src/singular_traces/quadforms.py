"""Positive definite integral binary quadratic forms ``[a, b, c] = ax^2 + bxy + cy^2``.

Imprimitive forms are included throughout: the class set of discriminant
``-d`` contains every reduced form with ``b^2 - 4ac = -d``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .arith import GENUS_ZERO_PRIMES, is_discriminant, is_square_mod
from .errors import LiftNotFound, UnsupportedDiscriminant, UnsupportedLevel

__all__ = [
    "QuadForm", "HeegnerPoint", "reduce", "class_representatives", "omega",
    "hurwitz_sum", "heegner_point", "lift_to_level", "valid_discriminants",
    "level_bijection_holds",
]


@dataclass(frozen=True)
class QuadForm:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.discriminant >= 0:
            raise ValueError(f"{self} is not positive definite")

    @property
    def discriminant(self):
        return self.b * self.b - 4 * self.a * self.c

    @property
    def d(self):
        """``d`` with discriminant ``-d``."""
        return -self.discriminant

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def __str__(self):
        return f"[{self.a},{self.b},{self.c}]"

    def act(self, m):
        """Image under ``Q(x, y) -> Q(px + qy, rx + sy)`` for ``m = ((p, q), (r, s))``."""
        (p, q), (r, s) = m
        a, b, c = self.a, self.b, self.c
        return QuadForm(a * p * p + b * p * r + c * r * r,
                        2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
                        a * q * q + b * q * s + c * s * s)


@dataclass(frozen=True)
class HeegnerPoint:
    """The root ``(-b + i sqrt(d)) / (2a)`` of ``Q(x, 1)`` in the upper half plane."""

    a: int
    b: int
    d: int

    @property
    def real(self):
        return Fraction(-self.b, 2 * self.a)

    @property
    def imag_squared(self):
        return Fraction(self.d, 4 * self.a * self.a)

    def to_mpc(self, ctx):
        """Numerical value in the given mpmath context."""
        return ctx.mpc(ctx.mpf(-self.b) / (2 * self.a), ctx.sqrt(self.d) / (2 * self.a))

    def __str__(self):
        return f"({-self.b} + sqrt(-{self.d}))/{2 * self.a}"


def reduce(Q):
    """Unique reduced form ``|b| <= a <= c`` (``b >= 0`` if ``|b| = a`` or ``a = c``)."""
    a, b, c = Q
    while True:
        # translate b into (-a, a]
        k = (a - b) // (2 * a)
        c = a * k * k + b * k + c
        b = b + 2 * a * k
        if a > c:
            a, b, c = c, -b, a
            continue
        break
    if a == c and b < 0:
        b = -b
    return QuadForm(a, b, c)


def is_reduced(Q):
    return reduce(Q) == Q


def class_representatives(d):
    """All reduced forms of discriminant ``-d``, imprimitive ones included."""
    if not is_discriminant(d):
        raise UnsupportedDiscriminant(f"-{d} is not a negative discriminant")
    forms = []
    amax = isqrt(d // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            num = b * b + d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            forms.append(QuadForm(a, b, c))
    return forms


def omega(Q):
    """2 for the class of ``[a,0,a]``, 3 for ``[a,a,a]``, else 1."""
    R = reduce(Q)
    if R.b == 0 and R.a == R.c:
        return 2
    if R.a == R.b == R.c:
        return 3
    return 1


def hurwitz_sum(d):
    """``sum 1/omega_Q`` over the classes of discriminant ``-d``."""
    return sum((Fraction(1, omega(Q)) for Q in class_representatives(d)), Fraction(0))


def heegner_point(Q):
    return HeegnerPoint(Q.a, Q.b, Q.d)


def valid_discriminants(p, dmax):
    """``0 < d <= dmax`` with ``-d`` a square modulo ``4p``."""
    return [d for d in range(1, dmax + 1) if is_square_mod(-d, 4 * p)]


def level_bijection_holds(p, d):
    """Whether ``d`` avoids divisibility by ``p^2`` *as a discriminant*.

    Fails only when ``p^2 | d`` and ``d / p^2`` is itself a discriminant.
    """
    return not (d % (p * p) == 0 and (d // (p * p)) % 4 in (0, 3))


def _divisors(n):
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def lift_to_level(Q, p, beta, cap=None):
    """A form equivalent to ``Q`` with ``p | a`` and ``b = beta mod 2p``.

    The search scans ``b'`` in that residue class by increasing ``|b'|``, factors
    ``(b'^2 + d)/4 = a'c'`` with ``p | a'`` and keeps the first form that reduces
    to ``reduce(Q)``.  The scan bound doubles until ``cap``.
    """
    if p not in GENUS_ZERO_PRIMES:
        raise UnsupportedLevel(f"{p} is not a genus-zero prime level")
    d = Q.d
    if (beta * beta + d) % (4 * p):
        raise UnsupportedDiscriminant(f"beta = {beta} does not satisfy beta^2 = -{d} mod {4 * p}")
    if not level_bijection_holds(p, d):
        raise UnsupportedDiscriminant(f"-{d} is divisible by {p}^2 as a discriminant")
    if Q.a % p == 0 and (Q.b - beta) % (2 * p) == 0:
        return Q
    target = reduce(Q)
    if cap is None:
        cap = 8 * p * (d + p * p)
    bound = 2 * p
    seen = 0
    while True:
        for bp in _residue_scan(beta % (2 * p), 2 * p, seen, bound):
            n = (bp * bp + d) // 4
            for ap in _divisors(n):
                if ap % p:
                    continue
                cand = QuadForm(ap, bp, n // ap)
                if reduce(cand) == target:
                    return cand
        if bound >= cap:
            raise LiftNotFound(f"no lift of {Q} to level {p} with |b| <= {cap}")
        seen = bound
        bound = min(2 * bound, cap)


def _residue_scan(r, m, lo, hi):
    """Integers ``b = r mod m`` with ``lo < |b| <= hi`` (or ``|b| <= hi`` when lo == 0), by |b|."""
    out = []
    for b in range(-hi, hi + 1):
        if (b - r) % m == 0 and (abs(b) > lo or lo == 0):
            out.append(b)
    out.sort(key=lambda x: (abs(x), -x))
    return out
