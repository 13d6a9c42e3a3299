"""High-precision evaluation of j and of eta-quotient Hauptmoduls at Heegner points.

This is an independent numerical route to the traces: nothing here touches
the exact series code except the quadratic-form enumeration and lifts.
Every value carries an absolute error bound built from explicit series tail
bounds; a trace is accepted only when that bound is negligible and the sum
is within ``1e-6`` of an integer.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .arith import sqrt_residues
from .errors import NotNearInteger, PrecisionExceeded, UnsupportedDiscriminant, UnsupportedLevel
from .forms import eta_quotient
from .quadforms import (
    class_representatives, heegner_point, level_bijection_holds, lift_to_level, omega,
)

__all__ = [
    "PrecisionContext", "HauptmodulSpec", "HAUPTMODUL_PRIMES", "eval_eta", "eval_j",
    "eval_e4", "eval_e6", "eval_hauptmodul", "trace_oracle_level1", "trace_oracle_star",
    "round_trace", "point_value", "default_beta",
]

HAUPTMODUL_PRIMES = (2, 3, 5, 7, 13)
NEAREST_INTEGER_TOL = 1e-6


@dataclass(frozen=True)
class PrecisionContext:
    bits: int = 256
    guard: int = 32
    term_cap: int = 100_000

    def mp(self):
        ctx = mpmath.MPContext()
        ctx.prec = self.bits + self.guard
        return ctx

    def doubled(self):
        return PrecisionContext(2 * self.bits, self.guard, self.term_cap)


@dataclass(frozen=True)
class HauptmodulSpec:
    """``j_p* = f + s + p^(s/2) / f`` with ``f = (eta(z)/eta(pz))^s``, ``s = 24/(p-1)``."""

    p: int

    def __post_init__(self):
        if self.p not in HAUPTMODUL_PRIMES:
            raise UnsupportedLevel(f"no eta-quotient Hauptmodul is provided for p = {self.p}")

    @property
    def s(self):
        return 24 // (self.p - 1)

    @property
    def constant(self):
        return self.p ** (self.s // 2)

    def series(self, qmax):
        """Exact q-expansion, for certifying the constants."""
        f = eta_quotient([(1, self.s), (self.p, -self.s)], qmax + 2)
        finv = eta_quotient([(1, -self.s), (self.p, self.s)], qmax + 2)
        return (f + self.s + finv.scale(self.constant)).truncate(qmax)


# -- numerical kernels --------------------------------------------------------

def _to_fundamental(ctx, tau, term_cap):
    """Move ``tau`` into the standard fundamental domain.

    Returns ``(tau', factor)`` with ``eta(tau) = factor * eta(tau')``.
    """
    factor = ctx.mpc(1)
    for _ in range(term_cap):
        n = int(ctx.nint(tau.real))
        if n:
            tau = tau - n
            factor *= ctx.expjpi(ctx.mpf(n) / 12)
        if abs(tau) < 1 - ctx.eps * 8:
            factor /= ctx.sqrt(-1j * tau)
            tau = -1 / tau
            continue
        return tau, factor
    raise PrecisionExceeded("reduction to the fundamental domain did not terminate")


def _eta_series(ctx, tau, term_cap):
    """``eta(tau)`` by the pentagonal series, plus an absolute tail bound."""
    q = ctx.expjpi(2 * tau)
    aq = abs(q)
    target = ctx.ldexp(1, -ctx.prec)
    total = ctx.mpc(1)
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        e2 = k * (3 * k + 1) // 2
        sign = -1 if k % 2 else 1
        total += sign * (q ** e1 + q ** e2)
        k += 1
        nxt = k * (3 * k - 1) // 2
        tail = 2 * aq ** nxt / (1 - aq)
        if tail < target:
            break
        if k > term_cap:
            raise PrecisionExceeded("eta series hit its term cap")
    pref = ctx.expjpi(tau / 12)
    return pref * total, abs(pref) * (tail + target * k)


def eval_eta(tau, ctx=None):
    """Dedekind eta at ``tau``; returns ``(value, abs_error_bound)``."""
    pc = ctx or PrecisionContext()
    mp = pc.mp()
    tau = mp.mpc(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    t, factor = _to_fundamental(mp, tau, pc.term_cap)
    val, err = _eta_series(mp, t, pc.term_cap)
    return factor * val, abs(factor) * err


def _lambert(ctx, tau, k, term_cap):
    """``sum n^k q^n / (1 - q^n)`` with a ratio-test tail bound."""
    q = ctx.expjpi(2 * tau)
    aq = abs(q)
    target = ctx.ldexp(1, -ctx.prec)
    total = ctx.mpc(0)
    qn = ctx.mpc(1)
    n = 0
    while True:
        n += 1
        qn *= q
        total += ctx.mpf(n) ** k * qn / (1 - qn)
        nxt = ctx.mpf(n + 1) ** k * aq ** (n + 1) / (1 - aq)
        rho = (1 + ctx.mpf(1) / (n + 1)) ** k * aq
        if rho < 1:
            tail = nxt / (1 - rho)
            if tail < target:
                return total, tail
        if n > term_cap:
            raise PrecisionExceeded("Lambert series hit its term cap")


def _reduce_j_point(ctx, tau, term_cap):
    t, _ = _to_fundamental(ctx, tau, term_cap)
    return t


def eval_e4(tau, ctx=None):
    pc = ctx or PrecisionContext()
    mp = pc.mp()
    s, err = _lambert(mp, mp.mpc(tau), 3, pc.term_cap)
    return 1 + 240 * s, 240 * err


def eval_e6(tau, ctx=None):
    pc = ctx or PrecisionContext()
    mp = pc.mp()
    s, err = _lambert(mp, mp.mpc(tau), 5, pc.term_cap)
    return 1 - 504 * s, 504 * err


def eval_j(tau, ctx=None):
    """``j(tau) = E4^3 / eta^24`` after reduction to the fundamental domain."""
    pc = ctx or PrecisionContext()
    mp = pc.mp()
    tau = mp.mpc(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    t = _reduce_j_point(mp, tau, pc.term_cap)
    s, es = _lambert(mp, t, 3, pc.term_cap)
    e4 = 1 + 240 * s
    eta, ee = _eta_series(mp, t, pc.term_cap)
    delta = eta ** 24
    val = e4 ** 3 / delta
    rel = 3 * 240 * es / abs(e4) + 24 * ee / abs(eta)
    return val, 2 * abs(val) * rel + abs(val) * mp.ldexp(1, -pc.bits)


def eval_hauptmodul(p, tau, ctx=None):
    """``j_p*(tau)`` for ``p`` in (2, 3, 5, 7, 13); returns ``(value, abs_error_bound)``."""
    spec = HauptmodulSpec(p)
    pc = ctx or PrecisionContext()
    mp = pc.mp()
    tau = mp.mpc(tau)
    e1, r1 = eval_eta(tau, pc)
    e2, r2 = eval_eta(p * tau, pc)
    s = spec.s
    f = (e1 / e2) ** s
    rel = s * (r1 / abs(e1) + r2 / abs(e2))
    val = f + s + spec.constant / f
    err = 2 * rel * (abs(f) + spec.constant / abs(f)) + abs(val) * mp.ldexp(1, -pc.bits)
    return val, err


# -- traces ---------------------------------------------------------------------

def round_trace(value, err, tol=NEAREST_INTEGER_TOL):
    """Nearest integer to ``value`` under both acceptance rules."""
    # int() truncates exactly; compare neighbours in the value's own precision
    base = int(value.real)
    n = min((base - 1, base, base + 1), key=lambda c: abs(value - c))
    dist = abs(value - n)
    if dist > tol:
        raise NotNearInteger(f"trace {mpmath.nstr(value, 20)} is {mpmath.nstr(dist, 5)} from an integer")
    if err > tol * 2.0 ** -32:
        raise NotNearInteger(f"error bound {mpmath.nstr(err, 5)} too large to certify the rounding")
    return n


def trace_oracle_level1(d, ctx=None, with_error=False):
    """``t(d) = sum (j(alpha_Q) - 744)/omega_Q`` evaluated numerically and rounded."""
    pc = ctx or PrecisionContext()
    mp = pc.mp()
    total = mp.mpc(0)
    err = mp.mpf(0)
    for Q in class_representatives(d):
        tau = heegner_point(Q).to_mpc(mp)
        v, e = eval_j(tau, pc)
        w = omega(Q)
        total += (v - 744) / w
        err += e / w
    n = round_trace(total, err)
    return (n, total, err) if with_error else n


def default_beta(p, d):
    roots = sqrt_residues(-d, 4 * p)
    if not roots:
        raise UnsupportedDiscriminant(f"-{d} is not a square modulo {4 * p}")
    return min(r % (2 * p) for r in roots)


def trace_oracle_star(p, d, ctx=None, beta=None, with_error=False):
    """``t^(p)(d)`` as the weighted sum of ``j_p*`` over lifted Heegner points."""
    if p not in HAUPTMODUL_PRIMES:
        raise UnsupportedLevel(f"no Hauptmodul oracle for p = {p}")
    if beta is None:
        beta = default_beta(p, d)
    if (beta * beta + d) % (4 * p):
        raise UnsupportedDiscriminant(f"beta = {beta} is not a square root of -{d} mod {4 * p}")
    if not level_bijection_holds(p, d):
        raise UnsupportedDiscriminant(f"-{d} is divisible by {p}^2 as a discriminant")
    pc = ctx or PrecisionContext()
    mp = pc.mp()
    total = mp.mpc(0)
    err = mp.mpf(0)
    for Q in class_representatives(d):
        lifted = lift_to_level(Q, p, beta)
        v, e = eval_hauptmodul(p, heegner_point(lifted).to_mpc(mp), pc)
        w = omega(Q)
        total += v / w
        err += e / w
    n = round_trace(total, err)
    return (n, total, err) if with_error else n


def point_value(p, point, weight=Fraction(1), ctx=None):
    """``weight * j_p*(point)`` rounded to an integer, for named Heegner points."""
    pc = ctx or PrecisionContext()
    mp = pc.mp()
    v, e = eval_hauptmodul(p, point.to_mpc(mp), pc)
    w = mp.mpf(weight.numerator) / weight.denominator
    return round_trace(v * w, e * w)
