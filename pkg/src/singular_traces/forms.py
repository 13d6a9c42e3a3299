"""Exact q-expansions of level-one modular objects.

Everything here returns a :class:`~singular_traces.series.FourierSeries`
whose window is ``O(q^qmax)``: all coefficients of exponents below ``qmax``
are exact.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, isqrt

from .errors import OutOfWindow, UnsupportedDiscriminant
from .series import FourierSeries

__all__ = [
    "EtaQuotientSpec", "TraceTableLevel1", "euler_product", "eta_quotient",
    "theta_series", "sigma", "eisenstein_e4", "eisenstein_e6", "eisenstein",
    "delta", "delta_inv", "j_series", "zagier_g", "trace_table_level1",
    "trace_level1",
]


def sigma(n, k):
    """Divisor power sum, by direct divisor enumeration."""
    if n < 1:
        raise ValueError("sigma needs a positive integer")
    total = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            e = n // d
            total += d ** k
            if e != d:
                total += e ** k
    return total


def euler_product(nterms):
    """``prod_{n>=1} (1 - q^n)`` below ``q^nterms`` (pentagonal number theorem)."""
    coeffs = {0: 1}
    k = 1
    while True:
        sign = -1 if k % 2 else 1
        p1 = k * (3 * k - 1) // 2
        p2 = k * (3 * k + 1) // 2
        if p1 >= nterms:
            break
        coeffs[p1] = sign
        if p2 < nterms:
            coeffs[p2] = sign
        k += 1
    return FourierSeries(coeffs, nterms)


@dataclass(frozen=True)
class EtaQuotientSpec:
    """``prod eta(m z)^e`` over the ``(m, e)`` pairs in ``factors``."""

    factors: tuple

    def __post_init__(self):
        facs = tuple((int(m), int(e)) for m, e in self.factors)
        if any(m < 1 for m, _ in facs):
            raise ValueError("eta multipliers must be positive")
        object.__setattr__(self, "factors", facs)

    @property
    def order(self):
        """Exponent of the leading power ``q^(sum m*e/24)``."""
        return Fraction(sum(m * e for m, e in self.factors), 24)

    @property
    def weight(self):
        return Fraction(sum(e for _, e in self.factors), 2)


def eta_quotient(spec, qmax):
    """Expansion of an eta quotient, exact below ``q^qmax``."""
    if qmax < 1:
        raise ValueError("qmax must be at least 1")
    if not isinstance(spec, EtaQuotientSpec):
        spec = EtaQuotientSpec(tuple(spec))
    shift = spec.order
    need = max(ceil(qmax - shift), 0)
    prod = FourierSeries.constant(1, need)
    for m, e in spec.factors:
        if e == 0:
            continue
        base = euler_product(ceil(need / m) + 1).dilate(m).truncate(need)
        prod = prod * base ** e
    return prod.shift(shift).truncate(qmax)


def theta_series(qmax):
    """``sum_{n in Z} (-1)^n q^(n^2)`` below ``q^qmax``."""
    if qmax < 1:
        raise ValueError("qmax must be at least 1")
    coeffs = {0: 1}
    n = 1
    while n * n < qmax:
        coeffs[n * n] = 2 if n % 2 == 0 else -2
        n += 1
    return FourierSeries(coeffs, qmax)


def eisenstein(k, qmax):
    """Normalized level-one Eisenstein series of even weight ``k`` in {4, 6}."""
    consts = {4: 240, 6: -504}
    if k not in consts:
        raise ValueError("only E4 and E6 are provided")
    c = consts[k]
    coeffs = {0: 1}
    for n in range(1, qmax):
        coeffs[n] = c * sigma(n, k - 1)
    return FourierSeries(coeffs, qmax)


def eisenstein_e4(qmax):
    return eisenstein(4, qmax)


def eisenstein_e6(qmax):
    return eisenstein(6, qmax)


def delta(qmax):
    """Discriminant function ``(E4^3 - E6^2)/1728``."""
    e4 = eisenstein_e4(qmax)
    e6 = eisenstein_e6(qmax)
    return (e4 ** 3 - e6 ** 2) / 1728


def delta_inv(qmax):
    """``1/Delta = q^-1 + 24 + 324q + ...`` below ``q^qmax``."""
    return delta(qmax + 2).inv()


def j_series(qmax):
    """Klein's ``j = E4^3 / Delta`` below ``q^qmax``."""
    e4 = eisenstein_e4(qmax + 1)
    return (e4 ** 3 * delta_inv(qmax)).truncate(qmax)


def zagier_g(qmax):
    """``-theta_1(z) E4(4z) / eta(4z)^6 = -q^-1 + 2 + sum t(d) q^d``."""
    if qmax < 1:
        raise ValueError("qmax must be at least 1")
    n4 = (qmax + 1) // 4 + 2
    # E4(x)/prod(1-x^n)^6 in x = q^4, then dilate
    core = eisenstein_e4(n4) * euler_product(n4) ** -6
    core = core.dilate(4)
    g = -(theta_series(qmax + 1) * core).shift(-1)
    return g.truncate(qmax)


@dataclass(frozen=True)
class TraceTableLevel1:
    """Coefficients of ``g``: ``values[d]`` is ``t(d)``, valid for ``d < dmax``.

    The principal part is included at the same positions: ``t(-1) = -1`` and
    the constant ``2`` sits at ``d = 0``.
    """

    values: dict
    dmax: int

    def __getitem__(self, d):
        return trace_level1(d, self)


def trace_table_level1(dmax):
    """Tabulate ``t(d)`` for ``d < dmax`` from ``zagier_g``; integrality is checked."""
    g = zagier_g(dmax)
    values = {}
    for e, v in g.items():
        if type(v) is not int or not isinstance(e, int):
            raise ArithmeticError(f"non-integral coefficient {v} at q^{e} in g")
        values[e] = v
    return TraceTableLevel1(values, dmax)


def trace_level1(d, table):
    """Zagier's trace ``t(d)`` read off the table."""
    if d < -1 or d % 4 not in (0, 3):
        raise UnsupportedDiscriminant(f"-{d} is not a discriminant (need d = 0, 3 mod 4)")
    if d >= table.dmax:
        raise OutOfWindow(f"t({d}) needs a table valid beyond d = {table.dmax - 1}")
    return table.values.get(d, 0)
