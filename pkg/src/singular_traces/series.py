"""Truncated Laurent/Puiseux series in q with exact rational coefficients.

A :class:`FourierSeries` stores its exponents on the lattice ``(1/L)Z``: the
coefficient of ``q**(m/L)`` is kept under the integer key ``m``.  The
truncation bound ``trunc`` (same scaling) marks where knowledge stops;
reading at or beyond it raises :class:`OutOfWindow` instead of returning 0.
``trunc=None`` means the series is exact (a Laurent polynomial).

Coefficients are Python ``int`` when integral and ``Fraction`` otherwise, so
integral series stay on the fast path.
"""

from fractions import Fraction
from math import ceil, gcd, lcm

from . import _packing
from .errors import OutOfWindow, ZeroLeadingTerm

__all__ = ["FourierSeries", "as_rational"]

# below this many term pairs a plain double loop beats Kronecker packing
_PACK_THRESHOLD = 4000


def as_rational(x):
    """Normalize a number to ``int`` (if integral) or a reduced ``Fraction``."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _min_trunc(*ts):
    ts = [t for t in ts if t is not None]
    return min(ts) if ts else None


def dense_mul(a, b, n=None):
    """First ``n`` coefficients of the product of two dense coefficient lists."""
    if not a or not b:
        return []
    full = len(a) + len(b) - 1
    n = full if n is None else min(n, full)
    if n <= 0:
        return []
    a = a[:n]
    b = b[:n]
    if (len(a) * len(b) > _PACK_THRESHOLD
            and all(type(x) is int for x in a) and all(type(x) is int for x in b)):
        bound = sum(abs(x) for x in a) * max(abs(x) for x in b)
        w = _packing.slot_width(bound)
        prod = _packing.mul(_packing.pack(a, w), _packing.pack(b, w))
        return _packing.unpack(prod, w, len(a) + len(b) - 1)[:n]
    out = [0] * n
    for i, x in enumerate(a):
        if not x:
            continue
        lim = min(len(b), n - i)
        for j in range(lim):
            y = b[j]
            if y:
                out[i + j] += x * y
    return [as_rational(x) for x in out]


def dense_inverse(u, n):
    """First ``n`` coefficients of ``1/u`` for a dense list with ``u[0] != 0``."""
    if n <= 0:
        return []
    c = u[0]
    if c in (1, -1) and all(type(x) is int for x in u):
        # Newton iteration w <- w*(2 - u*w); integral throughout
        w = [c]
        k = 1
        while k < n:
            k = min(2 * k, n)
            uw = dense_mul(u[:k], w, k)
            corr = [-x for x in uw]
            corr[0] += 2
            w = dense_mul(w, corr, k)
        return w
    inv_c = Fraction(1) / Fraction(c)
    w = [as_rational(inv_c)]
    for k in range(1, n):
        s = 0
        for j in range(1, min(k, len(u) - 1) + 1):
            if u[j]:
                s += u[j] * w[k - j]
        w.append(as_rational(-s * inv_c))
    return w


class FourierSeries:
    """Immutable truncated series ``sum c_m q^(m/L) + O(q^(trunc/L))``."""

    __slots__ = ("_coeffs", "trunc", "lattice")

    def __init__(self, coeffs=None, trunc=None, lattice=1):
        if lattice < 1:
            raise ValueError("lattice must be a positive integer")
        clean = {}
        for m, v in (coeffs or {}).items():
            if trunc is not None and m >= trunc:
                continue
            v = as_rational(v)
            if v:
                clean[int(m)] = v
        g = lattice
        if trunc is not None:
            g = gcd(g, trunc)
        for m in clean:
            if g == 1:
                break
            g = gcd(g, m)
        if g > 1:
            clean = {m // g: v for m, v in clean.items()}
            trunc = None if trunc is None else trunc // g
            lattice //= g
        self._coeffs = clean
        self.trunc = trunc
        self.lattice = lattice

    # -- construction -----------------------------------------------------

    @classmethod
    def from_terms(cls, terms, prec=None):
        """Build from ``{exponent: value}`` with rational exponents."""
        exps = [Fraction(e) for e in terms]
        if prec is not None:
            prec = Fraction(prec)
            exps.append(prec)
        L = lcm(1, *(e.denominator for e in exps))
        coeffs = {}
        for e, v in terms.items():
            m = int(Fraction(e) * L)
            coeffs[m] = coeffs.get(m, 0) + v
        trunc = None if prec is None else int(prec * L)
        return cls(coeffs, trunc, L)

    @classmethod
    def from_list(cls, values, prec=None, start=0):
        """Dense list of coefficients of ``q^start, q^(start+1), ...``.

        Without ``prec`` the result is an exact Laurent polynomial.
        """
        return cls({start + i: v for i, v in enumerate(values)}, prec)

    @classmethod
    def constant(cls, c, prec=None):
        return cls({0: c}, prec)

    @classmethod
    def monomial(cls, exponent=1, c=1, prec=None):
        return cls.from_terms({exponent: c}, prec)

    # -- inspection -------------------------------------------------------

    @property
    def prec(self):
        """Truncation bound as a rational exponent (``None`` if exact)."""
        return None if self.trunc is None else Fraction(self.trunc, self.lattice)

    def is_exact(self):
        return self.trunc is None

    def is_zero(self):
        return not self._coeffs

    def __len__(self):
        return len(self._coeffs)

    def items(self):
        """``(exponent, value)`` pairs in increasing exponent order."""
        L = self.lattice
        for m in sorted(self._coeffs):
            yield (m if L == 1 else Fraction(m, L)), self._coeffs[m]

    def scaled_items(self):
        return sorted(self._coeffs.items())

    def valuation(self):
        """Lowest exponent with a nonzero coefficient (``None`` if none known)."""
        if not self._coeffs:
            return None
        m = min(self._coeffs)
        return m if self.lattice == 1 else Fraction(m, self.lattice)

    def _scaled_valuation(self):
        if self._coeffs:
            return min(self._coeffs)
        return self.trunc

    def is_integral(self):
        """True if the exponent lattice is 1 and every coefficient is an integer."""
        return self.lattice == 1 and all(type(v) is int for v in self._coeffs.values())

    def coefficient(self, e):
        e = Fraction(e)
        if self.trunc is not None and e * self.lattice >= self.trunc:
            raise OutOfWindow(f"coefficient of q^{e} requested; known below q^{self.prec}")
        m = e * self.lattice
        if m.denominator != 1:
            return 0
        return self._coeffs.get(m.numerator, 0)

    __getitem__ = coefficient

    def to_list(self, start, stop):
        """Dense coefficients of ``q^start .. q^(stop-1)`` (integral exponents)."""
        return [self.coefficient(n) for n in range(start, stop)]

    # -- lattice handling -------------------------------------------------

    def _on_lattice(self, L):
        """Coefficient dict and trunc rescaled to lattice ``L`` (a multiple)."""
        k = L // self.lattice
        if k == 1:
            return self._coeffs, self.trunc
        coeffs = {m * k: v for m, v in self._coeffs.items()}
        return coeffs, None if self.trunc is None else self.trunc * k

    def truncate(self, prec):
        """Forget everything at exponents ``>= prec``."""
        prec = Fraction(prec)
        L = lcm(self.lattice, prec.denominator)
        coeffs, trunc = self._on_lattice(L)
        t = int(prec * L)
        return FourierSeries(coeffs, _min_trunc(trunc, t), L)

    def shift(self, e):
        """Multiply by ``q^e``."""
        e = Fraction(e)
        L = lcm(self.lattice, e.denominator)
        coeffs, trunc = self._on_lattice(L)
        s = int(e * L)
        return FourierSeries({m + s: v for m, v in coeffs.items()},
                             None if trunc is None else trunc + s, L)

    def dilate(self, m):
        """Substitute ``q -> q^m``."""
        if m < 1:
            raise ValueError("dilation factor must be a positive integer")
        return FourierSeries({k * m: v for k, v in self._coeffs.items()},
                             None if self.trunc is None else self.trunc * m,
                             self.lattice)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, FourierSeries):
            return x
        if isinstance(x, (int, Fraction)):
            return FourierSeries.constant(x)
        return NotImplemented

    def __neg__(self):
        return FourierSeries({m: -v for m, v in self._coeffs.items()},
                             self.trunc, self.lattice)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        L = lcm(self.lattice, other.lattice)
        a, ta = self._on_lattice(L)
        b, tb = other._on_lattice(L)
        out = dict(a)
        for m, v in b.items():
            out[m] = out.get(m, 0) + v
        return FourierSeries(out, _min_trunc(ta, tb), L)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_rational(c)
        if c == 0:
            return FourierSeries({}, self.trunc, self.lattice)
        return FourierSeries({m: v * c for m, v in self._coeffs.items()},
                             self.trunc, self.lattice)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, FourierSeries):
            return NotImplemented
        L = lcm(self.lattice, other.lattice)
        a, ta = self._on_lattice(L)
        b, tb = other._on_lattice(L)
        va = min(a) if a else ta
        vb = min(b) if b else tb
        cands = []
        if tb is not None and va is not None:
            cands.append(va + tb)
        if ta is not None and vb is not None:
            cands.append(vb + ta)
        trunc = min(cands) if cands else None
        if not a or not b:
            return FourierSeries({}, trunc, L)
        out = _sparse_or_dense_mul(a, b, trunc)
        return FourierSeries(out, trunc, L)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        if isinstance(other, FourierSeries):
            return self * other.inv()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inv() * other

    def inv(self, prec=None):
        """Laurent inverse.

        For an exact (polynomial) series ``prec`` must give the window of the
        result; otherwise the implied window ``trunc - 2*valuation`` is used.
        """
        if not self._coeffs:
            raise ZeroLeadingTerm("series vanishes throughout its window")
        L = self.lattice
        v = min(self._coeffs)
        if prec is not None:
            # exponents live on (1/L)Z, so a fractional bound rounds up
            t = ceil(Fraction(prec) * L)
            if self.trunc is not None:
                t = min(t, self.trunc - 2 * v)
        elif self.trunc is None:
            if len(self._coeffs) == 1:
                return FourierSeries({-v: Fraction(1) / self._coeffs[v]}, None, L)
            raise ValueError("inverse of an exact series needs an explicit prec")
        else:
            t = self.trunc - 2 * v
        n = t + v  # number of coefficients of the unit part needed
        if n <= 0:
            return FourierSeries({}, t, L)
        u = [self._coeffs.get(v + k, 0) for k in range(n)]
        w = dense_inverse(u, n)
        return FourierSeries({k - v: c for k, c in enumerate(w)}, t, L)

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inv() ** (-e)
        result = FourierSeries.constant(1)
        base = self
        while True:
            if e & 1:
                result = result * base
            e >>= 1
            if not e:
                return result
            base = base * base

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FourierSeries.constant(other, None)
        if not isinstance(other, FourierSeries):
            return NotImplemented
        return (self.lattice == other.lattice and self.trunc == other.trunc
                and self._coeffs == other._coeffs)

    def __hash__(self):
        return hash((self.lattice, self.trunc, frozenset(self._coeffs.items())))

    def agrees_with(self, other):
        """Equality of coefficients on the common known window."""
        d = self - other
        return d.is_zero()

    def __repr__(self):
        return f"FourierSeries({self})"

    def __str__(self):
        parts = []
        for e, v in self.items():
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "q"
            else:
                mono = f"q^{e}"
            if mono and v == 1:
                t = mono
            elif mono and v == -1:
                t = "-" + mono
            elif mono:
                t = f"{v}*{mono}"
            else:
                t = str(v)
            parts.append(t)
        if self.trunc is not None:
            parts.append(f"O(q^{self.prec})")
        s = " + ".join(parts) if parts else "0"
        return s.replace("+ -", "- ")


def _sparse_or_dense_mul(a, b, trunc):
    """Product of two scaled coefficient dicts, keys below ``trunc`` only."""
    ka, kb = min(a), min(b)
    if trunc is None:
        hi_a, hi_b = max(a) + 1, max(b) + 1
    else:
        hi_a = min(max(a) + 1, trunc - kb)
        hi_b = min(max(b) + 1, trunc - ka)
    if hi_a <= ka or hi_b <= kb:
        return {}
    if len(a) * len(b) > _PACK_THRESHOLD:
        la = [a.get(k, 0) for k in range(ka, hi_a)]
        lb = [b.get(k, 0) for k in range(kb, hi_b)]
        n = None if trunc is None else trunc - ka - kb
        prod = dense_mul(la, lb, n)
        return {ka + kb + i: c for i, c in enumerate(prod) if c}
    out = {}
    bi = [(m, v) for m, v in b.items() if m < hi_b]
    for m1, v1 in a.items():
        if m1 >= hi_a:
            continue
        for m2, v2 in bi:
            m = m1 + m2
            if trunc is None or m < trunc:
                out[m] = out.get(m, 0) + v1 * v2
    return out
