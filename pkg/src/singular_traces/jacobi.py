"""Two-variable (q, zeta) expansions of Jacobi forms.

A :class:`JacobiExpansion` maps each q-exponent to a Laurent polynomial in
zeta.  Exponents are stored scaled: ``q^(n/qlattice) zeta^(r/zlattice)``
lives under keys ``(n, r)``.  The weak generators ``a = phi_{-2,1}`` and
``b = phi_{0,1}`` are built from product and theta-quotient formulas; the
algebra they generate over ``C[E4, E6]`` holds every weak Jacobi form of
even weight.
"""

from fractions import Fraction
from math import gcd, lcm

from . import _packing
from .errors import NonIntegralResult, OutOfWindow
from .forms import euler_product
from .series import FourierSeries, as_rational

__all__ = [
    "ZetaPolynomial", "JacobiExpansion", "jacobi_mul", "scale_by_form",
    "gen_a", "gen_b",
]


class ZetaPolynomial:
    """Immutable Laurent polynomial in zeta with rational coefficients."""

    __slots__ = ("_c", "lattice")

    def __init__(self, coeffs=None, lattice=1):
        self._c = {int(r): as_rational(v) for r, v in (coeffs or {}).items() if v}
        self.lattice = lattice

    def __getitem__(self, r):
        m = Fraction(r) * self.lattice
        if m.denominator != 1:
            return 0
        return self._c.get(m.numerator, 0)

    def items(self):
        L = self.lattice
        for r in sorted(self._c):
            yield (r if L == 1 else Fraction(r, L)), self._c[r]

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def is_symmetric(self):
        return all(self._c.get(-r) == v for r, v in self._c.items())

    def __eq__(self, other):
        if isinstance(other, dict):
            other = ZetaPolynomial(other)
        if not isinstance(other, ZetaPolynomial):
            return NotImplemented
        L = lcm(self.lattice, other.lattice)
        a = {r * (L // self.lattice): v for r, v in self._c.items()}
        b = {r * (L // other.lattice): v for r, v in other._c.items()}
        return a == b

    def __repr__(self):
        terms = " + ".join(f"{v}*z^{r}" for r, v in self.items())
        return f"ZetaPolynomial({terms or '0'})"


def _canonical(terms, qtrunc, qlat, zlat):
    """Drop zeros and coarsen both lattices as far as the data allows."""
    clean = {}
    for n, poly in terms.items():
        if n >= qtrunc:
            continue
        p = {r: as_rational(v) for r, v in poly.items() if v}
        if p:
            clean[n] = p
    gq = gcd(qlat, qtrunc)
    gz = zlat
    for n, poly in clean.items():
        gq = gcd(gq, n)
        if gz > 1:
            for r in poly:
                gz = gcd(gz, r)
    if gq > 1 or gz > 1:
        clean = {n // gq: {r // gz: v for r, v in poly.items()}
                 for n, poly in clean.items()}
        qtrunc //= gq
        qlat //= gq
        zlat //= gz
    return clean, qtrunc, qlat, zlat


class JacobiExpansion:
    """Truncated expansion ``sum_n sum_r c(n, r) q^n zeta^r`` with weight/index tags."""

    __slots__ = ("weight", "index", "qlattice", "zlattice", "_terms", "qtrunc")

    def __init__(self, terms, qtrunc, weight=0, index=0, qlattice=1, zlattice=1):
        t, qtrunc, qlattice, zlattice = _canonical(terms, qtrunc, qlattice, zlattice)
        self._terms = t
        self.qtrunc = qtrunc
        self.weight = weight
        self.index = index
        self.qlattice = qlattice
        self.zlattice = zlattice

    @classmethod
    def one(cls, prec):
        prec = Fraction(prec)
        return cls({0: {0: 1}}, prec.numerator, qlattice=prec.denominator)

    @classmethod
    def from_terms(cls, terms, prec, weight=0, index=0):
        """Build from ``{n: {r: value}}`` with integral exponents."""
        return cls(terms, prec, weight, index)

    # -- inspection -------------------------------------------------------

    @property
    def prec(self):
        return Fraction(self.qtrunc, self.qlattice)

    def coefficient(self, n, r):
        """``c(n, r)``; zero off the lattice, :class:`OutOfWindow` past the truncation."""
        n = Fraction(n) * self.qlattice
        if n >= self.qtrunc:
            raise OutOfWindow(f"q^{n / self.qlattice} is beyond the window q^{self.prec}")
        r = Fraction(r) * self.zlattice
        if n.denominator != 1 or r.denominator != 1:
            return 0
        return self._terms.get(n.numerator, {}).get(r.numerator, 0)

    def __getitem__(self, nr):
        return self.coefficient(*nr)

    def term(self, n):
        """The zeta polynomial multiplying ``q^n``."""
        m = Fraction(n) * self.qlattice
        if m >= self.qtrunc:
            raise OutOfWindow(f"q^{n} is beyond the window q^{self.prec}")
        if m.denominator != 1:
            return ZetaPolynomial({}, self.zlattice)
        return ZetaPolynomial(self._terms.get(m.numerator, {}), self.zlattice)

    def scaled_terms(self):
        return self._terms

    def items(self):
        """``(n, r, c(n, r))`` triples over stored nonzero coefficients."""
        ql, zl = self.qlattice, self.zlattice
        for n in sorted(self._terms):
            poly = self._terms[n]
            nn = n if ql == 1 else Fraction(n, ql)
            for r in sorted(poly):
                yield nn, (r if zl == 1 else Fraction(r, zl)), poly[r]

    def is_integral(self):
        return (self.qlattice == 1 and self.zlattice == 1
                and all(type(v) is int for p in self._terms.values() for v in p.values()))

    def is_zero(self):
        return not self._terms

    def truncate(self, prec):
        prec = Fraction(prec)
        L = lcm(self.qlattice, prec.denominator)
        k = L // self.qlattice
        t = min(self.qtrunc * k, int(prec * L))
        return JacobiExpansion({n * k: p for n, p in self._terms.items()}, t,
                               self.weight, self.index, L, self.zlattice)

    def _rescaled(self, ql, zl):
        kq, kz = ql // self.qlattice, zl // self.zlattice
        if kq == 1 and kz == 1:
            return self._terms, self.qtrunc
        terms = {n * kq: {r * kz: v for r, v in p.items()} for n, p in self._terms.items()}
        return terms, self.qtrunc * kq

    def finalize(self, prec):
        """Truncate to ``prec`` and demand integral exponents and coefficients."""
        out = self.truncate(prec)
        if out.qlattice != 1 or out.zlattice != 1 or not out.is_integral():
            raise NonIntegralResult("expansion is not integral on the unit lattice")
        return out

    # -- arithmetic -------------------------------------------------------

    def _check_tags(self, other):
        if (self.weight, self.index) != (other.weight, other.index):
            raise ValueError("cannot add expansions of different weight/index")

    def __add__(self, other):
        if not isinstance(other, JacobiExpansion):
            return NotImplemented
        self._check_tags(other)
        ql = lcm(self.qlattice, other.qlattice)
        zl = lcm(self.zlattice, other.zlattice)
        a, ta = self._rescaled(ql, zl)
        b, tb = other._rescaled(ql, zl)
        out = {n: dict(p) for n, p in a.items()}
        for n, p in b.items():
            row = out.setdefault(n, {})
            for r, v in p.items():
                row[r] = row.get(r, 0) + v
        return JacobiExpansion(out, min(ta, tb), self.weight, self.index, ql, zl)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_rational(c)
        terms = {n: {r: v * c for r, v in p.items()} for n, p in self._terms.items()}
        return JacobiExpansion(terms, self.qtrunc, self.weight, self.index,
                               self.qlattice, self.zlattice)

    def __mul__(self, other):
        if isinstance(other, JacobiExpansion):
            return jacobi_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return JacobiExpansion.one(self.prec) if result is None else result

    def __eq__(self, other):
        if not isinstance(other, JacobiExpansion):
            return NotImplemented
        return (self.weight == other.weight and self.index == other.index
                and self.qlattice == other.qlattice and self.zlattice == other.zlattice
                and self.qtrunc == other.qtrunc and self._terms == other._terms)

    __hash__ = None

    def agrees_with(self, other):
        """Coefficientwise equality on the common window (tags ignored)."""
        if (self.weight, self.index) != (other.weight, other.index):
            return False
        return (self - other).is_zero()

    def __repr__(self):
        return (f"JacobiExpansion(weight={self.weight}, index={self.index}, "
                f"prec={self.prec}, terms={len(self._terms)})")


# -- multiplication kernels ---------------------------------------------------

def _all_int(terms):
    return all(type(v) is int for p in terms.values() for v in p.values())


def _radius(terms):
    return max((abs(r) for p in terms.values() for r in p), default=0)


def _pack_levels(terms, R, width, keys):
    size = 2 * R + 1
    out = {}
    for n in keys:
        p = terms.get(n)
        if not p:
            continue
        dense = [0] * size
        for r, v in p.items():
            dense[r + R] = v
        out[n] = _packing.pack(dense, width)
    return out


def _unpack_levels(packed, R, width):
    size = 2 * R + 1
    out = {}
    for n, val in packed.items():
        if not val:
            continue
        dense = _packing.unpack(val, width, size)
        out[n] = {i - R: v for i, v in enumerate(dense) if v}
    return out


def _mul_int_terms(a, b, trunc):
    """Product of integral term dicts via zeta-Kronecker packing per q-level."""
    Ra, Rb = _radius(a), _radius(b)
    ka = sorted(n for n in a if n < trunc)
    kb = sorted(n for n in b if n < trunc)
    if not ka or not kb:
        return {}
    # |c(n, r)| <= sum_n1 L1(a[n1]) * max|b|
    l1a = sum(sum(abs(v) for v in a[n].values()) for n in ka)
    maxb = max(max(abs(v) for v in b[n].values()) for n in kb)
    w = _packing.slot_width(l1a * maxb)
    pa = _pack_levels(a, Ra, w, ka)
    pb = _pack_levels(b, Rb, w, kb)
    out = {}
    for n1, x in pa.items():
        for n2, y in pb.items():
            n = n1 + n2
            if n >= trunc:
                break
            out[n] = out.get(n, 0) + _packing.mul(x, y)
    return _unpack_levels(out, Ra + Rb, w)


def _mul_generic_terms(a, b, trunc):
    out = {}
    for n1, p1 in a.items():
        for n2, p2 in b.items():
            n = n1 + n2
            if n >= trunc:
                continue
            row = out.setdefault(n, {})
            for r1, v1 in p1.items():
                for r2, v2 in p2.items():
                    r = r1 + r2
                    row[r] = row.get(r, 0) + v1 * v2
    return out


def _product_trunc(a, ta, b, tb):
    """Window of a product; ``None`` marks an exact (untruncated) factor."""
    va = min(a) if a else ta
    vb = min(b) if b else tb
    cands = []
    if tb is not None and va is not None:
        cands.append(va + tb)
    if ta is not None and vb is not None:
        cands.append(vb + ta)
    return min(cands)


def jacobi_mul(phi, psi):
    """Two-variable Cauchy product; weights and indices add."""
    ql = lcm(phi.qlattice, psi.qlattice)
    zl = lcm(phi.zlattice, psi.zlattice)
    a, ta = phi._rescaled(ql, zl)
    b, tb = psi._rescaled(ql, zl)
    trunc = _product_trunc(a, ta, b, tb)
    if not a or not b:
        terms = {}
    elif _all_int(a) and _all_int(b) and len(a) * len(b) > 4:
        terms = _mul_int_terms(a, b, trunc)
    else:
        terms = _mul_generic_terms(a, b, trunc)
    return JacobiExpansion(terms, trunc, phi.weight + psi.weight,
                           phi.index + psi.index, ql, zl)


def scale_by_form(phi, f, weight=0):
    """Multiply by a q-series ``f`` (a modular form of the given ``weight``)."""
    ql = lcm(phi.qlattice, f.lattice)
    a, ta = phi._rescaled(ql, phi.zlattice)
    fc, tf = f._on_lattice(ql)
    trunc = _product_trunc(a, ta, fc, tf)
    terms = {}
    if a and fc:
        if _all_int(a) and all(type(v) is int for v in fc.values()):
            R = _radius(a)
            maxf = sum(abs(v) for m, v in fc.items() if m < trunc)
            bound = maxf * max(max(abs(v) for v in p.values()) for p in a.values())
            w = _packing.slot_width(bound)
            pa = _pack_levels(a, R, w, [n for n in a if n < trunc])
            acc = {}
            for m, c in fc.items():
                for n, x in pa.items():
                    k = m + n
                    if k < trunc:
                        acc[k] = acc.get(k, 0) + c * x
            terms = _unpack_levels(acc, R, w)
        else:
            for m, c in fc.items():
                for n, p in a.items():
                    k = m + n
                    if k >= trunc:
                        continue
                    row = terms.setdefault(k, {})
                    for r, v in p.items():
                        row[r] = row.get(r, 0) + c * v
    return JacobiExpansion(terms, trunc, phi.weight + weight, phi.index, ql, phi.zlattice)


# -- generators ---------------------------------------------------------------

def gen_a(qmax):
    """Weak Jacobi form ``a = phi_{-2,1}`` below ``q^qmax`` (triple-product formula).

    ``a = (zeta - 2 + zeta^-1) prod_n (1 - q^n zeta)^2 (1 - q^n zeta^-1)^2 / (1 - q^n)^4``
    """
    if qmax < 1:
        raise ValueError("qmax must be at least 1")
    # prod_n (1 - (zeta + 1/zeta) q^n + q^(2n)), grown one factor at a time
    prod = {0: {0: 1}}
    for n in range(1, qmax):
        new = {k: dict(p) for k, p in prod.items()}
        for k, p in prod.items():
            if k + n < qmax:
                row = new.setdefault(k + n, {})
                for r, v in p.items():
                    row[r + 1] = row.get(r + 1, 0) - v
                    row[r - 1] = row.get(r - 1, 0) - v
            if k + 2 * n < qmax:
                row = new.setdefault(k + 2 * n, {})
                for r, v in p.items():
                    row[r] = row.get(r, 0) + v
        prod = new
    half = JacobiExpansion(prod, qmax)
    base = JacobiExpansion({0: {1: 1, 0: -2, -1: 1}}, qmax)
    out = scale_by_form(base * half * half, euler_product(qmax) ** -4)
    return JacobiExpansion(out.scaled_terms(), out.qtrunc, -2, 1)


def _theta_z(kind, qmax8):
    """theta_2/3/4(tau, z) on the (1/8, 1/2) lattice, q-keys below ``qmax8``."""
    terms = {}
    m = 0
    if kind == 2:
        while (2 * m + 1) ** 2 < qmax8:
            terms[(2 * m + 1) ** 2] = {2 * m + 1: 1, -2 * m - 1: 1}
            m += 1
    else:
        while 4 * m * m < qmax8:
            sign = -1 if (kind == 4 and m % 2) else 1
            terms[4 * m * m] = {2 * m: sign, -2 * m: sign}
            m += 1
    return JacobiExpansion(terms, qmax8, 0, 0, qlattice=8, zlattice=2)


def _theta_null(kind, qmax8):
    t = _theta_z(kind, qmax8)
    coeffs = {n: sum(p.values()) for n, p in t.scaled_terms().items()}
    return FourierSeries(coeffs, t.qtrunc, t.qlattice)


def gen_b(qmax):
    """Weak Jacobi form ``b = phi_{0,1} = 4 (f_2^2 + f_3^2 + f_4^2)``, ``f_i = theta_i(z)/theta_i(0)``.

    Built on the internal (1/8, 1/2) exponent lattice; the sum must come out
    integral on the unit lattice or :class:`NonIntegralResult` is raised.
    """
    if qmax < 1:
        raise ValueError("qmax must be at least 1")
    qmax8 = 8 * (qmax + 1)
    total = None
    for kind in (2, 3, 4):
        th = _theta_z(kind, qmax8)
        sq = th * th
        sq = JacobiExpansion(sq.scaled_terms(), sq.qtrunc, 0, 0, sq.qlattice, sq.zlattice)
        f2 = scale_by_form(sq, _theta_null(kind, qmax8) ** -2)
        total = f2 if total is None else total + f2
    b = (total * 4).finalize(qmax)
    if b.qtrunc < qmax:
        raise OutOfWindow("theta window too small for the requested precision")
    return JacobiExpansion(b.scaled_terms(), b.qtrunc, 0, 1)
