"""The weight-2 index-p weak Jacobi forms phi_p and their coefficients B(d).

``phi_p`` is pinned down by its singular part: ``B(-1) = 1``, ``B(0) = -2``
and ``B(d) = 0`` for every other ``d < 0``, where ``c(n, r) = B(4pn - r^2)``.
It is found inside the span of ``E4^i E6^j a^k b^(p-k)`` by an exact linear
solve; the traces are then ``t^(p)(d) = -B(d)``.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, isqrt, lcm

from .arith import GENUS_ZERO_PRIMES, is_square_mod
from .errors import (
    ConsistencyError, Inconsistent, InconsistentRepresentations, NonIntegralResult,
    NonTrivialKernel, NoSolution, OutOfWindow, UnsupportedDiscriminant, UnsupportedLevel,
)
from .forms import eisenstein_e4, eisenstein_e6
from .jacobi import JacobiExpansion, gen_a, gen_b, scale_by_form
from .qlinalg import solve_affine
from .series import FourierSeries, dense_mul

__all__ = [
    "CoefficientTable", "PhiP", "singular_classes", "modular_monomials",
    "construct_phi_p", "extract_B", "trace_star", "representations",
    "check_phi_invariants", "singular_audit", "save_phi", "load_phi",
    "CACHE_FORMAT", "CACHE_VERSION",
]

CACHE_FORMAT = "singular-traces/phi-expansion"
CACHE_VERSION = 1
GENERATOR_ID = "E4E6-ab-exact-solve/1"


def _check_level(p):
    if p not in GENUS_ZERO_PRIMES:
        raise UnsupportedLevel(f"{p} is not a prime with Gamma_0(p)* of genus zero")


def singular_classes(p):
    """Pairs ``(n, r)``, ``0 <= n``, ``1 <= r <= p``, with ``4pn - r^2 < 0``, plus ``(0, 0)``."""
    _check_level(p)
    out = [(0, 0)]
    for r in range(1, p + 1):
        n = 0
        while 4 * p * n - r * r < 0:
            out.append((n, r))
            n += 1
    return sorted(out)


def modular_monomials(k):
    """Exponent pairs ``(i, j)`` with ``E4^i E6^j`` of weight ``k``: a basis of M_k."""
    return [(i, j) for j in range(k // 6 + 1) for i in [(k - 6 * j) // 4]
            if 4 * i + 6 * j == k]


def representations(p, d, qtrunc):
    """All ``(n, r)``, ``r >= 0``, ``n < qtrunc``, with ``4pn - r^2 = d``."""
    reps = []
    r = 0
    while True:
        num = d + r * r
        if num >= 4 * p * qtrunc:
            break
        if num >= 0 and num % (4 * p) == 0:
            reps.append((num // (4 * p), r))
        r += 1
    return reps


@dataclass(frozen=True)
class CoefficientTable:
    """``d -> B(d)`` for ``-1 <= d < dmax``; absent keys are zero."""

    p: int
    values: dict
    dmax: int

    def __getitem__(self, d):
        if d >= self.dmax:
            raise OutOfWindow(f"B({d}) needs a table valid beyond d = {self.dmax - 1}")
        if d < -1:
            return 0
        return self.values.get(d, 0)

    def supported(self, d):
        return is_square_mod(-d, 4 * self.p)


@dataclass(frozen=True)
class PhiP:
    p: int
    expansion: JacobiExpansion
    btable: CoefficientTable = field(repr=False)

    def B(self, d):
        return extract_B(self, d)

    def trace(self, d):
        return trace_star(self, d)


# -- invariants ---------------------------------------------------------------

def check_phi_invariants(expansion, p):
    """Validate symmetry, D-dependence, support and the singular part.

    Returns the table ``{D: c}`` over every discriminant seen in the window.
    Raises :class:`ConsistencyError` describing the first violation.
    """
    if expansion.qlattice != 1 or expansion.zlattice != 1:
        raise ConsistencyError("phi_p must live on the unit exponent lattice")
    if (expansion.weight, expansion.index) != (2, p):
        raise ConsistencyError(f"expected weight 2 and index {p}")
    terms = expansion.scaled_terms()
    if any(n < 0 for n in terms):
        raise ConsistencyError("phi_p has a pole in q")
    by_d = {}
    for n in range(expansion.qtrunc):
        row = terms.get(n, {})
        R = isqrt(4 * p * n + p * p)
        for r, v in row.items():
            if type(v) is not int:
                raise NonIntegralResult(f"c({n},{r}) = {v} is not an integer")
            if abs(r) > R:
                raise ConsistencyError(f"c({n},{r}) nonzero below D = -p^2")
            if row.get(-r, 0) != v:
                raise ConsistencyError(f"c({n},{r}) != c({n},{-r})")
        for r in range(-R, R + 1):
            D = 4 * p * n - r * r
            v = row.get(r, 0)
            if by_d.setdefault(D, v) != v:
                raise ConsistencyError(f"coefficients at D = {D} disagree")
    for D, v in by_d.items():
        if D < 0 and v != (1 if D == -1 else 0):
            raise ConsistencyError(f"singular coefficient B({D}) = {v}")
    if by_d.get(0) != -2:
        raise ConsistencyError(f"B(0) = {by_d.get(0)}, expected -2")
    return by_d


def singular_audit(phi):
    """Summary of the singular-part conditions, as checked on the expansion."""
    p = phi.p
    classes = singular_classes(p)
    negative = [(n, r) for n, r in classes if 4 * p * n - r * r < 0]
    values = {(n, r): phi.expansion.coefficient(n, r) for n, r in classes}
    ok = all(v == (1 if 4 * p * n - r * r == -1 else (-2 if (n, r) == (0, 0) else 0))
             for (n, r), v in values.items())
    return {
        "p": p,
        "negative_classes": len(negative),
        "conditions": len(classes),
        "B(-1)": phi.btable[-1],
        "B(0)": phi.btable[0],
        "ok": ok,
    }


# -- construction -------------------------------------------------------------

def _dense(series, n):
    return [series.coefficient(k) for k in range(n)]


def _solve_coefficients(p, wsolve):
    """Exact coefficients of phi_p on the E4^i E6^j a^k b^(p-k) basis."""
    classes = singular_classes(p)
    nrows = max(n for n, _ in classes) + 1
    a, b = gen_a(wsolve), gen_b(wsolve)
    apow = [JacobiExpansion.one(wsolve)]
    bpow = [JacobiExpansion.one(wsolve)]
    for _ in range(p):
        apow.append(apow[-1] * a)
        bpow.append(bpow[-1] * b)
    e4 = _dense(eisenstein_e4(wsolve), nrows)
    e6 = _dense(eisenstein_e6(wsolve), nrows)
    e4pow, e6pow = [[1]], [[1]]
    columns, labels = [], []
    for k in range(1, p + 1):
        weight = 2 + 2 * k
        mons = modular_monomials(weight)
        if not mons:
            continue
        prod = apow[k] * bpow[p - k]
        table = [[prod.coefficient(n, r) for r in range(p + 1)] for n in range(nrows)]
        for i, j in mons:
            while len(e4pow) <= i:
                e4pow.append(dense_mul(e4pow[-1], e4, nrows))
            while len(e6pow) <= j:
                e6pow.append(dense_mul(e6pow[-1], e6, nrows))
            f = dense_mul(e4pow[i], e6pow[j], nrows)
            f += [0] * (nrows - len(f))
            columns.append([sum(f[m] * table[n - m][r] for m in range(n + 1))
                            for n, r in classes])
            labels.append((k, i, j))
    rows = [[col[t] for col in columns] for t in range(len(classes))]
    rhs = [-2 if c == (0, 0) else (1 if c == (0, 1) else 0) for c in classes]
    try:
        x, kernel = solve_affine(rows, rhs)
    except Inconsistent as exc:
        raise NoSolution(f"no weak form of index {p} has the required singular part") from exc
    if kernel:
        raise NonTrivialKernel(f"solution for p={p} is not unique (kernel dim {len(kernel)})")
    return labels, x, len(classes)


def construct_phi_p(p, qmax):
    """Build ``phi_p`` exactly below ``q^qmax`` and tabulate its coefficients ``B(d)``."""
    _check_level(p)
    wsolve = ceil(p / 4) + 2
    if qmax < wsolve:
        raise ValueError(f"qmax must be at least {wsolve} for p = {p}")
    labels, x, _ = _solve_coefficients(p, wsolve)
    den = lcm(*(Fraction(v).denominator for v in x))
    e4, e6 = eisenstein_e4(qmax), eisenstein_e6(qmax)
    forms = {}
    pw4, pw6 = {0: FourierSeries.constant(1, qmax)}, {0: FourierSeries.constant(1, qmax)}
    for (k, i, j), v in zip(labels, x):
        if not v:
            continue
        if i not in pw4:
            pw4[i] = e4 ** i
        if j not in pw6:
            pw6[j] = e6 ** j
        term = (pw4[i] * pw6[j]).scale(v * den)
        forms[k] = term if k not in forms else forms[k] + term
    a, b = gen_a(qmax), gen_b(qmax)
    one = JacobiExpansion.one(qmax)
    zero = FourierSeries({}, qmax)
    # Horner in a: acc_k = acc_{k+1} * a + F_k b^(p-k)
    acc = scale_by_form(one, forms.get(p, zero), 2 + 2 * p)
    bk = one
    for k in range(p - 1, 0, -1):
        bk = bk * b
        acc = acc * a + scale_by_form(bk, forms.get(k, zero), 2 + 2 * k)
    full = (acc * a).scale(Fraction(1, den))
    expansion = JacobiExpansion(full.scaled_terms(), full.qtrunc, 2, p)
    return _wrap(p, expansion)


def _wrap(p, expansion):
    by_d = check_phi_invariants(expansion, p)
    dmax = 4 * p * expansion.qtrunc - p * p
    values = {d: v for d, v in by_d.items() if -1 <= d < dmax and v}
    return PhiP(p, expansion, CoefficientTable(p, values, dmax))


# -- coefficient access -------------------------------------------------------

def extract_B(phi, d):
    """``B(d)``: the common value of ``c(n, r)`` over all in-window ``4pn - r^2 = d``."""
    p = phi.p
    if not is_square_mod(-d, 4 * p):
        raise UnsupportedDiscriminant(f"-{d} is not a square modulo {4 * p}")
    reps = representations(p, d, phi.expansion.qtrunc)
    if not reps:
        raise OutOfWindow(f"B({d}) has no representation below q^{phi.expansion.qtrunc}")
    values = {phi.expansion.coefficient(n, r) for n, r in reps}
    if len(values) != 1:
        raise InconsistentRepresentations(f"B({d}) takes values {sorted(values)}")
    return values.pop()


def trace_star(phi, d):
    """``t^(p)(d) = -B(d)``, with ``t^(p)(d) = 0`` for ``d < -1``."""
    if d < -1:
        return 0
    return -extract_B(phi, d)


# -- cache file ---------------------------------------------------------------

def save_phi(phi, path):
    """Write the versioned JSON expansion cache."""
    terms = []
    for n, row in sorted(phi.expansion.scaled_terms().items()):
        terms.append([n, [[r, str(v)] for r, v in sorted(row.items())]])
    doc = {
        "format": CACHE_FORMAT,
        "version": CACHE_VERSION,
        "p": phi.p,
        "weight": 2,
        "index": phi.p,
        "qmax": phi.expansion.qtrunc,
        "generator": GENERATOR_ID,
        "terms": terms,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)


def load_phi(path):
    """Read a cache file and revalidate every invariant before returning it."""
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("format") != CACHE_FORMAT or doc.get("version") != CACHE_VERSION:
        raise ConsistencyError("unrecognized expansion cache format")
    p = doc["p"]
    _check_level(p)
    if doc["weight"] != 2 or doc["index"] != p:
        raise ConsistencyError("cache does not hold a weight-2 form of index p")
    terms = {}
    for n, row in doc["terms"]:
        terms[int(n)] = {int(r): int(v) for r, v in row}
    expansion = JacobiExpansion(terms, int(doc["qmax"]), 2, p)
    return _wrap(p, expansion)
