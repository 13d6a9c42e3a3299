"""Exact linear algebra over Q.

Small systems go through fraction-preserving Gauss-Jordan elimination.
Large integer systems of full column rank are solved by p-adic (Dixon)
lifting: one inverse modulo a word-sized prime, then cheap integer
matrix-vector steps, with rational reconstruction and an exact check of
every equation at the end.  Full column rank modulo a prime certifies full
rank over Q, so the empty kernel returned by the fast path is a proof, not a
guess.
"""

from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .errors import Inconsistent
from .series import as_rational

__all__ = ["RationalMatrix", "solve_affine"]

# primes just below 2**26: products of two residues summed over ~1000 terms
# still fit in int64
_PRIMES = (67108859, 67108837, 67108819, 67108777, 67108763)

# systems at least this wide try the modular path first
_DIXON_MIN_COLS = 40


class RationalMatrix:
    """Dense matrix of exact rationals."""

    def __init__(self, rows):
        rows = [[as_rational(x) for x in row] for row in rows]
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        if any(len(r) != self.cols for r in rows):
            raise ValueError("ragged matrix")
        self.entries = rows

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, vec):
        return [as_rational(sum(a * x for a, x in zip(row, vec))) for row in self.entries]

    def is_integral(self):
        return all(type(x) is int for row in self.entries for x in row)

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols})"


def _bits(x):
    if isinstance(x, Fraction):
        return x.numerator.bit_length() + x.denominator.bit_length()
    return abs(x).bit_length()


def _rref_solve(A, rhs):
    """Gauss-Jordan over Q; pivots chosen by smallest bit size."""
    m, n = A.rows, A.cols
    M = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(A.entries, rhs)]
    pivots = []
    row = 0
    for col in range(n):
        best = None
        for i in range(row, m):
            v = M[i][col]
            if v and (best is None or _bits(v) < _bits(M[best][col])):
                best = i
        if best is None:
            continue
        M[row], M[best] = M[best], M[row]
        piv = M[row][col]
        M[row] = [x / piv for x in M[row]]
        prow = M[row]
        for i in range(m):
            if i != row:
                f = M[i][col]
                if f:
                    M[i] = [x - f * y for x, y in zip(M[i], prow)]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for i in range(row, m):
        if M[i][n]:
            raise Inconsistent("affine system has no solution")
    particular = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        particular[col] = M[i][n]
    free = [c for c in range(n) if c not in set(pivots)]
    kernel = []
    for fcol in free:
        v = [Fraction(0)] * n
        v[fcol] = Fraction(1)
        for i, col in enumerate(pivots):
            v[col] = -M[i][fcol]
        kernel.append([as_rational(x) for x in v])
    return [as_rational(x) for x in particular], kernel


# -- modular machinery --------------------------------------------------------

def _independent_rows_mod(A, P):
    """Indices of ``cols`` rows independent mod P, or ``None`` if rank < cols."""
    M = np.array([[x % P for x in row] for row in A], dtype=np.int64)
    m, n = M.shape
    order = list(range(m))
    r = 0
    for c in range(n):
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            return None
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
            order[r], order[k] = order[k], order[r]
        inv = pow(int(M[r, c]), -1, P)
        M[r] = (M[r] * inv) % P
        below = M[r + 1:, c].copy()
        if below.any():
            M[r + 1:] = (M[r + 1:] - np.outer(below, M[r]) % P) % P
        r += 1
    return sorted(order[:n])


def _inverse_mod(S, P):
    n = len(S)
    M = np.zeros((n, 2 * n), dtype=np.int64)
    M[:, :n] = np.array([[x % P for x in row] for row in S], dtype=np.int64)
    M[:, n:] = np.eye(n, dtype=np.int64)
    for c in range(n):
        k = c + int(np.nonzero(M[c:, c])[0][0])
        if k != c:
            M[[c, k]] = M[[k, c]]
        inv = pow(int(M[c, c]), -1, P)
        M[c] = (M[c] * inv) % P
        col = M[:, c].copy()
        col[c] = 0
        M = (M - np.outer(col, M[c]) % P) % P
    return M[:, n:]


def _ratrecon(u, m):
    """Rational ``a/b`` with ``a = u b mod m`` and ``|a|, b <= sqrt(m/2)``, or None."""
    bound = isqrt(m // 2)
    r0, r1 = m, u % m
    s0, s1 = 0, 1
    while r1 > bound:
        qt = r0 // r1
        r0, r1 = r1, r0 - qt * r1
        s0, s1 = s1, s0 - qt * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return Fraction(r1, s1)


def _reconstruct(X, mod):
    out = []
    den = 1
    for u in X:
        # reuse the running denominator: most entries share it
        f = _ratrecon(u * den % mod, mod)
        if f is None:
            return None
        f = f / den
        den = den * f.denominator // gcd(den, f.denominator)
        out.append(f)
    return out


def _dixon(A, rhs, P, max_steps):
    """Full-column-rank integer system ``A x = rhs``; ``None`` if rank-deficient mod P."""
    rows = _independent_rows_mod(A, P)
    if rows is None:
        return None
    S = [A[i] for i in rows]
    b = [rhs[i] for i in rows]
    C = _inverse_mod(S, P)
    S_obj = np.array(S, dtype=object)
    n = len(S)
    X = [0] * n
    r = list(b)
    modulus = 1
    step = 0
    check_at = 4
    while step < max_steps:
        rv = np.array([x % P for x in r], dtype=np.int64)
        xi = (C @ rv) % P
        xi_int = [int(v) for v in xi]
        Sx = S_obj.dot(np.array(xi_int, dtype=object))
        r = [(ri - si) // P for ri, si in zip(r, Sx)]
        X = [Xk + modulus * v for Xk, v in zip(X, xi_int)]
        modulus *= P
        step += 1
        if step >= check_at:
            check_at = int(check_at * 1.5) + 1
            sol = _reconstruct(X, modulus)
            if sol is not None and _satisfies(S, b, sol):
                if not _satisfies(A, rhs, sol):
                    raise Inconsistent("affine system has no solution")
                return sol
    raise Inconsistent("p-adic lifting did not converge within the Hadamard bound")


def _satisfies(A, rhs, x):
    den = 1
    for f in x:
        den = den * f.denominator // gcd(den, f.denominator)
    xs = [int(f * den) for f in x]
    return all(sum(a * v for a, v in zip(row, xs) if a) == b * den for row, b in zip(A, rhs))


def _hadamard_steps(A, rhs, P):
    n = len(A[0])
    logH = 0.0
    cols = list(zip(*A)) + [tuple(rhs)]
    for col in cols:
        logH += 0.5 * max(sum(x * x for x in col), 1).bit_length()
    # numerator and denominator both bounded by H: need P^k > 2 H^2
    return int(2 * logH / (P.bit_length() - 1)) + 4 + n // 1000


def solve_affine(A, rhs):
    """Solve ``A x = rhs`` exactly.

    Returns ``(particular, kernel_basis)``; an empty kernel basis certifies
    that the solution is unique.  Raises :class:`Inconsistent` when no
    solution exists.
    """
    if not isinstance(A, RationalMatrix):
        A = RationalMatrix(A)
    if len(rhs) != A.rows:
        raise ValueError("right-hand side length does not match the matrix")
    rhs = [as_rational(b) for b in rhs]
    if A.cols >= _DIXON_MIN_COLS and A.rows >= A.cols and A.is_integral():
        den = 1
        for b in rhs:
            if isinstance(b, Fraction):
                den = den * b.denominator // gcd(den, b.denominator)
        ib = [int(b * den) for b in rhs]
        for P in _PRIMES[:3]:
            sol = _dixon(A.entries, ib, P, _hadamard_steps(A.entries, ib, P))
            if sol is not None:
                return [as_rational(x / den) for x in sol], []
    return _rref_solve(A, rhs)
