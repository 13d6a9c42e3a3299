from hypothesis import given, settings, strategies as st

from singular_traces.jacobi import JacobiExpansion, gen_a, gen_b, jacobi_mul, scale_by_form
from singular_traces.forms import eisenstein_e4
from singular_traces.series import FourierSeries


def row(phi, n):
    return dict(phi.term(n).items())


def test_gen_a_printed_terms():
    a = gen_a(4)
    assert (a.weight, a.index) == (-2, 1)
    assert row(a, 0) == {-1: 1, 0: -2, 1: 1}
    assert row(a, 1) == {-2: -2, -1: 8, 0: -12, 1: 8, 2: -2}
    assert a[2, 3] == 1 and a[2, 2] == -12 and a[2, 1] == 39 and a[2, 0] == -56
    assert a[3, 1] == 152 and a[3, 0] == -208


def test_gen_b_printed_terms():
    b = gen_b(4)
    assert (b.weight, b.index) == (0, 1)
    assert b.is_integral() and b.qlattice == 1 and b.zlattice == 1
    assert row(b, 0) == {-1: 1, 0: 10, 1: 1}
    # printed with a slip in the last two monomials; the symmetric reading
    assert row(b, 1) == {-2: 10, -1: -64, 0: 108, 1: -64, 2: 10}
    assert [b[2, r] for r in (3, 2, 1, 0)] == [1, 108, -513, 808]
    assert [b[3, r] for r in (3, 2, 1, 0)] == [-64, 808, -2752, 4016]


def _elliptic_ok(phi, N, lams=(-2, -1, 1, 2)):
    checked = 0
    for n, r, v in list(phi.items()):
        for lam in lams:
            n2, r2 = n + r * lam + N * lam * lam, r + 2 * N * lam
            if 0 <= n2 < phi.qtrunc:
                assert phi[n2, r2] == v
                checked += 1
    return checked


def test_generators_elliptic_shift_and_symmetry():
    for phi in (gen_a(12), gen_b(12)):
        assert _elliptic_ok(phi, 1) > 0
        for n in range(12):
            assert phi.term(n).is_symmetric()


def test_products_grading():
    a, b = gen_a(5), gen_b(5)
    ab = jacobi_mul(a, b)
    assert (ab.weight, ab.index) == (-2, 2)
    assert a * JacobiExpansion.one(5) == a
    assert row(a * a, 0) == {-2: 1, -1: -4, 0: 6, 1: -4, 2: 1}


def test_scale_by_form():
    a = gen_a(6)
    s = scale_by_form(a, eisenstein_e4(6), 4)
    assert s.weight == 2 and s.index == 1
    assert row(s, 0) == row(a, 0)
    assert scale_by_form(a, FourierSeries({}, 6)).is_zero()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(3, 7))
def test_monomials_are_weak_forms(i, j, qmax):
    phi = JacobiExpansion.one(qmax)
    a, b = gen_a(qmax), gen_b(qmax)
    for _ in range(i):
        phi = phi * a
    for _ in range(j):
        phi = phi * b
    N = i + j
    assert phi.weight == -2 * i and phi.index == N
    for n, r, _ in phi.items():
        assert r * r <= 4 * N * n + N * N
    if N:
        _elliptic_ok(phi, N, (-1, 1))
