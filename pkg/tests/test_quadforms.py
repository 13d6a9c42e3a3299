from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, settings, strategies as st

from singular_traces.errors import UnsupportedDiscriminant
from singular_traces.quadforms import (
    QuadForm, class_representatives, heegner_point, hurwitz_sum, is_reduced,
    level_bijection_holds, lift_to_level, omega, reduce, valid_discriminants,
)
from singular_traces.oracle import default_beta


def test_reduce_examples():
    assert reduce(QuadForm(2, 2, 1)) == QuadForm(1, 0, 1)
    assert reduce(QuadForm(1, 0, 1)) == QuadForm(1, 0, 1)
    assert reduce(QuadForm(2, -1, 3)) == QuadForm(2, -1, 3)
    assert reduce(QuadForm(2, 1, 3)) == QuadForm(2, 1, 3)


def test_class_representatives():
    assert class_representatives(3) == [QuadForm(1, 1, 1)]
    assert set(class_representatives(23)) == {QuadForm(1, 1, 6), QuadForm(2, 1, 3), QuadForm(2, -1, 3)}
    assert set(class_representatives(12)) == {QuadForm(1, 0, 3), QuadForm(2, 2, 2)}
    with pytest.raises(UnsupportedDiscriminant):
        class_representatives(5)


def test_omega():
    assert omega(QuadForm(1, 0, 1)) == 2
    assert omega(QuadForm(2, 2, 2)) == 3
    assert omega(QuadForm(1, 1, 6)) == 1
    assert omega(QuadForm(2, 2, 1)) == 2


def test_hurwitz_sums():
    assert hurwitz_sum(3) == Fraction(1, 3)
    assert hurwitz_sum(4) == Fraction(1, 2)
    assert hurwitz_sum(23) == 3


def test_heegner_points():
    i = heegner_point(QuadForm(1, 0, 1))
    assert (i.real, i.imag_squared) == (0, 1)
    rho = heegner_point(QuadForm(1, 1, 1))
    assert (rho.real, rho.imag_squared) == (Fraction(-1, 2), Fraction(3, 4))
    pt = heegner_point(QuadForm(2, -1, 1))
    assert (pt.real, pt.imag_squared) == (Fraction(1, 4), Fraction(7, 16))


def test_valid_discriminants():
    assert valid_discriminants(2, 8) == [4, 7, 8]
    assert valid_discriminants(3, 12) == [3, 8, 11, 12]
    assert valid_discriminants(5, 11) == [4, 11]


def test_lift_examples():
    assert lift_to_level(QuadForm(1, 0, 1), 2, 2) == QuadForm(2, 2, 1)
    lifted = lift_to_level(QuadForm(1, 1, 2), 2, 1)
    assert lifted.a % 2 == 0 and reduce(lifted) == QuadForm(1, 1, 2)
    Q = QuadForm(2, 1, 1)
    assert lift_to_level(Q, 2, 1) is Q


def test_lift_rejects_square_divisible():
    # 16 / 4 = 4 is a discriminant
    assert not level_bijection_holds(2, 16)
    assert level_bijection_holds(2, 4) and level_bijection_holds(2, 8)
    with pytest.raises(UnsupportedDiscriminant):
        lift_to_level(QuadForm(1, 0, 4), 2, 0)


unimodular = st.lists(st.sampled_from(["S", "T", "Ti"]), min_size=0, max_size=12)
MATS = {"S": ((0, -1), (1, 0)), "T": ((1, 1), (0, 1)), "Ti": ((1, -1), (0, 1))}


@st.composite
def forms(draw):
    a = draw(st.integers(1, 40))
    c = draw(st.integers(1, 40))
    bmax = isqrt(4 * a * c - 1)
    b = draw(st.integers(-bmax, bmax))
    return QuadForm(a, b, c)


@settings(max_examples=200, deadline=None)
@given(forms(), unimodular)
def test_reduce_invariance(Q, word):
    R = reduce(Q)
    assert is_reduced(R) and reduce(R) == R
    assert R.discriminant == Q.discriminant
    T = Q
    for w in word:
        T = T.act(MATS[w])
    assert reduce(T) == R


def test_class_counts_brute_force():
    for d in range(3, 201):
        if d % 4 not in (0, 3):
            continue
        bound = isqrt(d // 3) + 1
        brute = set()
        for a in range(1, bound + 1):
            for b in range(-bound, bound + 1):
                if (b * b + d) % (4 * a) == 0:
                    Q = QuadForm(a, b, (b * b + d) // (4 * a))
                    brute.add(reduce(Q))
        assert len(class_representatives(d)) == len(brute)
        assert set(class_representatives(d)) == brute


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 71])
def test_lift_properties(p):
    for d in valid_discriminants(p, 120):
        if not level_bijection_holds(p, d):
            continue
        beta = default_beta(p, d)
        for Q in class_representatives(d):
            L = lift_to_level(Q, p, beta)
            assert L.a % p == 0 and (L.b - beta) % (2 * p) == 0
            assert L.d == d and reduce(L) == reduce(Q)
