from fractions import Fraction

import mpmath
import pytest

from singular_traces.errors import UnsupportedDiscriminant, UnsupportedLevel
from singular_traces.forms import trace_table_level1
from singular_traces.oracle import (
    HauptmodulSpec, PrecisionContext, default_beta, eval_e4, eval_e6, eval_eta,
    eval_hauptmodul, eval_j, point_value, trace_oracle_level1, trace_oracle_star,
)
from singular_traces.quadforms import HeegnerPoint, level_bijection_holds, valid_discriminants

CTX = PrecisionContext()


def test_eta_at_i_closed_form():
    mp = CTX.mp()
    v, err = eval_eta(mp.mpc(0, 1), CTX)
    exact = mp.gamma(mp.mpf(1) / 4) / (2 * mp.pi ** (mp.mpf(3) / 4))
    assert abs(v - exact) < mp.mpf(2) ** -200
    assert err < mp.mpf(2) ** -200


def test_eta_translation():
    mp = CTX.mp()
    t = mp.mpc(0, 0.5)
    lhs, _ = eval_eta(t + 1, CTX)
    rhs, _ = eval_eta(t, CTX)
    assert abs(lhs - mp.expjpi(mp.mpf(1) / 12) * rhs) < mp.mpf(2) ** -200


def test_delta_two_ways():
    mp = CTX.mp()
    i = mp.mpc(0, 1)
    eta, _ = eval_eta(i, CTX)
    e4, _ = eval_e4(i, CTX)
    e6, _ = eval_e6(i, CTX)
    assert abs(eta ** 24 - (e4 ** 3 - e6 ** 2) / 1728) < mp.mpf(2) ** -200


def test_j_classical_values():
    mp = CTX.mp()
    assert abs(eval_j(mp.mpc(0, 1), CTX)[0] - 1728) < 1e-60
    assert abs(eval_j((-1 + mp.sqrt(-3)) / 2, CTX)[0]) < 1e-60
    assert abs(eval_j(mp.sqrt(-2), CTX)[0] - 8000) < 1e-60


def test_hauptmodul_points():
    assert point_value(2, HeegnerPoint(2, -2, 4)) == -104
    assert point_value(2, HeegnerPoint(2, -2, 4), Fraction(1, 2)) == -52
    assert point_value(2, HeegnerPoint(2, 0, 8)) == 152
    assert point_value(3, HeegnerPoint(3, 3, 3), Fraction(1, 3)) == -14
    assert point_value(3, HeegnerPoint(3, -1, 11)) == 22
    with pytest.raises(UnsupportedLevel):
        eval_hauptmodul(11, 1j)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
def test_hauptmodul_series(p):
    f = HauptmodulSpec(p).series(30)
    assert f[-1] == 1 and f[0] == 0
    assert f.is_integral()


def test_trace_oracle_examples():
    assert [trace_oracle_level1(d) for d in (3, 4, 7, 11)] == [-248, 492, -4119, -33512]
    assert trace_oracle_star(2, 7) == -23
    assert trace_oracle_star(3, 11) == 22
    assert trace_oracle_star(5, 11) == -12
    with pytest.raises(UnsupportedDiscriminant):
        trace_oracle_star(2, 5)
    with pytest.raises(UnsupportedLevel):
        trace_oracle_star(11, 7)


def test_level1_agrees_with_series():
    table = trace_table_level1(101)
    for d in range(3, 101):
        if d % 4 in (0, 3):
            assert trace_oracle_level1(d) == table[d]


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
def test_star_agrees_with_series_and_beta(phi_for, p):
    phi = phi_for(p, 10)
    for d in valid_discriminants(p, 50):
        if d % (p * p) == 0 and not level_bijection_holds(p, d):
            continue
        beta = default_beta(p, d)
        v = trace_oracle_star(p, d, beta=beta)
        assert v == phi.trace(d)
        assert trace_oracle_star(p, d, beta=(-beta) % (2 * p)) == v


def test_precision_doubling():
    hi = CTX.doubled()
    for d in (23, 47, 71):
        assert trace_oracle_level1(d, hi) == trace_oracle_level1(d, CTX)
    for p, d in ((2, 23), (5, 19), (13, 43)):
        assert trace_oracle_star(p, d, hi) == trace_oracle_star(p, d, CTX)
