import pytest

from singular_traces.errors import OutOfWindow, UnsupportedDiscriminant
from singular_traces.forms import (
    EtaQuotientSpec, delta, delta_inv, eisenstein_e4, eisenstein_e6, eta_quotient, j_series,
    sigma, theta_series, trace_level1, trace_table_level1, zagier_g,
)
from singular_traces.series import FourierSeries


def test_sigma_by_divisors():
    assert [sigma(n, 3) for n in (1, 2, 3, 6)] == [1, 9, 28, 252]
    assert sigma(2, 5) == 33


def test_theta_quotient():
    th = eta_quotient([(1, 2), (2, -1)], 10)
    assert th.to_list(0, 10) == [1, -2, 0, 0, 2, 0, 0, 0, 0, -2]
    assert theta_series(5).to_list(0, 5) == [1, -2, 0, 0, 2]
    assert theta_series(5)[2] == 0


def test_theta_identity_to_1000():
    assert eta_quotient([(1, 2), (2, -1)], 1001) == theta_series(1001)


def test_eta_quotient_prefactor():
    spec = EtaQuotientSpec([(4, 6)])
    assert spec.order == 1
    assert spec.weight == 3
    f = eta_quotient(spec, 6)
    assert f.valuation() == 1 and f[1] == 1


def test_delta_identity_to_500():
    d_eta = eta_quotient([(1, 24)], 501)
    assert d_eta.to_list(1, 5) == [1, -24, 252, -1472]
    assert d_eta == delta(501)


def test_eisenstein():
    assert eisenstein_e4(4).to_list(0, 4) == [1, 240, 2160, 6720]
    assert eisenstein_e6(3).to_list(0, 3) == [1, -504, -16632]
    diff = eisenstein_e4(10) ** 3 - eisenstein_e6(10) ** 2
    assert diff.valuation() == 1 and diff[1] == 1728


def test_delta_inverse():
    di = delta_inv(10)
    assert di.to_list(-1, 2) == [1, 24, 324]
    assert (delta(12) * di).agrees_with(FourierSeries.constant(1))


def test_j_series():
    j = j_series(4)
    assert j.to_list(-1, 4) == [1, 744, 196884, 21493760, 864299970]
    assert (j - 744)[0] == 0


def test_zagier_g_leading_terms():
    g = zagier_g(9)
    assert g.to_list(-1, 9) == [-1, 2, 0, 0, -248, 492, 0, 0, -4119, 7256]


def test_zagier_g_support():
    g = zagier_g(400)
    assert all(g[n] == 0 for n in range(1, 400) if n % 4 in (1, 2))
    assert g.is_integral()


def test_trace_level1():
    t = trace_table_level1(50)
    assert trace_level1(3, t) == -248
    assert trace_level1(4, t) == 492
    assert t[12] == 53008
    with pytest.raises(UnsupportedDiscriminant):
        trace_level1(5, t)
    with pytest.raises(OutOfWindow):
        trace_level1(51, t)
