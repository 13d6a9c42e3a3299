import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from singular_traces.arith import kronecker
from singular_traces.errors import OutOfWindow
from singular_traces.forms import trace_table_level1
from singular_traces.hecke import (
    CongruenceReport, PlusSpaceTable, auto_qprec, b_ell, hecke, is_split, table_from_level1,
    table_from_phi, verify_level1, verify_star,
)
from singular_traces.phi import CoefficientTable


def test_kronecker_examples():
    assert kronecker(-23, 3) == 1
    assert kronecker(0, 3) == 0
    assert kronecker(-4, 3) == -1


def test_kronecker_matches_euler():
    for l in (3, 5, 7, 11, 13, 101):
        for a in range(-60, 60):
            e = pow(a % l, (l - 1) // 2, l)
            assert kronecker(a, l) == (0 if a % l == 0 else (1 if e == 1 else -1))


def test_kronecker_multiplicative():
    rng = random.Random(7)
    primes = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 97]
    for _ in range(500):
        a, b = rng.randint(-10 ** 6, 10 ** 6), rng.randint(-10 ** 6, 10 ** 6)
        l = rng.choice(primes)
        assert kronecker(a * b, l) == kronecker(a, l) * kronecker(b, l)


def test_is_split():
    assert is_split(3, 23)
    assert not is_split(3, 3)
    assert not is_split(3, 4)


def test_hecke_on_g2(phi_for):
    phi = phi_for(2, auto_qprec(2, 3, 30))
    t = table_from_phi(phi)
    h = hecke(t, 3)
    assert h.principal_part == {-1: 1, -9: 3}
    assert h[23] == -113643 + 94
    assert b_ell(phi.btable, 3, 23) == -113643 + 94


@pytest.mark.parametrize("p,l", [(2, 3), (2, 5), (3, 5), (5, 3), (7, 3)])
def test_hecke_agrees_with_b_ell_and_chain(phi_for, p, l):
    phi = phi_for(p, auto_qprec(p, l, 30))
    B = phi.btable
    h = hecke(table_from_phi(phi), l)
    assert h.principal_part == {-1: 1, -l * l: l}
    for d in range(0, h.dmax):
        if d % 4 not in (0, 3):
            continue
        assert h[d] == b_ell(B, l, d)
        third = l * B[d // (l * l)] if d % (l * l) == 0 else 0
        assert -B[l * l * d] == -b_ell(B, l, d) + kronecker(-d, l) * B[d] + third


def test_hecke_zero_and_window():
    z = PlusSpaceTable(1, 4, {}, 100)
    assert hecke(z, 3).values == {}
    with pytest.raises(OutOfWindow):
        hecke(z, 3, dmax=50)
    with pytest.raises(ValueError):
        hecke(PlusSpaceTable(1, 12, {}, 100), 3)


def test_b_ell_third_term():
    B = CoefficientTable(2, {23: -94, 207: 5, 1863: 11}, 2000)
    assert b_ell(B, 3, 207) == 11 + kronecker(-207, 3) * 5 + 3 * -94
    assert b_ell(CoefficientTable(2, {}, 2000), 3, 23) == 0


def test_level1_hecke_principal_part():
    g = trace_table_level1(500)
    h = hecke(table_from_level1(g), 3)
    assert h.principal_part == {-1: -1, -9: -3}


def test_verify_level1_examples():
    r = verify_level1(3, 50)
    assert r.fails == 0
    assert r.entry(4).verdict == "SKIP"
    r7 = verify_level1(7, 50)
    assert r7.entry(3).split and r7.entry(3).verdict == "PASS"


def test_verify_star_examples(phi_for):
    r = verify_star(2, 3, 23, phi_for(2, auto_qprec(2, 3, 23)))
    e = r.entry(23)
    assert e.trace == 113643 and e.residue == 0 and e.verdict == "PASS"
    phi = phi_for(2, auto_qprec(2, 3, 47))
    r = verify_star(2, 3, 47, phi)
    assert r.entry(47).verdict == "PASS"
    with pytest.raises(ValueError):
        verify_star(3, 3, 20)
    with pytest.raises(ValueError):
        verify_star(3, 4, 20)


def test_report_serialization(phi_for):
    r = verify_star(2, 5, 30, phi_for(2, auto_qprec(2, 5, 30)))
    doc = json.loads(r.to_json())
    assert doc["level"] == "p" and doc["p"] == 2 and doc["l"] == 5 and doc["fails"] == 0
    assert all(isinstance(e["trace"], str) for e in doc["entries"])
    assert 4 in doc["flagged"]
    back = CongruenceReport.from_dict(doc)
    assert back.entries == r.entries
    rows = r.to_csv().splitlines()
    assert rows[0] == "d,split,trace,residue,verdict"
    assert len(rows) == len(r.entries) + 1


@settings(max_examples=50, deadline=None)
@given(st.integers(-200, 200), st.sampled_from([3, 5, 7, 11]))
def test_verdict_rule(trace, l):
    from singular_traces.hecke import _entry
    for d in (3, 4, 7, 8):
        e = _entry(l, d, trace)
        if not e.split:
            assert e.verdict == "SKIP"
        else:
            assert e.verdict == ("PASS" if trace % l == 0 else "FAIL")
