import json
from fractions import Fraction

import pytest

from singular_traces.errors import ConsistencyError, OutOfWindow, UnsupportedDiscriminant, UnsupportedLevel
from singular_traces.forms import eisenstein_e4, eisenstein_e6
from singular_traces.jacobi import gen_a, gen_b, scale_by_form
from singular_traces.phi import (
    _solve_coefficients, check_phi_invariants, construct_phi_p, extract_B, load_phi,
    modular_monomials, representations, save_phi, singular_audit, singular_classes, trace_star,
)

KNOWN_TRACES = {
    2: {4: -52, 7: -23, 8: 152, 12: -496, 15: -1, 16: 1036, 20: -2256, 23: -94, 24: 4400, 28: -8192},
    3: {3: -14, 8: -34, 11: 22, 12: 52, 15: -138, 20: -116, 23: 115, 24: 348, 27: -482},
    5: {4: -8, 11: -12, 15: -38, 16: -6, 19: 20, 20: 12, 24: -44},
}


def test_singular_classes():
    assert singular_classes(2) == [(0, 0), (0, 1), (0, 2)]
    assert singular_classes(5) == [(0, 0), (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 5)]
    assert len(singular_classes(13)) - 1 == 23
    with pytest.raises(UnsupportedLevel):
        singular_classes(4)


def test_modular_monomials():
    assert modular_monomials(4) == [(1, 0)]
    assert modular_monomials(12) == [(3, 0), (0, 2)]
    assert modular_monomials(2) == []


def test_phi2_system_solution():
    labels, x, _ = _solve_coefficients(2, 3)
    assert dict(zip(labels, x)) == {(1, 1, 0): Fraction(1, 12), (2, 0, 1): Fraction(-1, 12)}


def test_phi2_closed_form(phi_for):
    phi = phi_for(2, 30)
    a, b = gen_a(30), gen_b(30)
    e4ab = scale_by_form(a * b, eisenstein_e4(30), 4)
    e6aa = scale_by_form(a * a, eisenstein_e6(30), 6)
    assert phi.expansion == (e4ab - e6aa).scale(Fraction(1, 12))


def test_phi2_known_coefficients(phi_for):
    phi = phi_for(2, 30)
    assert extract_B(phi, -1) == 1 and extract_B(phi, 0) == -2
    assert phi.expansion[0, 1] == 1 and phi.expansion[0, 0] == -2 and phi.expansion[0, 2] == 0
    assert extract_B(phi, 7) == 23
    assert phi.expansion[26, 1] == phi.expansion[29, 5] == -113643
    assert (26, 1) in representations(2, 207, 30) and (29, 5) in representations(2, 207, 30)
    assert extract_B(phi, 207) == -113643


@pytest.mark.parametrize("p", [2, 3, 5])
def test_known_trace_table(phi_for, p):
    phi = phi_for(p, 12)
    for d in range(3, 29):
        if d % 4 not in (0, 3):
            continue
        if d in KNOWN_TRACES[p]:
            assert trace_star(phi, d) == KNOWN_TRACES[p][d]
        else:
            # empty cells are exactly the unsupported d
            with pytest.raises(UnsupportedDiscriminant):
                extract_B(phi, d)


def test_trace_star_conventions(phi_for):
    phi = phi_for(2, 12)
    assert trace_star(phi, -1) == -1
    assert trace_star(phi, -5) == 0
    with pytest.raises(OutOfWindow):
        extract_B(phi, 8 * 12)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_phi_invariants(phi_for, p):
    phi = phi_for(p, 10)
    exp = phi.expansion
    for n, r, v in exp.items():
        assert exp[n, -r] == v
        for lam in (-2, -1, 1, 2):
            n2, r2 = n + r * lam + p * lam * lam, r + 2 * p * lam
            if 0 <= n2 < exp.qtrunc:
                assert exp[n2, r2] == v
        D = 4 * p * n - r * r
        assert D >= -1 or v == 0
    audit = singular_audit(phi)
    assert audit["ok"] and audit["B(-1)"] == 1 and audit["B(0)"] == -2
    assert all(type(v) is int for v in phi.btable.values.values())


def test_construct_rejects_small_window():
    with pytest.raises(ValueError):
        construct_phi_p(13, 3)


def test_cache_roundtrip(tmp_path, phi_for):
    phi = phi_for(3, 10)
    path = tmp_path / "phi3.json"
    save_phi(phi, path)
    doc = json.loads(path.read_text())
    assert doc["p"] == 3 and doc["weight"] == 2 and doc["index"] == 3 and doc["qmax"] == 10
    assert all(isinstance(v, str) for _, row in doc["terms"] for _, v in row)
    again = load_phi(path)
    assert again.expansion == phi.expansion
    assert again.B(-1) == 1 and again.B(0) == -2


def test_cache_tampering_detected(tmp_path, phi_for):
    phi = phi_for(2, 10)
    path = tmp_path / "phi2.json"
    save_phi(phi, path)
    doc = json.loads(path.read_text())
    n, row = doc["terms"][5]
    row[0][1] = str(int(row[0][1]) + 1)
    path.write_text(json.dumps(doc))
    with pytest.raises(ConsistencyError):
        load_phi(path)


def test_check_invariants_returns_table(phi_for):
    phi = phi_for(2, 10)
    by_d = check_phi_invariants(phi.expansion, 2)
    assert by_d[-1] == 1 and by_d[7] == 23
