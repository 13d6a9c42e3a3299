"""Sweeps of t(l^2 d) = 0 mod l over split primes, at level one and level p."""

from singular_traces import hecke, table_from_phi, verify_level1, verify_star
from singular_traces.hecke import auto_qprec
from singular_traces.phi import construct_phi_p

for l in (3, 5, 7):
    print(verify_level1(l, 50).summary())

for p, l in ((2, 3), (2, 5), (3, 5), (5, 3), (7, 3), (13, 3)):
    report = verify_star(p, l, 30)
    print(report.summary())

# T(9) on g_2 has principal part q^-1 + 3 q^-9
phi = construct_phi_p(2, auto_qprec(2, 3, 30))
h = hecke(table_from_phi(phi), 3)
print("principal part of T(9) g_2:", h.principal_part)
print("B_3(23) =", h[23])

print(verify_star(2, 3, 23, phi).to_csv())
