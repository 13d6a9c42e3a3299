"""Build phi_p from a and b by an exact solve and read off the level-p traces."""

import time

from singular_traces import (
    construct_phi_p, gen_a, gen_b, singular_audit, singular_classes, trace_star,
    valid_discriminants,
)

a, b = gen_a(3), gen_b(3)
print("a q^0..q^2:", [dict(a.term(n).items()) for n in range(3)])
print("b q^0..q^2:", [dict(b.term(n).items()) for n in range(3)])

for p in (2, 3, 5, 13, 71):
    t0 = time.perf_counter()
    phi = construct_phi_p(p, max(10, p // 4 + 3))
    audit = singular_audit(phi)
    print(f"p={p:2d}: {len(singular_classes(p))} conditions, audit ok={audit['ok']}, "
          f"{time.perf_counter() - t0:.1f} s")
    print("   t^(p)(d):", {d: trace_star(phi, d) for d in valid_discriminants(p, 30)})

# the worked example: c(29, 5) of phi_2
phi2 = construct_phi_p(2, 30)
print("c(29,5) =", phi2.expansion[29, 5], " c(26,1) =", phi2.expansion[26, 1])
