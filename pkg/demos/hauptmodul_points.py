"""Evaluate the eta-quotient Hauptmoduls at lifted Heegner points."""

from fractions import Fraction

from singular_traces import HauptmodulSpec, construct_phi_p, trace_oracle_star
from singular_traces.oracle import PrecisionContext, default_beta, eval_hauptmodul
from singular_traces.quadforms import (
    HeegnerPoint, class_representatives, lift_to_level, omega, valid_discriminants,
)

ctx = PrecisionContext(bits=256)
mp = ctx.mp()

for p in (2, 3, 5, 7, 13):
    print(f"j_{p}* =", HauptmodulSpec(p).series(4))

pt = HeegnerPoint(2, -2, 4)  # (1 + i)/2
v, err = eval_hauptmodul(2, pt.to_mpc(mp), ctx)
print("j_2*((1+i)/2) =", mp.nstr(v.real, 30), " bound", mp.nstr(err, 3))

# t^(2)(23): lift each class to p | a, b = beta mod 4, then sum
d, p = 23, 2
beta = default_beta(p, d)
total = 0
for Q in class_representatives(d):
    L = lift_to_level(Q, p, beta)
    val, _ = eval_hauptmodul(p, HeegnerPoint(L.a, L.b, d).to_mpc(mp), ctx)
    print(f"  {Q} -> {L}: {mp.nstr(val, 20)}")
    total += val / omega(Q)
print("sum =", mp.nstr(total.real, 20), " series:", construct_phi_p(2, 10).trace(23))

phi5 = construct_phi_p(5, 10)
print([(d, trace_oracle_star(5, d, ctx), phi5.trace(d)) for d in valid_discriminants(5, 40)
       if d % 25])
