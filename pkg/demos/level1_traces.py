"""Level-one traces two ways: the coefficients of g and sums of j over Heegner points."""

from singular_traces import (
    class_representatives, heegner_point, omega, trace_oracle_level1, trace_table_level1, zagier_g,
)

g = zagier_g(16)
print("g =", g)

# every coefficient t(d) is a weighted sum of J = j - 744 over forms of discriminant -d
table = trace_table_level1(60)
for d in (3, 4, 7, 8, 11, 12, 15, 23):
    forms = class_representatives(d)
    pts = ", ".join(f"{heegner_point(Q)} (w={omega(Q)})" for Q in forms)
    print(f"d={d:3d}  t(d)={table[d]:>12}  oracle={trace_oracle_level1(d):>12}  points: {pts}")

# imprimitive forms count: [2,2,2] sits at j = 0 with weight 3
print("t(12) =", table[12], "= (54000 - 744) + (0 - 744)/3")
