"""Endomorphism data and measured quivers reduce to multiplicity matrices.

An endomorphism contributes N[phi(x)][x] = index(x). A quiver contributes one edge per
positive-weight arrow, whatever the weight.
"""
from cpuniq import EndoSystem, FinQuiver, simplicity_verdict
from cpuniq.verdict import from_endomorphism, from_quiver, quiver_tf_pair

for n in range(1, 6):
    c = from_endomorphism(EndoSystem(1, {0: 0}, {0: n}))
    print(f"one point, index {n}: uniqueness={simplicity_verdict(c).flags['uniqueness']}")

# A 2-cycle where one point has index 2: the cycle now has an entrance.
e = EndoSystem(2, {0: 1, 1: 0}, {0: 1, 1: 2})
print("\n2-cycle with index (1, 2):", from_endomorphism(e).mult,
      "uniqueness =", simplicity_verdict(from_endomorphism(e)).flags["uniqueness"])

q = FinQuiver.of(2, [(0, 1, "1/2"), (0, 0, "1/2"), (1, 0, 1)])
c, j = from_quiver(q)
print("\nquiver dual matrix:", c.mult, "TF of quiver graph / dual graph:", quiver_tf_pair(q))
