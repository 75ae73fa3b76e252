"""Uniqueness and simplicity for finite-dimensional correspondences.

A correspondence over C^{d_0} + ... + C^{d_{k-1}} is a multiplicity matrix N. The dual graph
has N[i][j] edges from j to i, and everything below is read off that graph.
"""
from cpuniq import FinCorr, simplicity_verdict, t_pairs, toeplitz_verdict, uniqueness_verdict
from cpuniq.fintop import to_points

cases = {
    "Cuntz shape [[2]]": [[2]],
    "circle shape [[1]]": [[1]],
    "swap [[0,1],[1,0]]": [[0, 1], [1, 0]],
    "swap with a loop": [[1, 1], [1, 0]],
    "source to sink [[0,1],[0,0]]": [[0, 1], [0, 0]],
}

for label, mult in cases.items():
    r = simplicity_verdict(FinCorr.of(mult))
    f = r.flags
    print(f"{label:30s} uniqueness={f['uniqueness']!s:5s} gauge_trivial={f['gauge_trivial']!s:5s} "
          f"simple={f['simple']}")

# The circle shape has exactly two T-pairs, but its lone loop has no entrance.
c = FinCorr.of([[1]])
print("\nT-pairs of [[1]] on J = {0}:", [(to_points(p.i), to_points(p.i_prime)) for p in t_pairs(c, 1)])
print("witness:", uniqueness_verdict(c, 1).witnesses["cyclic_ideal"])

# Shrinking J to zero always restores uniqueness (the Toeplitz case).
print("Toeplitz uniqueness for [[1]]:", toeplitz_verdict(c).flags["uniqueness"])

# Only the pattern of N matters, never the block sizes.
a = simplicity_verdict(FinCorr.of([[1, 1], [1, 0]], dims=[1, 1]))
b = simplicity_verdict(FinCorr.of([[1, 1], [1, 0]], dims=[3, 5]))
print("same verdict for dims (1,1) and (3,5):", (a.flags, a.witnesses) == (b.flags, b.witnesses))
