"""Hyperplane arrangements on P^n: semistability, stability polytopes and
the explicit height bound.

The K-semistability of (P^n, sum w_i H_i) depends only on the weights:
every w_i must be at most the average sum/(n+1).  At fixed degree the
semistable weights form a polytope whose vertices are the "toric" tuples,
and the height is maximized there.
"""
from fractions import Fraction as F

from fanokit import arrangements as arr
from fanokit import toric_heights as th
from fanokit.arrangements import WeightVector

# the basic test, exact on rationals
for ws in [(F(1, 2), F(1, 2), F(1, 2)), (F(2, 3), F(1, 4), F(0))]:
    w = WeightVector(1, ws)
    print(f"weights {tuple(map(str, ws))}: semistable ->",
          arr.is_arrangement_semistable(w))

# stability polytope for three points on the line, degree 1
sp = arr.stability_polytope(1, 3, 1)
print("\nstability polytope (n, m, D) = (1, 3, 1):")
for v in sp.vertices:
    print("   vertex", tuple(str(x) for x in v.weights),
          "degree", arr.arrangement_degree(v))

# every semistable weight vector decomposes exactly over those vertices
w = WeightVector(2, (F(1, 4), F(1, 4), F(1, 6), F(1, 8), F(1, 8)))
red = arr.reduce_to_toric(w)
print(f"\nweights {tuple(map(str, w.weights))}:")
print("   degree", red.degree, " toric parameter t =", red.t)
for support, coeff in red.decomposition:
    print(f"   {str(coeff):>6} x vertex supported on {support}")

# the height bound: equality at w = 0, strictly below for smaller volume
print("\nheight bound vs the P^2 height:")
print("   w = 0        :", arr.arrangement_height_bound(
    WeightVector(2, (F(0),) * 4)).value)
print("   pn_height(2) :", th.pn_height(2).value)
print("   w as above   :", arr.arrangement_height_bound(w).value)
