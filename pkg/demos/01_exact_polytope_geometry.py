"""Exact rational polytope geometry: representations, volume, barycenter.

Everything in the geometry kernel is a fractions.Fraction; volumes and
barycenters are exact, so "the barycenter is the origin" is a real
predicate, not a tolerance check.
"""
from fanokit import geometry as geom
from fanokit.geometry import HPolytope, LinearMap

# The anticanonical polytope of P^3: four half-spaces
#   x_i >= -1  and  x_1 + x_2 + x_3 <= 1.
p3 = HPolytope(3, (((1, 0, 0), 1), ((0, 1, 0), 1), ((0, 0, 1), 1),
                   ((-1, -1, -1), 1)))
verts = geom.enumerate_vertices(p3)
print("P^3 polytope vertices:")
for v in verts.vertices:
    print("   ", tuple(str(x) for x in v))

vol = geom.volume(verts)
print("volume:", vol, "=> degree", 6 * vol)           # (-K)^3 = 64
print("barycenter:", geom.barycenter(verts))          # exactly the origin

# Chop off the corner at (-1,-1,-1): the moment polytope of P^3 blown up
# in one point.
blown_up = geom.intersect_halfspace(verts, (-1, -1, -1), 1)
print("\nafter the corner cut:")
print("volume:", geom.volume(blown_up), "=> degree", 6 * geom.volume(blown_up))
print("barycenter:", geom.barycenter(blown_up))       # (1/14, 1/14, 1/14)

# Volumes transform by |det|; barycenters are equivariant.
t = LinearMap(((1, 0, 0), (0, 1, 0), (-1, -1, 2)))
image = geom.transform(blown_up, t)
print("\ndeterminant-2 image volume:", geom.volume(image),
      "=", t.determinant, "x", geom.volume(blown_up))

# Round trip: vertices -> half-spaces -> vertices is the identity.
again = geom.enumerate_vertices(geom.to_hpolytope(blown_up))
print("H/V round trip stable:", again.vertices == blown_up.vertices)
