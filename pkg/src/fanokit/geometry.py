"""Exact rational convex-polytope kernel.

Polytopes are full-dimensional and bounded, in dimension small enough
(n <= ~6) that brute-force facet/vertex enumeration is the right tool.
All coordinates are ``fractions.Fraction``; facet normals are primitive
integer vectors.  A half-space representation stores inequalities

    <normal, p> >= -offset

so that for a moment polytope of a toric log Fano pair the offset is the
log discrepancy coefficient of the corresponding facet divisor.

Every operation is a pure function on immutable values; nothing here
touches floating point.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    DegeneratePolytope,
    EmptyIntersection,
    SingularMap,
    UnboundedPolytope,
)

Vec = tuple[Fraction, ...]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(xs: Iterable) -> Vec:
    return tuple(_frac(x) for x in xs)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((_frac(a) * _frac(b) for a, b in zip(u, v)), Fraction(0))


def vsub(u: Sequence, v: Sequence) -> Vec:
    return tuple(_frac(a) - _frac(b) for a, b in zip(u, v))


def vadd(u: Sequence, v: Sequence) -> Vec:
    return tuple(_frac(a) + _frac(b) for a, b in zip(u, v))


def primitive_int_vector(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector.

    Preserves direction (no sign normalization).
    """
    fracs = [_frac(x) for x in v]
    if all(x == 0 for x in fracs):
        raise ValueError("zero vector has no primitive representative")
    den = 1
    for x in fracs:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fracs]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return tuple(a // g for a in ints)


# -- small exact linear algebra ----------------------------------------------

def mat_rank(rows: Sequence[Sequence]) -> int:
    m = [[_frac(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = m[row][col]
        for r in range(len(m)):
            if r != row and m[r][col] != 0:
                f = m[r][col] / inv
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


def mat_det(rows: Sequence[Sequence]) -> Fraction:
    m = [[_frac(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] / inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def mat_solve(rows: Sequence[Sequence], rhs: Sequence) -> Vec | None:
    """Solve the square system rows * x = rhs; None when singular."""
    n = len(rows)
    m = [[_frac(x) for x in r] + [_frac(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col]
        m[col] = [a / inv for a in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return tuple(m[r][n] for r in range(n))


def nullspace_vector(rows: Sequence[Sequence], ncols: int) -> Vec | None:
    """A spanning vector of the kernel when the nullity is exactly 1."""
    m = [[_frac(x) for x in r] for r in rows]
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = m[row][col]
        m[row] = [a / inv for a in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        return None
    fc = free[0]
    x = [Fraction(0)] * ncols
    x[fc] = Fraction(1)
    for r, pc in enumerate(pivots):
        x[pc] = -m[r][fc]
    return tuple(x)


# -- representations ----------------------------------------------------------

class Facet(NamedTuple):
    normal: tuple[int, ...]
    offset: Fraction


def make_facet(normal: Sequence, offset) -> Facet:
    """Canonicalize: primitive integer normal, offset rescaled to match."""
    fracs = [_frac(x) for x in normal]
    if all(x == 0 for x in fracs):
        raise ValueError("facet normal must be nonzero")
    prim = primitive_int_vector(fracs)
    # scale factor relating input normal to the primitive one
    k = next(_frac(fracs[i]) / prim[i] for i in range(len(prim)) if prim[i] != 0)
    if k <= 0:
        raise ValueError("normal and its primitive form must be parallel")
    return Facet(prim, _frac(offset) / k)


@dataclass(frozen=True)
class HPolytope:
    """Half-space representation {p : <normal_F, p> >= -offset_F for all F}."""

    dim: int
    facets: tuple[Facet, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        canon = tuple(make_facet(n, o) for n, o in self.facets)
        for f in canon:
            if len(f.normal) != self.dim:
                raise ValueError("facet normal has wrong dimension")
        object.__setattr__(self, "facets", canon)

    def contains(self, p: Sequence) -> bool:
        return all(dot(f.normal, p) >= -f.offset for f in self.facets)

    def tight_indices(self, p: Sequence) -> tuple[int, ...]:
        return tuple(
            i for i, f in enumerate(self.facets) if dot(f.normal, p) == -f.offset
        )


@dataclass(frozen=True)
class VPolytope:
    """Vertex representation: the exact list of extreme points, sorted."""

    dim: int
    vertices: tuple[Vec, ...]

    def __post_init__(self):
        vs = tuple(sorted({vec(v) for v in self.vertices}))
        for v in vs:
            if len(v) != self.dim:
                raise ValueError("vertex has wrong dimension")
        object.__setattr__(self, "vertices", vs)

    @classmethod
    def from_points(cls, dim: int, points: Iterable[Sequence]) -> "VPolytope":
        """Reduce an arbitrary point cloud to its extreme points."""
        pts = sorted({vec(p) for p in points})
        if not pts:
            raise DegeneratePolytope("no points given")
        if _affine_rank(pts) < dim:
            raise DegeneratePolytope("points do not span the ambient space")
        h = HPolytope(dim, facets_from_points(dim, pts))
        return enumerate_vertices(h)


def _affine_rank(points: Sequence[Vec]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    return mat_rank([vsub(p, base) for p in points[1:]])


# -- H <-> V conversion --------------------------------------------------------

def facets_from_points(dim: int, points: Sequence[Sequence]) -> tuple[Facet, ...]:
    """Supporting half-spaces of conv(points), irredundant and canonical.

    Brute force over dim-subsets spanning a hyperplane; a candidate is kept
    when every point lies weakly on one side.
    """
    pts = [vec(p) for p in points]
    if dim == 1:
        xs = [p[0] for p in pts]
        return (make_facet((1,), -min(xs)), make_facet((-1,), max(xs)))
    seen: dict[tuple, Facet] = {}
    for comb in itertools.combinations(pts, dim):
        base = comb[0]
        rows = [vsub(p, base) for p in comb[1:]]
        normal = nullspace_vector(rows, dim)
        if normal is None:
            continue
        prim = primitive_int_vector(normal)
        b = dot(prim, base)
        lo = hi = False
        ok = True
        for p in pts:
            s = dot(prim, p)
            if s > b:
                hi = True
            elif s < b:
                lo = True
            if hi and lo:
                ok = False
                break
        if not ok:
            continue
        # orient inward: keep <l, p> >= -offset with all points feasible
        if hi:
            facet = Facet(prim, -b)
        else:
            facet = Facet(tuple(-a for a in prim), b)
        seen.setdefault((facet.normal, facet.offset), facet)
    return tuple(seen[k] for k in sorted(seen))


def to_hpolytope(v: VPolytope) -> HPolytope:
    if _affine_rank(v.vertices) < v.dim:
        raise DegeneratePolytope("vertex set is not full-dimensional")
    return HPolytope(v.dim, facets_from_points(v.dim, v.vertices))


@lru_cache(maxsize=512)
def _vertices_of(h: HPolytope) -> tuple[Vec, ...]:
    n = h.dim
    normals = [f.normal for f in h.facets]
    if mat_rank(normals) < n:
        raise UnboundedPolytope("facet normals do not span the space")
    # recession direction: kernel vector of n-1 linearly independent normals
    # that satisfies every inequality (extreme ray of the recession cone)
    for comb in itertools.combinations(normals, n - 1):
        d = nullspace_vector(comb, n) if comb else (Fraction(1),)
        if d is None:
            continue
        for cand in (d, tuple(-x for x in d)):
            if all(dot(f.normal, cand) >= 0 for f in h.facets):
                raise UnboundedPolytope("recession direction exists")
    verts: set[Vec] = set()
    for comb in itertools.combinations(range(len(h.facets)), n):
        rows = [h.facets[i].normal for i in comb]
        rhs = [-h.facets[i].offset for i in comb]
        p = mat_solve(rows, rhs)
        if p is not None and h.contains(p):
            verts.add(p)
    if not verts:
        raise DegeneratePolytope("empty feasible set")
    out = tuple(sorted(verts))
    if _affine_rank(out) < n:
        raise DegeneratePolytope("feasible set has empty interior")
    return out


def enumerate_vertices(h: HPolytope) -> VPolytope:
    """Exact extreme points of a bounded full-dimensional H-polytope."""
    return VPolytope(h.dim, _vertices_of(h))


# -- volume and first moment ---------------------------------------------------

def _polygon_cycle(points: Sequence[Vec]) -> list[Vec]:
    """Order the extreme points of a planar convex set counterclockwise."""
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)

    def half(p) -> int:
        dx, dy = p[0] - cx, p[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp(p, q) -> int:
        hp, hq = half(p), half(q)
        if hp != hq:
            return -1 if hp < hq else 1
        cross = (p[0] - cx) * (q[1] - cy) - (p[1] - cy) * (q[0] - cx)
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    return sorted(points, key=cmp_to_key(cmp))


def _vol_mom_2d(points: Sequence[Vec]) -> tuple[Fraction, Vec]:
    cyc = _polygon_cycle(points)
    area2 = Fraction(0)
    mx6 = Fraction(0)
    my6 = Fraction(0)
    for p, q in zip(cyc, cyc[1:] + cyc[:1]):
        cross = p[0] * q[1] - q[0] * p[1]
        area2 += cross
        mx6 += (p[0] + q[0]) * cross
        my6 += (p[1] + q[1]) * cross
    return area2 / 2, (mx6 / 6, my6 / 6)


def _vol_mom(points: Sequence[Vec], dim: int,
             facets: tuple[Facet, ...] | None = None) -> tuple[Fraction, Vec]:
    """Exact (volume, integral of x dlambda) of conv(points).

    Pyramid decomposition from the vertex centroid over each facet; facet
    data is recomputed per level unless supplied.  Projections along a
    coordinate axis keep everything rational: for a facet with primitive
    integer normal l and apex c on <l,x> = -a,

        vol(pyramid) = |<l,c> + a| * vol_{n-1}(proj_j facet) / (n |l_j|).
    """
    if dim == 1:
        xs = [p[0] for p in points]
        lo, hi = min(xs), max(xs)
        return hi - lo, ((hi * hi - lo * lo) / 2,)
    if dim == 2:
        return _vol_mom_2d(points)
    if facets is None:
        facets = facets_from_points(dim, points)
    facets = tuple(dict.fromkeys(facets))
    k = len(points)
    c = tuple(sum(p[i] for p in points) / k for i in range(dim))
    vol = Fraction(0)
    mom = [Fraction(0)] * dim
    for normal, offset in facets:
        tight = [p for p in points if dot(normal, p) == -offset]
        if len(tight) < dim:
            continue
        j = next(i for i in range(dim) if normal[i] != 0)
        proj = [tuple(p[i] for i in range(dim) if i != j) for p in tight]
        fvol, fmom = _vol_mom(proj, dim - 1)
        if fvol == 0:
            continue
        height = dot(normal, c) + offset  # > 0 for interior apex
        pyr_vol = abs(height) * fvol / (dim * abs(normal[j]))
        # facet centroid, lifted back onto the hyperplane
        g = [x / fvol for x in fmom]
        rest = sum(normal[i] * gi for i, gi in
                   zip((i for i in range(dim) if i != j), g))
        g.insert(j, (-offset - rest) / normal[j])
        vol += pyr_vol
        for i in range(dim):
            mom[i] += pyr_vol * (c[i] + dim * g[i]) / (dim + 1)
    return vol, tuple(mom)


def volume_and_moment(v: VPolytope) -> tuple[Fraction, Vec]:
    if _affine_rank(v.vertices) < v.dim:
        raise DegeneratePolytope("polytope is not full-dimensional")
    return _vol_mom(v.vertices, v.dim)


def volume(v: VPolytope) -> Fraction:
    """Exact Euclidean volume of a full-dimensional V-polytope."""
    return volume_and_moment(v)[0]


def barycenter(v: VPolytope) -> Vec:
    """Exact centroid; independent of any triangulation choice."""
    vol, mom = volume_and_moment(v)
    return tuple(m / vol for m in mom)


# -- transforms -----------------------------------------------------------------

@dataclass(frozen=True)
class LinearMap:
    """Square rational matrix with its determinant cached at construction."""

    matrix: tuple[tuple[Fraction, ...], ...]
    determinant: Fraction = None  # type: ignore[assignment]

    def __post_init__(self):
        rows = tuple(vec(r) for r in self.matrix)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "determinant", mat_det(rows))

    def apply(self, p: Sequence) -> Vec:
        return tuple(dot(row, p) for row in self.matrix)


def transform(v: VPolytope, t: LinearMap) -> VPolytope:
    """Image polytope under an invertible linear map.

    Volumes scale by |det t|; the caller reads the factor off the map.
    """
    if t.determinant == 0:
        raise SingularMap("linear map is not invertible")
    return VPolytope(v.dim, tuple(t.apply(p) for p in v.vertices))


def translate(v: VPolytope, shift: Sequence) -> VPolytope:
    s = vec(shift)
    return VPolytope(v.dim, tuple(vadd(p, s) for p in v.vertices))


def transform_hpolytope(h: HPolytope, u: LinearMap) -> HPolytope:
    """Image of an H-polytope under x -> u x (normals move by inverse transpose)."""
    if u.determinant == 0:
        raise SingularMap("linear map is not invertible")
    n = h.dim
    cols = [mat_solve([row for row in u.matrix],
                      [Fraction(1) if i == j else Fraction(0) for i in range(n)])
            for j in range(n)]
    # rows of u^{-T} are the columns of u^{-1}
    new_facets = []
    for normal, offset in h.facets:
        img = tuple(dot(normal, col) for col in cols)
        new_facets.append((img, offset))
    return HPolytope(n, tuple(make_facet(nrm, off) for nrm, off in new_facets))


# -- clipping -------------------------------------------------------------------

def intersect_halfspace(v: VPolytope, normal: Sequence, cutoff) -> VPolytope:
    """Exact vertices of v cut by {x : <normal, x> <= cutoff}."""
    base = facets_from_points(v.dim, v.vertices)
    cut = make_facet(tuple(-_frac(x) for x in normal), _frac(cutoff))
    try:
        return enumerate_vertices(HPolytope(v.dim, base + (cut,)))
    except (DegeneratePolytope, UnboundedPolytope):
        raise EmptyIntersection("cut removed the polytope interior")


def clip_volume_and_moment(base: HPolytope, normal: Sequence,
                           cutoff) -> tuple[Fraction, Vec]:
    """(volume, moment) of base cut by <normal, x> <= cutoff.

    Fast path for repeated cuts of one polytope: the top-level facet list is
    known, so only vertex enumeration and the facet pyramids are recomputed.
    """
    cut = make_facet(tuple(-_frac(x) for x in normal), _frac(cutoff))
    h = HPolytope(base.dim, base.facets + (cut,))
    try:
        pts = _vertices_of(h)
    except DegeneratePolytope:
        return Fraction(0), tuple([Fraction(0)] * base.dim)
    if _affine_rank(pts) < base.dim:
        return Fraction(0), tuple([Fraction(0)] * base.dim)
    return _vol_mom(pts, base.dim, facets=h.facets)
