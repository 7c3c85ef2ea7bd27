"""Shared test oracles: Monte Carlo volume estimation, random polytope and
unimodular-matrix generation, and a floating-point half-space clipper used
to sample candidate cuts independently of the exact kernel."""
from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from fanokit import geometry as geom


def random_rational_polytope(rng: random.Random, dim: int,
                             lo: int = -12, hi: int = 12, den: int = 4):
    """Full-dimensional VPolytope with vertex coordinates in [lo/den, hi/den]."""
    while True:
        k = rng.randint(dim + 2, dim + 6)
        pts = [
            tuple(Fraction(rng.randint(lo, hi), den) for _ in range(dim))
            for _ in range(k)
        ]
        try:
            v = geom.VPolytope.from_points(dim, pts)
        except Exception:
            continue
        return v


def random_unimodular(rng: random.Random, dim: int, steps: int = 10) -> geom.LinearMap:
    m = [[Fraction(1 if i == j else 0) for j in range(dim)] for i in range(dim)]
    for _ in range(steps):
        op = rng.randrange(3)
        i, j = rng.sample(range(dim), 2) if dim > 1 else (0, 0)
        if op == 0 and i != j:
            c = rng.choice([-2, -1, 1, 2])
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        elif op == 1 and i != j:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-a for a in m[i]]
    return geom.LinearMap(tuple(tuple(r) for r in m))


def mc_volume_estimate(v: geom.VPolytope, n_samples: int,
                       seed: int) -> tuple[float, float]:
    """Rejection-sampling volume estimate and its standard error."""
    pts = np.array([[float(x) for x in p] for p in v.vertices])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    box = float(np.prod(hi - lo))
    h = geom.to_hpolytope(v)
    a = np.array([[float(c) for c in f.normal] for f in h.facets])
    b = np.array([float(f.offset) for f in h.facets])
    rng = np.random.default_rng(seed)
    samples = rng.uniform(lo, hi, size=(n_samples, v.dim))
    inside = np.all(samples @ a.T >= -b - 1e-12, axis=1)
    p_hat = inside.mean()
    est = box * p_hat
    sigma = box * float(np.sqrt(max(p_hat * (1 - p_hat), 1e-12) / n_samples))
    return est, sigma


def polytope_edges(v: geom.VPolytope) -> list[tuple[int, int]]:
    """Vertex adjacency: an edge when the shared tight facets have rank n-1."""
    h = geom.to_hpolytope(v)
    tight = [set(h.tight_indices(p)) for p in v.vertices]
    edges = []
    for i, j in itertools.combinations(range(len(v.vertices)), 2):
        common = tight[i] & tight[j]
        if len(common) < v.dim - 1:
            continue
        rows = [h.facets[k].normal for k in common]
        if geom.mat_rank(rows) == v.dim - 1:
            edges.append((i, j))
    return edges


class FloatClipper:
    """Clip a fixed convex polytope by moving half-spaces, in floats."""

    def __init__(self, v: geom.VPolytope):
        self.dim = v.dim
        self.pts = np.array([[float(x) for x in p] for p in v.vertices])
        self.edges = polytope_edges(v)

    def clip_vol_moment(self, u: np.ndarray, c: float) -> tuple[float, np.ndarray]:
        vals = self.pts @ u
        keep = vals <= c + 1e-14
        pieces = [self.pts[keep]]
        for i, j in self.edges:
            vi, vj = vals[i], vals[j]
            if (vi - c) * (vj - c) < 0:
                t = (c - vi) / (vj - vi)
                pieces.append((self.pts[i] + t * (self.pts[j] - self.pts[i]))[None, :])
        cloud = np.concatenate(pieces, axis=0)
        if len(cloud) <= self.dim:
            return 0.0, np.zeros(self.dim)
        try:
            hull = ConvexHull(cloud)
        except QhullError:
            return 0.0, np.zeros(self.dim)
        center = cloud[hull.vertices].mean(axis=0)
        vol = 0.0
        moment = np.zeros(self.dim)
        for simplex in hull.simplices:
            corners = cloud[simplex]
            mat = corners - center
            tetra = abs(np.linalg.det(mat)) / math.factorial(self.dim)
            vol += tetra
            moment += tetra * (corners.sum(axis=0) + center) / (self.dim + 1)
        return vol, moment
