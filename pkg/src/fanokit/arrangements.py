"""K-semistability of hyperplane arrangements on P^n.

Hyperplanes are abstract indices; every criterion here depends only on the
weight vector.  The semistability test, degrees and the stability polytope
are exact rational; the height bound is the only floating-point output.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidDegree, InvalidWeight, NotFano, NotSemistable
from .toric_heights import (
    Convention,
    HeightReport,
    _log_fraction,
    _ulp_error,
    a_n_constant,
)


@dataclass(frozen=True)
class WeightVector:
    """Weights w_1..w_m of m distinct hyperplanes on P^n, each in [0, 1)."""

    n: int
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(Fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if self.n < 1 or len(ws) < 1:
            raise InvalidWeight("need n >= 1 and at least one hyperplane")
        for w in ws:
            if not 0 <= w < 1:
                raise InvalidWeight(f"weight {w} outside [0, 1)")

    @property
    def m(self) -> int:
        return len(self.weights)

    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))


def is_arrangement_semistable(w: WeightVector) -> bool:
    """w_i <= (1/(n+1)) sum_j w_j for every i (exact rational test)."""
    bound = Fraction(w.total(), w.n + 1)
    return all(wi <= bound for wi in w.weights)


def full_weight_condition(w: WeightVector) -> bool:
    """The redundant k-subset form of the criterion, kept for cross-checks:

        k sum_j w_j >= (n+1) sum_{j in S} w_j   for all k <= n, |S| = k.
    """
    total = w.total()
    for k in range(1, w.n + 1):
        for subset in itertools.combinations(w.weights, k):
            if k * total < (w.n + 1) * sum(subset):
                return False
    return True


def arrangement_degree(w: WeightVector) -> Fraction:
    """(-(K + Delta))^n = (n+1 - sum w_i)^n, degree convention."""
    s = w.total()
    if s >= w.n + 1:
        raise NotFano("weight sum >= n+1: the pair is not log Fano")
    return (Fraction(w.n + 1) - s) ** w.n


@dataclass(frozen=True)
class StabilityPolytope:
    """Semistable weight vectors of fixed degree D on m hyperplanes.

    Empty iff m < n+1; otherwise the vertices put C/(n+1) on each of an
    (n+1)-subset of indices (C = n+1 - D^{1/n}) and 0 elsewhere, listed in
    lexicographic subset order.
    """

    n: int
    m: int
    target_degree: Fraction
    c_value: Fraction | float
    c_exact: bool
    vertices: tuple[WeightVector, ...]

    @property
    def is_empty(self) -> bool:
        return not self.vertices


def _nth_root_exact(x: Fraction, n: int) -> Fraction | None:
    def iroot(v: int) -> int | None:
        if v == 0:
            return 0
        k = round(v ** (1.0 / n))
        for cand in (k - 1, k, k + 1):
            if cand >= 0 and cand**n == v:
                return cand
        return None

    p, q = iroot(x.numerator), iroot(x.denominator)
    if p is None or q is None:
        return None
    return Fraction(p, q)


def stability_polytope(n: int, m: int, degree) -> StabilityPolytope:
    d = Fraction(degree)
    if not 0 < d <= Fraction(n + 1) ** n:
        raise InvalidDegree("degree must lie in (0, (n+1)^n]")
    root = _nth_root_exact(d, n)
    if root is not None:
        c: Fraction | float = Fraction(n + 1) - root
        exact = True
    else:
        c = (n + 1) - float(d) ** (1.0 / n)
        exact = False
    if m < n + 1:
        return StabilityPolytope(n, m, d, c, exact, ())
    level = c / (n + 1)
    verts = []
    for subset in itertools.combinations(range(m), n + 1):
        weights = tuple(level if i in subset else Fraction(0) for i in range(m))
        if exact:
            wv = WeightVector(n, weights)
            assert is_arrangement_semistable(wv)
            assert arrangement_degree(wv) == d
            verts.append(wv)
        else:
            # irrational C: carried in floats, degree verified numerically
            got = ((n + 1) - sum(weights)) ** n
            assert abs(got - float(d)) <= 1e-12 * max(1.0, float(d))
            verts.append(WeightVector(n, tuple(Fraction(x) for x in weights)))
    return StabilityPolytope(n, m, d, c, exact, tuple(verts))


def arrangement_height_bound(w: WeightVector) -> HeightReport:
    """Explicit height bound for a K-semistable arrangement:

        h / (n+1)! <= (1/2) v log( (n+1)^n e^{2 a_n} / (n! v) ),

    with v the polytope-volume convention arrangement_degree(w)/n!.  The
    inner constant is pinned by equality with pn_height at w = 0.
    """
    if not is_arrangement_semistable(w):
        raise NotSemistable("weights fail the semistability inequality")
    n = w.n
    v = arrangement_degree(w) / math.factorial(n)
    a_n = a_n_constant(n)
    lead = Fraction(math.factorial(n + 1), 2) * v
    log_part = n * math.log(n + 1) + 2 * a_n - _log_fraction(math.factorial(n) * v)
    value = float(lead) * log_part
    err = _ulp_error(float(lead) * (abs(log_part) + 1))
    return HeightReport(value, Convention.BOUND_ON_HEIGHT,
                        "arrangement_bound", err)


@dataclass(frozen=True)
class ToricReduction:
    """The toric comparison point for a semistable arrangement.

    t satisfies (-(K + (1-t) D_0))^n = arrangement_degree(w); the
    certificate expresses w as an exact convex combination of stability
    polytope vertices (support subset, coefficient)."""

    t: Fraction
    degree: Fraction
    decomposition: tuple[tuple[tuple[int, ...], Fraction], ...]


def hypersimplex_decomposition(
    mu: Sequence[Fraction], k: int
) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    """Write mu in the hypersimplex {0 <= mu_i <= 1, sum = k} as an exact
    convex combination of 0/1 vectors with k ones (greedy peeling)."""
    mu = [Fraction(x) for x in mu]
    m = len(mu)
    assert sum(mu) == k
    parts: list[tuple[tuple[int, ...], Fraction]] = []
    remaining = Fraction(1)
    for _ in range(m + 1):
        order = sorted(range(m), key=lambda i: (-mu[i], i))
        support = tuple(sorted(order[:k]))
        if all(mu[i] == 1 for i in support) and all(
            mu[i] == 0 for i in order[k:]
        ):
            parts.append((support, remaining))
            return tuple(parts)
        theta = min(mu[i] for i in support)
        if m > k:
            theta = min(theta, 1 - max(mu[i] for i in order[k:]))
        assert 0 < theta < 1
        parts.append((support, theta * remaining))
        mu = [
            (mu[i] - theta) / (1 - theta) if i in support else mu[i] / (1 - theta)
            for i in range(m)
        ]
        remaining *= 1 - theta
    raise AssertionError("hypersimplex peeling failed to terminate")


def reduce_to_toric(w: WeightVector) -> ToricReduction:
    """t with matching degree, plus the convex-combination certificate."""
    if not is_arrangement_semistable(w):
        raise NotSemistable("weights fail the semistability inequality")
    degree = arrangement_degree(w)
    c = w.total()
    t = 1 - Fraction(c, w.n + 1)
    if c == 0:
        return ToricReduction(t, degree, ())
    mu = [wi * (w.n + 1) / c for wi in w.weights]
    decomposition = hypersimplex_decomposition(mu, w.n + 1)
    return ToricReduction(t, degree, decomposition)
