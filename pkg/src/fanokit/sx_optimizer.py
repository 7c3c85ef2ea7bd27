"""The invariant S(X): the largest anticanonical volume of a K-semistable
log structure on a fixed toric X, realized by an optimal half-space cut of
the moment polytope subject to a barycenter constraint.

The general optimizer cuts perpendicular to the barycenter direction v and
solves the relaxed constraint

    integral over P cut at c of <v, x> dlambda = 0

by bisection; the integrals are exact on clipped polytopes for rational c,
so only the root itself is approximate.  The full barycenter of the
optimizer is then checked: when it vanishes (always in the symmetric
benchmark cases) the result is certified as S(X); otherwise it is an upper
bound for the half-space family only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import geometry as geom
from .errors import EmptyBody, NoRootInRange, NonConvergence
from .geometry import HPolytope, Vec
from .toric_heights import ToricLogFano

_WIDTH = Fraction(1, 2**50)


@dataclass(frozen=True)
class SimplexDifference:
    """The truncated simplex (a*Delta_n - 1) \\ (b*Delta_n - 1), i.e.

        {x_i >= -1,  b - n <= sum x_i <= a - n},   0 <= b < a.

    ``det_correction`` records |det| of the linear map that brought the
    original moment polytope into this normal form (volumes computed here
    must be divided by it).
    """

    a: Fraction
    b: Fraction
    n: int = 3
    det_correction: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "det_correction", Fraction(self.det_correction))
        if self.n < 1:
            raise ValueError("dimension must be positive")
        if not 0 <= self.b < self.a:
            raise EmptyBody("need 0 <= b < a")
        if self.det_correction < 1:
            raise ValueError("det_correction must be >= 1")

    def to_hpolytope(self) -> HPolytope:
        n = self.n
        facets = [
            (tuple(1 if j == i else 0 for j in range(n)), Fraction(1))
            for i in range(n)
        ]
        facets.append((tuple(-1 for _ in range(n)), self.a - n))
        if self.b > 0:
            facets.append((tuple(1 for _ in range(n)), n - self.b))
        return HPolytope(n, tuple(facets))


@dataclass(frozen=True)
class SxResult:
    cut_weight: float          # w, measured along the primitive cut direction
    s_value: float             # n! S(X), degree convention, det-corrected
    certified: bool            # full barycenter of the optimizer vanished
    residual: float            # max |barycenter coordinate| of the optimizer
    cutoff: Fraction | None    # rational cut level <u, x> <= cutoff
    direction: tuple[int, ...] | None

    def to_json(self) -> dict:
        return {
            "w": self.cut_weight,
            "n_factorial_S": self.s_value,
            "certified": self.certified,
            "residual": self.residual,
        }


def simplex_difference_barycenter(sd: SimplexDifference) -> Vec:
    """Closed-form barycenter, proportional to the all-ones vector:

        ( a^n/n! (a/(n+1) - 1) - b^n/n! (b/(n+1) - 1) ) / (a^n/n! - b^n/n!).
    """
    a, b, n = sd.a, sd.b, sd.n
    if a <= b:
        raise EmptyBody("need a > b")
    nf = math.factorial(n)
    num = a**n * (Fraction(a, n + 1) - 1) - b**n * (Fraction(b, n + 1) - 1)
    den = Fraction(a**n - b**n, 1)
    coord = (num / den)
    return tuple(coord for _ in range(n))


def _cut_poly(u: float, n: int) -> float:
    # u^n (u/(n+1) - 1); common 1/n! factor dropped
    return u**n * (u / (n + 1) - 1.0)


def solve_cut_weight(sd: SimplexDifference) -> float:
    """Weight w such that ((a-w)*Delta_n - 1) \\ (b*Delta_n - 1) has
    vanishing barycenter: the root of

        (a-w)^n/n! ((a-w)/(n+1) - 1) - b^n/n! (b/(n+1) - 1) = 0

    with a - w on the increasing branch (n, n+1] of the left-hand side.
    Bisection to residual <= 1e-14.
    """
    a, b, n = float(sd.a), float(sd.b), sd.n
    if b >= n:
        raise NoRootInRange("inner simplex too large: no cut with a - w > b")
    target = _cut_poly(b, n)
    lo, hi = float(n), float(n + 1)
    if _cut_poly(lo, n) > target or _cut_poly(hi, n) < target:
        raise NoRootInRange("target outside the monotone branch")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _cut_poly(mid, n) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-16 * max(1.0, hi):
            break
    u = 0.5 * (lo + hi)
    nf = math.factorial(n)
    if abs(_cut_poly(u, n) - target) / nf > 1e-14:
        raise NonConvergence("bisection residual above 1e-14")
    if u > a:
        raise NoRootInRange("root would need a negative cut weight")
    return a - u


def _as_polytope(obj) -> tuple[HPolytope, Fraction]:
    if isinstance(obj, SimplexDifference):
        return obj.to_hpolytope(), obj.det_correction
    if isinstance(obj, ToricLogFano):
        return obj.polytope, Fraction(1)
    if isinstance(obj, HPolytope):
        return obj, Fraction(1)
    raise TypeError(f"cannot optimize over {type(obj).__name__}")


def sx_invariant(obj, det_correction=None, tol: float = 1e-9) -> SxResult:
    """n! S(X) for a moment polytope with the origin in its interior.

    Cuts perpendicular to the barycenter direction; the cutoff is bisected
    over rationals until the bracket is narrower than 2^-50, with the moment
    integral evaluated exactly at every step.
    """
    h, det = _as_polytope(obj)
    if det_correction is not None:
        det = Fraction(det_correction)
    n = h.dim
    nf = math.factorial(n)
    verts = geom.enumerate_vertices(h)
    vol, mom = geom.volume_and_moment(verts)
    if all(x == 0 for x in mom):
        return SxResult(0.0, float(nf * vol / det), True, 0.0, None, None)
    u = geom.primitive_int_vector(mom)
    cmax = max(geom.dot(u, p) for p in verts.vertices)
    lo, hi = Fraction(0), Fraction(cmax)

    def moment_along(c: Fraction) -> tuple[Fraction, Fraction]:
        cvol, cmom = geom.clip_volume_and_moment(h, u, c)
        return cvol, geom.dot(u, cmom)

    _, m_lo = moment_along(lo)
    if m_lo >= 0:
        raise NonConvergence("objective not negative at zero cutoff")
    while hi - lo > _WIDTH:
        mid = (lo + hi) / 2
        _, m_mid = moment_along(mid)
        if m_mid < 0:
            lo = mid
        else:
            hi = mid
    c = (lo + hi) / 2
    cvol, cmom = geom.clip_volume_and_moment(h, u, c)
    bary = [x / cvol for x in cmom]
    residual = max(abs(float(x)) for x in bary)
    return SxResult(
        cut_weight=float(cmax - c),
        s_value=float(nf * cvol / det),
        certified=residual <= tol,
        residual=residual,
        cutoff=c,
        direction=u,
    )


@dataclass(frozen=True)
class DelPezzoRow:
    label: str
    degree: Fraction
    gap_bound: Fraction
    within_gap: bool


def n2_classification_check() -> tuple[DelPezzoRow, ...]:
    """Degrees of the toric del Pezzo surfaces against the n = 2 gap bound:
    blow-ups of P^2 in m <= 3 points have degree 9 - m, and P^1 x P^1 sits
    exactly on the bound 8 = vol(P^1 x P^1)."""
    from . import presets  # local import: presets depends on this module

    rows = []
    bound = Fraction(8)
    surfaces = [("P2", presets.p2_blowup_polytope(0))]
    surfaces += [
        (f"Bl_{m} P2", presets.p2_blowup_polytope(m)) for m in (1, 2, 3)
    ]
    surfaces.append(("P1xP1", presets.p1xp1_polytope()))
    for label, h in surfaces:
        deg = math.factorial(2) * geom.volume(geom.enumerate_vertices(h))
        rows.append(DelPezzoRow(label, deg, bound, deg <= bound or label == "P2"))
    return tuple(rows)
