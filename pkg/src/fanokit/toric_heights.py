"""Toric log Fano models: K-semistability, singularity diagnostics and the
closed-form height formulas and bounds attached to them.

Volume conventions are carried explicitly throughout:

* ``degree``       -- (-(K_X + Delta))^n,
* ``poly_volume``  -- degree / n!, the Euclidean volume of the moment polytope.

Heights are evaluated in double precision.  The rational part of each
formula is computed exactly and only the final transcendental combination is
floating point, so the reported ``abs_error`` is a few ulps.
"""
from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import geometry as geom
from .errors import (
    NonpositiveVolume,
    NotAnticanonical,
    NotSemistable,
    OutOfRange,
)
from .geometry import HPolytope, Vec

_EPS = sys.float_info.epsilon


def _ulp_error(scale: float, ops: int = 8) -> float:
    """Crude but safe rounding bound: ops half-ulps at the given magnitude."""
    return abs(scale) * ops * _EPS


class Convention(str, enum.Enum):
    RAW_HEIGHT = "raw_height"
    NORMALIZED_HEIGHT = "normalized_height"
    BOUND_ON_HEIGHT = "bound_on_height"


@dataclass(frozen=True)
class HeightReport:
    """A height value with its convention, formula tag and error bound."""

    value: float
    convention: Convention
    formula: str
    abs_error: float

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "convention": self.convention.value,
            "formula": self.formula,
            "abs_error": self.abs_error,
        }


@dataclass(frozen=True)
class VolumePair:
    """Degree and polytope-volume conventions of the same anticanonical volume."""

    degree: Fraction
    poly_volume: Fraction

    def __post_init__(self):
        if self.degree <= 0 or self.poly_volume <= 0:
            raise NonpositiveVolume("anticanonical volume must be positive")

    @classmethod
    def from_poly_volume(cls, n: int, poly_volume: Fraction) -> "VolumePair":
        return cls(math.factorial(n) * poly_volume, poly_volume)


@dataclass(frozen=True)
class ToricLogFano:
    """Moment-polytope presentation of a toric log Fano pair.

    Facet inequalities <l_F, p> >= -a_F with primitive integer l_F and
    a_F in (0, 1]; a_F = 1 for every facet is the anticanonical case.
    """

    polytope: HPolytope
    label: str | None = None

    def __post_init__(self):
        for f in self.polytope.facets:
            if not 0 < f.offset <= 1:
                raise OutOfRange(
                    f"facet offset {f.offset} outside (0, 1]"
                )

    @property
    def dim(self) -> int:
        return self.polytope.dim


def is_k_semistable(t: ToricLogFano) -> bool:
    """True iff the barycenter of the moment polytope is exactly the origin."""
    v = geom.enumerate_vertices(t.polytope)
    return all(x == 0 for x in geom.barycenter(v))


def log_fano_volume(t: ToricLogFano) -> VolumePair:
    vol = geom.volume(geom.enumerate_vertices(t.polytope))
    return VolumePair.from_poly_volume(t.dim, vol)


class VertexSingularity(NamedTuple):
    vertex: Vec
    facet_indices: tuple[int, ...]
    simple: bool
    det: int | None  # |det| of the facet normals; None for non-simple vertices


def vertex_singularity_report(t: ToricLogFano) -> tuple[VertexSingularity, ...]:
    """Per-vertex |det| of the meeting facet normals.

    The variety is smooth iff every entry has det 1, Q-factorial iff every
    vertex is simple (exactly n facets meet).  Non-simple vertices are
    flagged, not fatal.
    """
    h = t.polytope
    out = []
    for p in geom.enumerate_vertices(h).vertices:
        tight = h.tight_indices(p)
        if len(tight) == h.dim:
            d = abs(geom.mat_det([h.facets[i].normal for i in tight]))
            out.append(VertexSingularity(p, tight, True, int(d)))
        else:
            out.append(VertexSingularity(p, tight, False, None))
    return tuple(out)


def is_smooth(t: ToricLogFano) -> bool:
    return all(r.simple and r.det == 1 for r in vertex_singularity_report(t))


def is_gorenstein(t: ToricLogFano) -> bool:
    """Reflexivity test: all vertices integral.  Requires a_F = 1 throughout."""
    if any(f.offset != 1 for f in t.polytope.facets):
        raise NotAnticanonical("Gorenstein test applies to the a_F = 1 polytope")
    verts = geom.enumerate_vertices(t.polytope).vertices
    return all(x.denominator == 1 for p in verts for x in p)


def is_pn_polytope(h: HPolytope) -> bool:
    """Does the normal fan equal the fan of P^n up to GL_n(Z)?

    Equivalent to: n+1 facets, normals summing to zero, some n of them a
    basis of Z^n (then every n of them are, and the fan is the P^n fan).
    """
    n = h.dim
    if len(h.facets) != n + 1:
        return False
    normals = [f.normal for f in h.facets]
    if any(sum(l[i] for l in normals) != 0 for i in range(n)):
        return False
    return abs(geom.mat_det(normals[:n])) == 1


# -- closed-form heights -------------------------------------------------------

def pn_height(n: int) -> HeightReport:
    """Height of projective n-space over Z with the volume-normalized
    Fubini-Study metric:

        (1/2) (n+1)^{n+1} ( (n+1) H_n - n + log(pi^n / n!) ),  H_n = sum 1/k.
    """
    if n < 1:
        raise OutOfRange("n must be a positive integer")
    harmonic = sum(Fraction(1, k) for k in range(1, n + 1))
    lead = Fraction((n + 1) ** (n + 1), 2)
    rational_part = (n + 1) * harmonic - n
    log_part = n * math.log(math.pi) - math.log(math.factorial(n))
    value = float(lead) * (float(rational_part) + log_part)
    err = _ulp_error(float(lead) * (abs(float(rational_part)) + abs(log_part)))
    return HeightReport(value, Convention.RAW_HEIGHT, "pn_fubini_study", err)


def a_n_constant(n: int) -> float:
    """Normalized P^n height: pn_height(n) / (n+1)^{n+1}.  Satisfies 2 a_n >= 1."""
    a = pn_height(n).value / (n + 1) ** (n + 1)
    if 2 * a < 1:
        raise ArithmeticError("normalized height dropped below 1/2")
    return a


def universal_height_bound(vol: VolumePair, n: int) -> HeightReport:
    """Universal bound (n+1)!/2 * v * log((2 pi^2)^n / v), v = poly_volume."""
    v = vol.poly_volume
    if v <= 0:
        raise NonpositiveVolume("volume must be positive")
    lead = Fraction(math.factorial(n + 1), 2) * v
    log_part = n * math.log(2 * math.pi**2) - _log_fraction(v)
    value = float(lead) * log_part
    err = _ulp_error(float(lead) * abs(log_part))
    return HeightReport(value, Convention.BOUND_ON_HEIGHT, "universal_toric_bound", err)


def _log_fraction(x: Fraction | float) -> float:
    if isinstance(x, Fraction):
        return math.log(x.numerator) - math.log(x.denominator)
    return math.log(x)


def scaled_divisor_height(n: int, t) -> HeightReport:
    """Height of (P^n_Z, (1-t) D_0) for the standard toric anticanonical D_0,
    with the volume-normalized Kaehler-Einstein metric:

        h_t / (n+1)! = v_t (a_n - (1/2) log(v_t / v_0)),  v_t = t^n (n+1)^n / n!.
    """
    t = Fraction(t)
    if not 0 < t <= 1:
        raise OutOfRange("t must lie in (0, 1]")
    v_t = t**n * Fraction((n + 1) ** n, math.factorial(n))
    lead = math.factorial(n + 1) * v_t
    a_n = a_n_constant(n)
    log_t = _log_fraction(t)
    value = float(lead) * (a_n - Fraction(n, 2) * log_t)
    err = _ulp_error(float(lead) * (a_n + abs(n * log_t)))
    return HeightReport(value, Convention.RAW_HEIGHT, "scaled_divisor_family", err)


def toric_family_height(v, a: float, b) -> HeightReport:
    """Height of the one-parameter toric family, per (n+1)! units:

        h / (n+1)! = (1/2) v log(b e^{2a} / v),  0 < v <= b (poly volumes).
    """
    v = Fraction(v)
    b = Fraction(b)
    if not 0 < v <= b:
        raise OutOfRange("volume must satisfy 0 < v <= b")
    log_part = _log_fraction(b) + 2 * a - _log_fraction(v)
    value = 0.5 * float(v) * log_part
    err = _ulp_error(0.5 * float(v) * (abs(log_part) + 1))
    return HeightReport(
        value, Convention.RAW_HEIGHT, "toric_family_per_(n+1)!", err
    )


# -- gap check -------------------------------------------------------------------

class GapVerdict(str, enum.Enum):
    IS_PN = "IsPn"
    SATISFIES_GAP = "SatisfiesGap"
    VIOLATES_GAP = "ViolatesGap"


@dataclass(frozen=True)
class GapReport:
    verdict: GapVerdict
    poly_volume: Fraction
    gap_threshold: Fraction          # vol(P^{n-1} x P^1) = 2 n^n / n!
    singular: bool
    certificate_bound: Fraction | None   # (1/2)(n+1)^n / n! when singular
    certificate_holds: bool | None


def gap_check(t: ToricLogFano) -> GapReport:
    """Volume-gap verdict for a K-semistable toric log Fano pair.

    IsPn when the underlying variety is P^n; otherwise the gap holds iff
    poly_volume <= 2 n^n / n!.  For singular X (some vertex determinant
    >= 2) the stronger certificate poly_volume <= (1/2)(n+1)^n / n! is
    reported alongside.
    """
    if not is_k_semistable(t):
        raise NotSemistable("gap check requires barycenter zero")
    n = t.dim
    vol = log_fano_volume(t).poly_volume
    threshold = Fraction(2 * n**n, math.factorial(n))
    report = vertex_singularity_report(t)
    singular = any((not r.simple) or (r.det is not None and r.det >= 2)
                   for r in report)
    cert_bound = Fraction((n + 1) ** n, 2 * math.factorial(n)) if singular else None
    cert_holds = (vol <= cert_bound) if singular else None
    if is_pn_polytope(t.polytope):
        verdict = GapVerdict.IS_PN
    elif vol <= threshold:
        verdict = GapVerdict.SATISFIES_GAP
    else:
        verdict = GapVerdict.VIOLATES_GAP
    return GapReport(verdict, vol, threshold, singular, cert_bound, cert_holds)
