"""Height corrections and bounds for diagonal Fano hypersurfaces

    sum_{i=0}^{n+1} a_i x_i^d = 0   in P^{n+1},   1 <= d <= n+1.

The absolute canonical height of such a hypersurface is never claimed;
everything is expressed as a correction relative to the unit-coefficient
(Fermat) case or as a bound relative to the P^n height, which is all the
closed-form chain provides.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arrangements import WeightVector, is_arrangement_semistable
from .errors import InputError, OutOfRange
from .toric_heights import (
    Convention,
    HeightReport,
    _ulp_error,
    a_n_constant,
    pn_height,
    toric_family_height,
)


@dataclass(frozen=True)
class DiagonalHypersurfaceSpec:
    """(n, d, a_0..a_{n+1}): a degree-d diagonal form in n+2 variables."""

    n: int
    d: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise OutOfRange("relative dimension must be positive")
        if not 1 <= self.d <= self.n + 1:
            raise OutOfRange("Fano requires 1 <= d <= n+1")
        coeffs = tuple(int(a) for a in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if len(coeffs) != self.n + 2:
            raise InputError(f"need n+2 = {self.n + 2} coefficients")
        if any(a == 0 for a in coeffs):
            raise InputError("coefficients must be nonzero")

    def log_coefficient_sum(self) -> float:
        return sum(math.log(abs(a)) for a in self.coefficients)


@dataclass(frozen=True)
class BranchDivisorSpec:
    """Branch divisor of the degree-d cover of the degree-one model:
    n+2 hyperplane components, each with weight 1 - 1/d."""

    n: int
    d: int

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(1 - Fraction(1, self.d) for _ in range(self.n + 2))


def diagonal_height_correction(spec: DiagonalHypersurfaceSpec) -> float:
    """(1-d) (n+2-d)^n sum_i log|a_i|; always <= 0, zero iff d = 1 or all
    |a_i| = 1.  Added to pn_height(n), this bounds the canonical height."""
    n, d = spec.n, spec.d
    return (1 - d) * (n + 2 - d) ** n * spec.log_coefficient_sum()


def fermat_reduction_delta(spec: DiagonalHypersurfaceSpec) -> float:
    """Exact change of canonical height when scaling coefficients away from
    the Fermat case:

        h_can(X_a) - h_can(X_1)
          = (n+1)(n+2-d)^n d ((n+2-d)/(n+1) - 1) d^{-1} sum log|a_i|^2,

    which simplifies to 2 (1-d) (n+2-d)^n sum log|a_i|."""
    n, d = spec.n, spec.d
    # the explicit d and d^{-1} cancel
    factor = (n + 1) * (n + 2 - d) ** n * (Fraction(n + 2 - d, n + 1) - 1)
    return float(factor) * 2 * spec.log_coefficient_sum()


def general_linear_height_delta(n: int, d: int, det_t_modulus: float) -> float:
    """Height change for a hypersurface cut out by a GL(n+2) pullback of the
    Fermat form: (n+1)(n+2-d)^n d ((n+2-d)/(n+1) - 1) log|det T|^2."""
    if det_t_modulus <= 0:
        raise OutOfRange("|det T| must be positive")
    factor = (n + 1) * (n + 2 - d) ** n * d * (Fraction(n + 2 - d, n + 1) - 1)
    return float(factor) * 2 * math.log(det_t_modulus)


def branch_arrangement(spec: DiagonalHypersurfaceSpec | BranchDivisorSpec) -> WeightVector:
    """The hyperplane arrangement on P^n induced by the branch divisor;
    always K-semistable (n+2 equal weights 1 - 1/d)."""
    w = WeightVector(spec.n, BranchDivisorSpec(spec.n, spec.d).weights)
    assert is_arrangement_semistable(w)
    return w


def lambda_ratio(n: int, d: int) -> Fraction:
    """Degree ratio V(X)/V(P^n) = d (n+2-d)^n / (n+1)^n, in (0, 1]."""
    if not 1 <= d <= n + 1:
        raise OutOfRange("Fano requires 1 <= d <= n+1")
    return Fraction(d * (n + 2 - d) ** n, (n + 1) ** n)


@dataclass(frozen=True)
class FermatHeightBound:
    report: HeightReport
    lam: Fraction
    strict: bool


def fermat_height_bound(n: int, d: int) -> FermatHeightBound:
    """Bound for the degree-d Fermat hypersurface:

        h_can(X) <= lambda pn_height(n) - (1/2) (n+1)! v_X log(lambda),

    with v_X = d (n+2-d)^n / n! in polytope-volume units; this is exactly
    the one-parameter toric family value at volume lambda * v_0 and reduces
    to pn_height at d = 1.  Strict iff lambda < 1 (the conic n = 1, d = 2
    has lambda = 1: it is the line re-embedded)."""
    lam = lambda_ratio(n, d)
    v0 = Fraction((n + 1) ** n, math.factorial(n))
    family = toric_family_height(lam * v0, a_n_constant(n), v0)
    value = math.factorial(n + 1) * family.value
    err = math.factorial(n + 1) * family.abs_error + _ulp_error(value)
    report = HeightReport(value, Convention.BOUND_ON_HEIGHT,
                          "fermat_cover_bound", err)
    return FermatHeightBound(report, lam, strict=lam < 1)


def cover_volume_ratio_check(n: int, d: int) -> tuple[Fraction, Fraction]:
    """Topological-degree bookkeeping for the degree-d cover of the
    degree-one model: returns (d^{n+1}, V(X)/V(Y, Delta)); the two must
    agree.  V(X) = d (n+2-d)^n and V(Y, Delta) = ((n+2-d)/d)^n."""
    vx = Fraction(d * (n + 2 - d) ** n)
    vy = Fraction(n + 2 - d, d) ** n
    return Fraction(d) ** (n + 1), vx / vy


@dataclass(frozen=True)
class DiagonalBound:
    report: HeightReport
    correction: float
    strict: bool
    fermat_delta: float
    chain_value: float | None  # fermat_height_bound + fermat_reduction_delta


def diagonal_theorem_bound(spec: DiagonalHypersurfaceSpec,
                           tighter: bool = False) -> DiagonalBound:
    """Canonical-height bound pn_height(n) + diagonal_height_correction,
    strict when d >= 2.  With ``tighter`` the sharper chain through the
    Fermat cover bound is evaluated as well."""
    base = pn_height(spec.n)
    corr = diagonal_height_correction(spec)
    delta = fermat_reduction_delta(spec)
    value = base.value + corr
    err = base.abs_error + _ulp_error(abs(corr) + abs(value))
    report = HeightReport(value, Convention.BOUND_ON_HEIGHT,
                          "diagonal_hypersurface_bound", err)
    chain = None
    if tighter:
        chain = fermat_height_bound(spec.n, spec.d).report.value + delta
    return DiagonalBound(report, corr, spec.d >= 2, delta, chain)
