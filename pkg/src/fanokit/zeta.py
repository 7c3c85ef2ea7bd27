"""Hurwitz zeta machinery and the closed-form canonical height of the
projective line with three weighted marked points.

zeta(s, x) and its s-derivative are evaluated by Euler-Maclaurin summation
with an explicit Bernoulli tail bound; the reported ``abs_error`` is the
certified truncation remainder plus an accumulated rounding estimate.  The
height formula needs F(x) = zeta(-1, x) + zeta'(-1, x); for weight sums
above the Fano range the formula continues real-analytically, which is
realized here with a one-step complex shift whose imaginary part cancels
against the complex logarithm of the (negative) degree.
"""
from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arrangements import WeightVector, is_arrangement_semistable
from .errors import (
    DomainError,
    NonConvergence,
    OutOfRange,
    PoleAtOne,
    ZeroVolume,
)
from .toric_heights import Convention, HeightReport

_EPS = sys.float_info.epsilon


@lru_cache(maxsize=None)
def bernoulli_number(m: int) -> Fraction:
    """Exact Bernoulli number B_m (B_1 = -1/2 convention)."""
    if m == 0:
        return Fraction(1)
    if m == 1:
        return Fraction(-1, 2)
    if m % 2:
        return Fraction(0)
    acc = Fraction(0)
    for k in range(m):
        acc += math.comb(m + 1, k) * bernoulli_number(k)
    return -acc / (m + 1)


@dataclass(frozen=True)
class PrecisionPolicy:
    """Controls of the Euler-Maclaurin evaluation.

    ``shift`` is the number of directly summed terms N (raised automatically
    until the certified tail is below target); ``bernoulli_terms`` is the
    number M of Bernoulli corrections.
    """

    target_abs_error: float = 1e-12
    shift: int = 12
    bernoulli_terms: int = 8

    def __post_init__(self):
        if self.shift < 8:
            raise OutOfRange("shift must be >= 8")
        if self.bernoulli_terms < 4:
            raise OutOfRange("bernoulli_terms must be >= 4")
        if not self.target_abs_error > 0:
            raise OutOfRange("target_abs_error must be positive")


DEFAULT_POLICY = PrecisionPolicy()


def _rising_with_derivative(s: float, m: int) -> tuple[float, float]:
    """(P, dP/ds) for P = s (s+1) ... (s+m-1); safe at zeros of P."""
    p, dp = 1.0, 0.0
    for i in range(m):
        p, dp = p * (s + i), dp * (s + i) + p
    return p, dp


def _em_pair(s: float, x: float, policy: PrecisionPolicy
             ) -> tuple[float, float, float, float]:
    """Euler-Maclaurin (zeta(s,x), d/ds zeta(s,x), err, err_deriv), x > 0."""
    if s == 1:
        raise PoleAtOne("zeta(s, x) has its pole at s = 1")
    m = policy.bernoulli_terms
    n = policy.shift
    tail_coeff = abs(float(bernoulli_number(2 * m + 2))) / math.factorial(2 * m + 2)
    p_tail, dp_tail = _rising_with_derivative(s, 2 * m + 1)
    while True:
        a = n + x
        la = math.log(a)
        pw_tail = a ** (-s - 2 * m - 1)
        err_z = tail_coeff * abs(p_tail) * pw_tail
        err_dz = 2 * tail_coeff * (abs(dp_tail) + abs(p_tail) * la) * pw_tail
        if max(err_z, err_dz) <= policy.target_abs_error or n >= 1 << 20:
            break
        n *= 2
    if max(err_z, err_dz) > policy.target_abs_error:
        raise NonConvergence("Euler-Maclaurin tail bound above target")

    z = dz = 0.0
    mag_z = mag_dz = 0.0

    def add(term_z: float, term_dz: float):
        nonlocal z, dz, mag_z, mag_dz
        z += term_z
        dz += term_dz
        mag_z += abs(term_z)
        mag_dz += abs(term_dz)

    for k in range(n):
        t = (k + x) ** (-s)
        lt = math.log(k + x)
        add(t, -lt * t)
    a = n + x
    la = math.log(a)
    t0 = a ** (1 - s) / (s - 1)
    add(t0, a ** (1 - s) * (-la / (s - 1) - 1 / (s - 1) ** 2))
    th = 0.5 * a ** (-s)
    add(th, -la * th)
    for j in range(1, m + 1):
        p, dp = _rising_with_derivative(s, 2 * j - 1)
        coeff = float(bernoulli_number(2 * j)) / math.factorial(2 * j)
        pw = a ** (-s - 2 * j + 1)
        add(coeff * p * pw, coeff * pw * (dp - p * la))
    round_z = 8 * _EPS * mag_z
    round_dz = 8 * _EPS * mag_dz
    return z, dz, err_z + round_z, err_dz + round_dz


def hurwitz_zeta(s: float, x: float, policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """zeta(s, x) for real s != 1 and x >= 0 (x = 0 via zeta(s, 1), the
    continuation value used throughout)."""
    if x < 0:
        raise DomainError("x must be nonnegative")
    if x == 0:
        x = 1.0
    return _em_pair(float(s), float(x), policy)[0]


def hurwitz_zeta_with_error(s: float, x: float,
                            policy: PrecisionPolicy = DEFAULT_POLICY
                            ) -> tuple[float, float]:
    if x < 0:
        raise DomainError("x must be nonnegative")
    if x == 0:
        x = 1.0
    z, _, err, _ = _em_pair(float(s), float(x), policy)
    return z, err


def hurwitz_zeta_s_derivative(s: float, x: float,
                              policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """d/ds zeta(s, x), term-wise differentiated Euler-Maclaurin."""
    if x < 0:
        raise DomainError("x must be nonnegative")
    if x == 0:
        x = 1.0
    return _em_pair(float(s), float(x), policy)[1]


def hurwitz_zeta_s_derivative_at_minus1(
    x: float, policy: PrecisionPolicy = DEFAULT_POLICY
) -> float:
    return hurwitz_zeta_s_derivative(-1.0, x, policy)


def f_value(x: float, policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """F(x) = zeta(-1, x) + zeta'(-1, x) for x >= 0; F(0) = F(1)."""
    return (hurwitz_zeta(-1.0, x, policy)
            + hurwitz_zeta_s_derivative_at_minus1(x, policy))


def _f_error_estimate(policy: PrecisionPolicy) -> float:
    # both summands honor the policy target; rounding contributes ~1e2 eps
    return 2 * policy.target_abs_error + 256 * _EPS


def _f_complex(x: float, policy: PrecisionPolicy) -> tuple[complex, float]:
    """F continued to x > -1 (complex principal branch below 0)."""
    if x <= -1:
        raise DomainError("continuation implemented for x > -1 only")
    if x >= 0:
        return complex(f_value(x, policy)), _f_error_estimate(policy)
    # zeta(s,x) = x^{-s} + zeta(s,x+1):   at s = -1,
    # zeta(-1,x) = x + zeta(-1,x+1),  zeta'(-1,x) = -x Log x + zeta'(-1,x+1)
    val = complex(f_value(x + 1.0, policy)) + x - x * cmath.log(complex(x))
    err = (_f_error_estimate(policy)
           + 8 * _EPS * abs(x) * (1 + abs(cmath.log(complex(x)))))
    return val, err


def gamma_ab(a: float, b: float, policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """gamma(a, b) = F(b) + F(1-b) - F(a) - F(1-a); antisymmetric in (a, b)."""
    for arg in (a, b, 1 - a, 1 - b):
        if arg < 0:
            raise DomainError("all four F-arguments must be nonnegative")
    # paired differences so that gamma(a, a) cancels exactly
    return ((f_value(b, policy) - f_value(a, policy))
            + (f_value(1 - b, policy) - f_value(1 - a, policy)))


@dataclass(frozen=True)
class ZetaHeightInput:
    """Three marked-point weights on P^1; V = 2 - sum(w) is the degree of
    the log anticanonical bundle (negative on the continuation branch)."""

    w1: Fraction
    w2: Fraction
    w3: Fraction

    def __post_init__(self):
        for name in ("w1", "w2", "w3"):
            w = Fraction(getattr(self, name))
            if not 0 <= w <= 1:
                raise OutOfRange(f"weight {w} outside [0, 1]")
            object.__setattr__(self, name, w)

    @property
    def weights(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.w1, self.w2, self.w3)

    @property
    def v(self) -> Fraction:
        return 2 - (self.w1 + self.w2 + self.w3)


def p1_weights_semistable(inp: ZetaHeightInput) -> bool:
    """Advisory flag: the n = 1 arrangement semistability test on the
    weights.  A weight equal to 1 is not klt and never semistable."""
    if any(w >= 1 for w in inp.weights):
        return False
    return is_arrangement_semistable(WeightVector(1, inp.weights))


def p1_canonical_height(inp: ZetaHeightInput,
                        policy: PrecisionPolicy = DEFAULT_POLICY) -> HeightReport:
    """Canonical height of (P^1_Z, three marked points with weights w):

      h / 2V = (1/2)(1 + log pi - log(V/2))
               - ( gamma(0, V/2) + sum_i gamma(w_i, w_i + V/2) ) / V.

    For V < 0 the same expression is evaluated through its real-analytic
    continuation (the imaginary parts cancel exactly) and reported on the
    distinct continuation branch.
    """
    v = float(inp.v)
    if v == 0:
        raise ZeroVolume("V = 2 - sum(w) must be nonzero")
    h = v / 2

    def gamma_c(a: float, b: float) -> tuple[complex, float]:
        if min(a, b, 1 - a, 1 - b) >= 0:
            return complex(gamma_ab(a, b, policy)), 4 * _f_error_estimate(policy)
        fb, e1 = _f_complex(b, policy)
        f1b, e2 = _f_complex(1 - b, policy)
        fa, e3 = _f_complex(a, policy)
        f1a, e4 = _f_complex(1 - a, policy)
        return (fb - fa) + (f1b - f1a), e1 + e2 + e3 + e4

    total = complex(0)
    err = 0.0
    g, e = gamma_c(0.0, h)
    total += g
    err += e
    for w in inp.weights:
        g, e = gamma_c(float(w), float(w) + h)
        total += g
        err += e
    bracket = 0.5 * (1 + math.log(math.pi) - cmath.log(complex(h))) - total / v
    value_c = 2 * v * bracket
    abs_err = 2 * abs(v) * (err / abs(v) + 16 * _EPS * abs(bracket)) + 8 * _EPS * abs(value_c)
    if abs(value_c.imag) > max(1e-9, 100 * abs_err):
        raise DomainError(
            "height formula left its real-analytic domain "
            "(weights are far from K-semistable)"
        )
    branch = "fano" if v > 0 else "continuation"
    return HeightReport(
        value_c.real,
        Convention.RAW_HEIGHT,
        f"p1_three_points_zeta[{branch}]",
        abs_err,
    )


def mabuchi_p1_constant() -> float:
    """Minimum of the arithmetic Mabuchi functional on integral models of
    the projective line: -1 - log(pi) = -pn_height(1) / 2."""
    return -1.0 - math.log(math.pi)
