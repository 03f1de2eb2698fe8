"""Confluent hypergeometric and parabolic cylinder functions.

The Kummer function M(a, c, z) = sum_k (a)_k/(c)_k z^k/k! is summed termwise
in ScaledReal arithmetic, so values of size exp(z) for z up to ~1e6 stay
representable.  Parabolic cylinder functions D_nu are evaluated from the
integral representation

    D_nu(z) = exp(-z^2/4)/Gamma(-nu) * int_0^inf t^(-nu-1) exp(-t^2/2 - z t) dt

for nu < 0 and lifted to nu >= 0 with the three-term recurrence
D_{nu+1}(z) = z D_nu(z) - nu D_{nu-1}(z).  Derivatives always come from the
companion recurrence D'_nu(z) = nu D_{nu-1}(z) - (z/2) D_nu(z), never from
numerical differentiation.  (For half-integer orders D_nu is expressible
through modified Bessel functions K_{1/4}, K_{3/4}; that form carries no
extra information and is not provided.)
"""

import math
from dataclasses import dataclass

from .numerics import (
    DEFAULT_TOL,
    ConvergenceError,
    DomainError,
    ScaledReal,
    Tolerances,
    gamma,
    integrate_semi_infinite,
)

__all__ = [
    "CylinderValue",
    "KummerValue",
    "cylinder_d",
    "kummer_log_ratio",
    "kummer_m",
    "kummer_m_prime",
    "laguerre",
]

_MAX_TERMS = 2_000_000
_STOP_REL = 1e-16
_RESCALE = 2.0**512
_RESCALE_INV = 2.0**-512
_MAX_ABS_Z = 1e6


@dataclass(frozen=True)
class KummerValue:
    """Result of a Kummer series evaluation."""

    value: ScaledReal
    terms_used: int
    converged: bool


@dataclass(frozen=True)
class CylinderValue:
    """Parabolic cylinder function value and derivative at one point."""

    value: float
    derivative: float
    nu: float
    z: float


def _term_peak_bound(a: float, c: float, z: float) -> float:
    """Upper bound on the index where |series term| stops growing.

    |t_{k+1}| >= |t_k| requires (|a|+k) z >= (c+k)(k+1); the positive root
    of k^2 + (c+1-z) k + (c - |a| z) bounds every growth index (using |a|
    only enlarges the root).  No real root means the terms decay from the
    start.
    """
    half_b = 0.5 * (c + 1.0 - z)
    disc = half_b * half_b - (c - abs(a) * z)
    if disc <= 0.0:
        return 0.0
    return max(0.0, -half_b + math.sqrt(disc))


def _series_parts(a: float, c: float, z: float) -> tuple[ScaledReal, ScaledReal, int, bool]:
    """Termwise sum of the Kummer series for z >= 0.

    Positive and negative terms go to separate accumulators so the only
    cancellation is the single final subtraction; for a > 0 the negative
    accumulator stays empty.  Term and accumulators share one power-of-two
    offset that is rescaled whenever the running sum outgrows 2**512; the
    stopping test runs before any rescale so it always compares the term
    and the sum in the same scaling.
    """
    term = 1.0
    pos = 1.0
    neg = 0.0
    offset = 0
    k = 0
    k_peak = _term_peak_bound(a, c, z)
    converged = False
    while k < _MAX_TERMS:
        term *= (a + k) * z / ((c + k) * (k + 1.0))
        k += 1
        if term >= 0.0:
            pos += term
        else:
            neg -= term
        scale = pos if pos >= neg else neg
        if term == 0.0:  # terminating polynomial, or underflow past the peak
            converged = True
            break
        if abs(term) < _STOP_REL * scale and k > k_peak:
            converged = True
            break
        if scale > _RESCALE:
            pos *= _RESCALE_INV
            neg *= _RESCALE_INV
            term *= _RESCALE_INV
            offset += 512
    return ScaledReal(pos, offset), ScaledReal(neg, offset), k + 1, converged


def kummer_m(a: float, c: float, z: float, strict: bool = False) -> KummerValue:
    """Kummer confluent hypergeometric function M(a, c, z).

    For z < 0 the series alternates and loses all precision near z ~ -c, so
    the evaluation goes through M(a, c, z) = exp(z) * M(c - a, c, -z), whose
    series is summed on the positive side.  Non-convergence is reported on
    the ``converged`` flag; ``strict`` turns it into an exception instead.
    """
    if c <= 0.0 and c == math.floor(c):
        raise DomainError(f"M(a,c,z) undefined for non-positive integer c={c}")
    if abs(z) > _MAX_ABS_Z:
        raise DomainError(f"|z| <= {_MAX_ABS_Z:g} required, got z={z}")
    if z >= 0.0:
        pos, neg, terms, converged = _series_parts(a, c, z)
        value = pos - neg
    else:
        pos, neg, terms, converged = _series_parts(c - a, c, -z)
        value = ScaledReal.exp(z) * (pos - neg)
    if strict and not converged:
        raise ConvergenceError(f"Kummer series did not converge for (a={a}, c={c}, z={z})")
    return KummerValue(value=value, terms_used=terms, converged=converged)


def kummer_m_prime(a: float, c: float, z: float) -> ScaledReal:
    """d/dz M(a, c, z), via the shift identity M' = (a/c) M(a+1, c+1, z)."""
    return ScaledReal.from_float(a / c) * kummer_m(a + 1.0, c + 1.0, z, strict=True).value


def kummer_log_ratio(a: float, c: float, z: float) -> float:
    """M'(a, c, z) / M(a, c, z) for a > 0, c > 0, z >= 0.

    Both series have positive terms and the exp(z)-sized growth cancels in
    the ScaledReal quotient, so the ratio is accurate for z up to ~1e6.
    """
    if a <= 0.0 or c <= 0.0 or z < 0.0:
        raise DomainError("kummer_log_ratio requires a > 0, c > 0, z >= 0")
    num = kummer_m(a + 1.0, c + 1.0, z, strict=True).value
    den = kummer_m(a, c, z, strict=True).value
    return (a / c) * float(num / den)


def laguerre(nu: float, alpha: float, z: float) -> float:
    """Generalized Laguerre function L_nu^alpha(z).

    Defined as Gamma(alpha+nu+1) / (Gamma(alpha+1) Gamma(nu+1)) * M(-nu, alpha+1, z);
    all three Gamma arguments must be positive.
    """
    for arg in (alpha + nu + 1.0, alpha + 1.0, nu + 1.0):
        if arg <= 0.0:
            raise DomainError(f"laguerre needs positive Gamma arguments, got {arg}")
    coeff = gamma(alpha + nu + 1.0) / (gamma(alpha + 1.0) * gamma(nu + 1.0))
    return coeff * kummer_m(-nu, alpha + 1.0, z, strict=True).value.to_float()


def _cylinder_from_integral(nu: float, z: float, tol: Tolerances) -> float:
    """D_nu(z) for nu < 0 from the half-line integral representation.

    For z < 0 the exponent -t^2/2 - z t peaks at t = -z with value z^2/2;
    the peak is factored out of the integrand so it never overflows, and
    reabsorbed into the exp(-z^2/4) prefactor.
    """
    power = -nu - 1.0
    shift = 0.5 * z * z if z < 0.0 else 0.0

    def integrand(t: float) -> float:
        return t**power * math.exp(-0.5 * t * t - z * t - shift)

    moment = integrate_semi_infinite(integrand, decay_scale=-z, tol=tol)
    return math.exp(shift - 0.25 * z * z) * moment / gamma(-nu)


def _reciprocal_gamma(x: float) -> float:
    """1/Gamma(x) for any real x, zero at the poles."""
    if x <= 0.0 and x == math.floor(x):
        return 0.0
    return 1.0 / math.gamma(x)


def _cylinder_even_odd(nu: float, z: float) -> float:
    """D_nu(z) from its even/odd Kummer decomposition,

        2^{nu/2} sqrt(pi) e^{-z^2/4} [ M(-nu/2, 1/2, z^2/2) / Gamma((1-nu)/2)
                                       - sqrt(2) z M((1-nu)/2, 3/2, z^2/2) / Gamma(-nu/2) ].

    Assembled in ScaledReal because the Kummer factors reach exp(z^2/2).
    Accurate for z <= 0, where the two pieces reinforce the dominant
    exp(+z^2/4) branch; useless for large z > 0, where they cancel to the
    recessive solution.
    """
    w = 0.5 * z * z
    even = ScaledReal.from_float(_reciprocal_gamma(0.5 * (1.0 - nu))) * kummer_m(
        -0.5 * nu, 0.5, w, strict=True
    ).value
    odd = ScaledReal.from_float(
        -math.sqrt(2.0) * z * _reciprocal_gamma(-0.5 * nu)
    ) * kummer_m(0.5 * (1.0 - nu), 1.5, w, strict=True).value
    prefactor = ScaledReal.exp(-0.25 * z * z) * ScaledReal.from_float(
        2.0 ** (0.5 * nu) * math.sqrt(math.pi)
    )
    return float(prefactor * (even + odd))


def _cylinder_value(nu: float, z: float, tol: Tolerances) -> float:
    """D_nu(z) by the route that is well conditioned for the given signs.

    nu < 0: half-line integral representation (positive integrand).
    nu >= 0, z <= 0: even/odd Kummer decomposition (pieces reinforce).
    nu >= 0, z > 0: recurrence lift from two negative-order anchors,
    D_{nu+1}(z) = z D_nu(z) - nu D_{nu-1}(z); on this side the lift keeps
    relative accuracy since the subtracted term is smaller by ~nu/z^2.
    """
    if nu < 0.0:
        return _cylinder_from_integral(nu, z, tol)
    if z <= 0.0:
        return _cylinder_even_odd(nu, z)
    lifts = int(math.floor(nu)) + 1  # lands mu = nu - lifts in [-1, 0)
    mu = nu - lifts
    below = _cylinder_from_integral(mu - 1.0, z, tol)
    value = _cylinder_from_integral(mu, z, tol)
    for _ in range(lifts):
        below, value = value, z * value - mu * below
        mu += 1.0
    return value


def cylinder_d(nu: float, z: float, tol: Tolerances = DEFAULT_TOL) -> CylinderValue:
    """Parabolic cylinder function D_nu(z) with derivative, nu in [-4, 4].

    The derivative is always the recurrence combination
    nu D_{nu-1}(z) - (z/2) D_nu(z), never a numerical difference.
    """
    if not -4.0 <= nu <= 4.0:
        raise DomainError(f"cylinder_d supports nu in [-4, 4], got {nu}")
    if abs(z) > 50.0:
        raise DomainError(f"cylinder_d supports |z| <= 50, got {z}")
    value = _cylinder_value(nu, z, tol)
    below = _cylinder_value(nu - 1.0, z, tol)
    derivative = nu * below - 0.5 * z * value
    return CylinderValue(value=value, derivative=derivative, nu=nu, z=z)
