"""Shared numeric substrate.

Scaled power-of-two floats for overflow-free series summation, adaptive
quadrature on the half line, a bracketing root finder, finite differences,
and the Gamma function for positive arguments.  Everything here is a pure
function of its inputs and safe to call concurrently.
"""

import math
import sys
from collections.abc import Callable
from dataclasses import dataclass

from scipy import integrate, optimize

EPS = sys.float_info.epsilon

__all__ = [
    "EPS",
    "BracketError",
    "ConvergenceError",
    "DomainError",
    "QuadratureError",
    "ScaledReal",
    "Tolerances",
    "brent_root",
    "central_diff",
    "gamma",
    "integrate_semi_infinite",
]


class DomainError(ValueError):
    """An argument lies outside the supported domain."""


class BracketError(ValueError):
    """The supplied interval does not bracket a sign change."""


class ConvergenceError(ArithmeticError):
    """An iteration failed to converge within its budget."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature could not reach the requested accuracy."""


@dataclass(frozen=True)
class Tolerances:
    """Accuracy knobs shared by the iterative routines."""

    rel_tol: float = 1e-13
    abs_tol: float = 1e-300
    max_iter: int = 200
    quad_panels_max: int = 4096

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("tolerances must be strictly positive")
        if self.max_iter < 10:
            raise DomainError("max_iter must be at least 10")
        if self.quad_panels_max <= 0:
            raise DomainError("quad_panels_max must be strictly positive")


DEFAULT_TOL = Tolerances()

# Cody-Waite split of ln 2; the high part has 31 trailing zero bits so that
# k * _LN2_HI is exact for |k| < 2**31.
_LN2_HI = float.fromhex("0x1.62e42p-1")
_LN2_LO = 4.7493250390316726e-07
_LOG2E = 1.4426950408889634


@dataclass(frozen=True)
class ScaledReal:
    """A real number stored as mantissa * 2**exponent.

    The sign lives on the mantissa and |mantissa| is kept in [1, 2) unless
    the value is exactly zero.  This makes sums of positive series whose
    magnitude reaches exp(1e6) representable without overflow while keeping
    full double-precision resolution on the mantissa.
    """

    mantissa: float
    exponent: int = 0

    def __post_init__(self):
        m = self.mantissa
        if not math.isfinite(m):
            raise DomainError("ScaledReal mantissa must be finite")
        if m == 0.0:
            object.__setattr__(self, "exponent", 0)
            return
        frac, e = math.frexp(m)  # |frac| in [0.5, 1)
        object.__setattr__(self, "mantissa", frac * 2.0)
        object.__setattr__(self, "exponent", self.exponent + e - 1)

    @classmethod
    def from_float(cls, x: float) -> "ScaledReal":
        return cls(x, 0)

    @classmethod
    def exp(cls, x: float) -> "ScaledReal":
        """exp(x) for any |x| <~ 1e9, without float overflow or underflow."""
        if x == 0.0:
            return cls(1.0, 0)
        k = round(x * _LOG2E)
        r = (x - k * _LN2_HI) - k * _LN2_LO
        return cls(math.exp(r), k)

    def to_float(self) -> float:
        try:
            return math.ldexp(self.mantissa, self.exponent)
        except OverflowError:
            return math.copysign(math.inf, self.mantissa)

    __float__ = to_float

    @property
    def sign(self) -> int:
        if self.mantissa > 0.0:
            return 1
        if self.mantissa < 0.0:
            return -1
        return 0

    def __add__(self, other: "ScaledReal") -> "ScaledReal":
        if self.mantissa == 0.0:
            return other
        if other.mantissa == 0.0:
            return self
        hi, lo = (self, other) if self.exponent >= other.exponent else (other, self)
        shift = lo.exponent - hi.exponent
        if shift < -1100:  # the small term is below one ulp of the large one
            return hi
        return ScaledReal(hi.mantissa + math.ldexp(lo.mantissa, shift), hi.exponent)

    def __sub__(self, other: "ScaledReal") -> "ScaledReal":
        return self + (-other)

    def __neg__(self) -> "ScaledReal":
        return ScaledReal(-self.mantissa, self.exponent)

    def __abs__(self) -> "ScaledReal":
        return ScaledReal(abs(self.mantissa), self.exponent)

    def __mul__(self, other: "ScaledReal") -> "ScaledReal":
        return ScaledReal(self.mantissa * other.mantissa, self.exponent + other.exponent)

    def __truediv__(self, other: "ScaledReal") -> "ScaledReal":
        if other.mantissa == 0.0:
            raise ZeroDivisionError("division by zero ScaledReal")
        return ScaledReal(self.mantissa / other.mantissa, self.exponent - other.exponent)

    def _cmp(self, other: "ScaledReal") -> int:
        sa, sb = self.sign, other.sign
        if sa != sb:
            return -1 if sa < sb else 1
        if sa == 0:
            return 0
        if self.exponent != other.exponent:
            hi_is_self = self.exponent > other.exponent
            return (1 if hi_is_self else -1) * sa
        if self.mantissa == other.mantissa:
            return 0
        return 1 if self.mantissa > other.mantissa else -1

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0


def gamma(x: float) -> float:
    """Gamma function for x > 0.

    Raises DomainError for x <= 0 and OverflowError past the double range
    (x > ~171.6).  Relative accuracy is a few ulp throughout (0, 170].
    """
    if x <= 0.0:
        raise DomainError(f"gamma requires x > 0, got {x}")
    return math.gamma(x)


def integrate_semi_infinite(
    f: Callable[[float], float],
    decay_scale: float = 0.0,
    tol: Tolerances = DEFAULT_TOL,
) -> float:
    """Integral of f over (0, infinity) for Gaussian- or exponentially-decaying f.

    ``f`` may carry an integrable endpoint singularity t**p with p > -1 and
    must decay at least like exp(-t) beyond ``decay_scale``, e.g. any
    integrand bounded by exp(b*t - t**2/2) * t**p with b <= decay_scale.

    The half line is truncated at decay_scale + 48 (the discarded tail is
    below 1e-20 relative for exp(-t) decay, far smaller for Gaussian decay)
    and the remaining finite integral is handled by adaptive Gauss-Kronrod
    panels with breakpoints seeded around the region that carries the mass.
    """
    peak = max(decay_scale, 0.0)
    upper = peak + 48.0
    seeds = sorted({0.25, 1.0, peak + 1.0, peak + 8.0, upper / 2.0})
    seeds = [p for p in seeds if 0.0 < p < upper]
    try:
        out = integrate.quad(
            f,
            0.0,
            upper,
            points=seeds,
            limit=tol.quad_panels_max,
            epsabs=tol.abs_tol,
            epsrel=tol.rel_tol,
            full_output=True,
        )
    except ValueError as exc:  # requested tolerance tighter than QUADPACK allows
        raise QuadratureError(str(exc)) from exc
    value, abserr = out[0], out[1]
    if len(out) > 3:  # quadpack gave up; accept only if the estimate is still good
        if abserr > max(100.0 * tol.rel_tol * abs(value), tol.abs_tol):
            raise QuadratureError(out[3])
    return value


def brent_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerances = DEFAULT_TOL,
) -> float:
    """Root of f on [lo, hi], which must bracket a sign change.

    Raises BracketError when f(lo) and f(hi) have the same sign and
    ConvergenceError if the iteration budget is exhausted.
    """
    if not lo < hi:
        raise BracketError(f"need lo < hi, got [{lo}, {hi}]")
    try:
        root, result = optimize.brentq(
            f,
            lo,
            hi,
            xtol=tol.abs_tol,
            rtol=max(tol.rel_tol, 4.0 * EPS),
            maxiter=tol.max_iter,
            full_output=True,
            disp=False,
        )
    except ValueError as exc:
        raise BracketError(str(exc)) from exc
    if not result.converged:
        raise ConvergenceError(f"no convergence in {tol.max_iter} iterations")
    return root


def central_diff(f: Callable[[float], float], x: float, order: int = 1) -> float:
    """Central finite-difference derivative of order 1 or 2 at x.

    The step balances truncation against round-off: eps**(1/3) scaled by
    max(|x|, 1) for the first derivative, eps**(1/4) for the second.
    """
    if order == 1:
        h = max(abs(x), 1.0) * EPS ** (1.0 / 3.0)
        return (f(x + h) - f(x - h)) / (2.0 * h)
    if order == 2:
        h = max(abs(x), 1.0) * EPS**0.25
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
    raise DomainError(f"order must be 1 or 2, got {order}")
