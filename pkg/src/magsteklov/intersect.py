"""Crossing points of consecutive eigenvalue branches.

The curves lambda_n and lambda_{n+1} meet at a single positive field value
z_n, characterized by M(-1/2, n+1, z_n) = 0 and equivalently by

    (z - n - 1/2) M(1/2, n+1, z) - z M'(1/2, n+1, z) = 0.

At the crossing the eigenvalue collapses to the exact value
lambda_n(z_n) = z_n - n - 1, and for large n

    z_n = n + alpha sqrt(n) + (alpha^2 + 2)/3 + O(n^{-1/2}),

with the rescaled offset beta_n = (z_n - n - 1/2)/sqrt(n) tending to alpha.
This module locates the z_n, records the residuals of both
characterizations, and extracts the expansion coefficients by least squares.
"""

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import disk, models
from .numerics import (
    DEFAULT_TOL,
    BracketError,
    DomainError,
    ScaledReal,
    Tolerances,
    brent_root,
)
from .specfun import kummer_m, kummer_m_prime

__all__ = [
    "AsymptoticFit",
    "IntersectionRecord",
    "beta_n",
    "check_F_formula",
    "clear_cache",
    "find_zn",
    "fit_asymptotics",
    "gap_zn",
    "lambda_at_zn_asymptotic_check",
]


@dataclass(frozen=True)
class IntersectionRecord:
    """One branch crossing with the residuals of its characterizations.

    ``beta_n`` is None for n = 0 (the rescaling divides by sqrt(n)).
    residual_M is |M(-1/2, n+1, z_n)| on the natural O(1) scale of that
    series near its zero; residual_char is the relative residual of the
    first-order characterization; residual_F is |lambda - (z_n - n - 1)|.
    """

    n: int
    z_n: float
    lambda_at_zn: float
    beta_n: float | None
    residual_M: float
    residual_char: float
    residual_F: float


@dataclass(frozen=True)
class AsymptoticFit:
    """Least-squares expansion of z_n - n in powers of n^{-1/2}."""

    coefficients: tuple[float, ...]  # against the basis sqrt(n), 1, n^{-1/2}, n^{-1}
    n_range: tuple[int, int]
    max_residual: float


def _crossing_function(n: int):
    """z -> M(-1/2, n+1, z) as a plain float.

    Near z_n the positive-part sum of the series is ~1, so the float value
    is itself the natural residual scale.  On the bracket used below the
    magnitude never exceeds ~e^17, so no scaling is needed.
    """

    def f(z: float) -> float:
        return kummer_m(-0.5, n + 1.0, z, strict=True).value.to_float()

    return f


def _char_residual(n: int, z: float) -> float:
    """Relative residual of (z - n - 1/2) M - z M' at z."""
    m = kummer_m(0.5, n + 1.0, z, strict=True).value
    mp = kummer_m_prime(0.5, n + 1.0, z)
    left = ScaledReal.from_float(z - n - 0.5) * m
    right = ScaledReal.from_float(z) * mp
    scale = abs(left) + abs(right)
    return float(abs(left - right) / scale)


def _find_zn_impl(n: int, tol: Tolerances) -> IntersectionRecord:
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"mode index must be an integer >= 0, got {n!r}")
    alpha = models.compute_alpha()
    sqrt_n = math.sqrt(n)
    lo = n + 1.0
    hi = n + alpha * sqrt_n + (alpha * alpha + 2.0) / 3.0 + 5.0 * math.sqrt(n + 1.0)
    f = _crossing_function(n)
    f_lo, f_hi = f(lo), f(hi)
    if not (f_lo > 0.0 > f_hi):
        # the crossing is provably unique and provably past n+1; a failed
        # bracket means the evaluation itself broke, so abort rather than
        # widen the search
        raise BracketError(
            f"no sign change for mode {n} on [{lo}, {hi}] (f={f_lo:.3e}, {f_hi:.3e})"
        )
    z = brent_root(f, lo, hi, tol)
    lam = disk.lambda_n(n, z)
    return IntersectionRecord(
        n=n,
        z_n=z,
        lambda_at_zn=lam,
        beta_n=(z - n - 0.5) / sqrt_n if n >= 1 else None,
        residual_M=abs(f(z)),
        residual_char=_char_residual(n, z),
        residual_F=abs(lam - (z - n - 1.0)),
    )


@functools.lru_cache(maxsize=None)
def _find_zn_cached(n: int) -> IntersectionRecord:
    return _find_zn_impl(n, DEFAULT_TOL)


def find_zn(n: int, tol: Tolerances | None = None) -> IntersectionRecord:
    """Crossing point of the branches lambda_n and lambda_{n+1}.

    Results at the default tolerance are cached per process; the records
    are immutable.
    """
    if tol is None:
        return _find_zn_cached(n)
    return _find_zn_impl(n, tol)


def clear_cache() -> None:
    _find_zn_cached.cache_clear()


def check_F_formula(n_max: int) -> float:
    """Max over n <= n_max of |lambda_n(z_n) - (z_n - n - 1)|."""
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    return max(find_zn(n).residual_F for n in range(n_max + 1))


def beta_n(n: int) -> float:
    """Rescaled crossing offset (z_n - n - 1/2)/sqrt(n); tends to alpha."""
    if n < 1:
        raise DomainError(f"beta_n needs n >= 1, got {n}")
    value = find_zn(n).beta_n
    assert value is not None
    return value


def gap_zn(n: int) -> float:
    """Spacing z_n - z_{n-1}; approaches 1 + (alpha/2) n^{-1/2} for large n."""
    if n < 1:
        raise DomainError(f"gap_zn needs n >= 1, got {n}")
    return find_zn(n).z_n - find_zn(n - 1).z_n


def lambda_at_zn_asymptotic_check(n: int) -> float:
    """|lambda_n(z_n) - alpha sqrt(n) - (alpha^2 - 1)/3| at one mode."""
    alpha = models.compute_alpha()
    record = find_zn(n)
    predicted = alpha * math.sqrt(n) + (alpha * alpha - 1.0) / 3.0
    return abs(record.lambda_at_zn - predicted)


def fit_asymptotics(records: list[IntersectionRecord], terms: int = 4) -> AsymptoticFit:
    """Least-squares fit of z_n - n against {sqrt(n), 1, n^{-1/2}, n^{-1}}.

    ``terms`` truncates that basis.  Requires n_hi/n_lo >= 4 so the basis
    columns stay distinguishable; higher-order coefficients than n^{-1} are
    not resolvable in double precision and are out of scope.
    """
    if not 1 <= terms <= 4:
        raise DomainError(f"terms must be in [1, 4], got {terms}")
    if len(records) < terms + 1:
        raise DomainError("need more records than fit terms")
    ns = np.array([float(r.n) for r in records])
    if ns.min() <= 0:
        raise DomainError("fit requires records with n >= 1")
    if ns.max() / ns.min() < 4.0:
        raise DomainError("n range too narrow for a stable fit (need n_hi/n_lo >= 4)")
    y = np.array([r.z_n - r.n for r in records])
    basis = np.column_stack(
        [np.sqrt(ns), np.ones_like(ns), 1.0 / np.sqrt(ns), 1.0 / ns][:terms]
    )
    coeffs, _, rank, _ = np.linalg.lstsq(basis, y, rcond=None)
    if rank < terms:
        raise DomainError("fit basis is numerically rank deficient on this n range")
    residuals = basis @ coeffs - y
    return AsymptoticFit(
        coefficients=tuple(float(c) for c in coeffs),
        n_range=(int(ns.min()), int(ns.max())),
        max_residual=float(np.max(np.abs(residuals))),
    )
