"""The first eigenvalue along the constant-volume Kahler metrics of SU(3)/T^2.

Torus coordinates (a, b) stand for xi = diag(ia, ib, -i(a+b)); the chamber is
-a/2 < b < a.  With s = a - b and t = a + 2b the metric coefficients are
12 s, 12 (s + t), 12 t and the metrics with the Kahler-Einstein volume form the
curve s t (s + t) = 2/27.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction as Q

import numpy as np
from scipy import optimize

from .flag import FlagManifold, build_flag
from .roots import DomainError, build_root_system
from .spectrum import MetricParameter, casimir_on_torus, metric_parameter

CURVE_LEVEL = 2 / 27
KE_S = 1 / 3


class BracketError(RuntimeError):
    """No interior maximum found in the requested interval."""


def su3_flag() -> FlagManifold:
    return build_flag(build_root_system("A", 3), ())


def st_from_ab(a, b):
    return a - b, a + 2 * b


def ab_from_st(s, t):
    b = (t - s) / 3
    return s + b, b


def su3_curve_t(s: float) -> float:
    """The t > 0 with s t (s + t) = 2/27."""
    if not s > 0:
        raise DomainError("s must be positive")
    return (-s * s + math.sqrt(s**4 + 8 * s / 27)) / (2 * s)


def su3_eigenvalues_closed_form(s, t, on_curve: bool = True):
    """Both eigenvalues of the torus Casimir at (s, t), smaller first.

    On the curve this is 9/2 (t^2 + s^2 + 3st -+ sqrt(t^4 + s^4 - s^2 t^2)).
    Off the curve the operator scales like 1/xi, giving the homogeneous form
    (1/3) (...) / (s t (s + t)).
    """
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    root = np.sqrt(t**4 + s**4 - s * s * t * t)
    base = t * t + s * s + 3 * s * t
    factor = 4.5 if on_curve else 1 / (3 * s * t * (s + t))
    return factor * (base - root), factor * (base + root)


def f_on_curve(s):
    """Smaller eigenvalue along the curve, as a function of s."""
    s = np.asarray(s, dtype=float)
    t = (-s * s + np.sqrt(s**4 + 8 * s / 27)) / (2 * s)
    return su3_eigenvalues_closed_form(s, t)[0]


def su3_parameter(s, t) -> MetricParameter:
    """Metric parameter for (s, t); exact when both are rationals."""
    if isinstance(s, (int, Q)) and isinstance(t, (int, Q)):
        a, b = ab_from_st(Q(s), Q(t))
    else:
        a, b = ab_from_st(float(s), float(t))
    return metric_parameter(su3_flag(), (a, b))


def su3_brute_force_eigenvalues(s, t) -> tuple[float, ...]:
    """Eigenvalues from the 8-dimensional adjoint construction."""
    return casimir_on_torus(su3_flag(), su3_parameter(s, t)).eigenvalues


@dataclass(frozen=True)
class ScanResult:
    s: np.ndarray
    t: np.ndarray
    f: np.ndarray
    max_value: float
    argmax_s: float


def su3_lambda1_scan(n_samples: int = 10_000, s_min: float = 0.05, s_max: float = 2.0) -> ScanResult:
    if not (0 < s_min < s_max) or n_samples < 2:
        raise DomainError("need 0 < s_min < s_max and n_samples >= 2")
    s = np.linspace(s_min, s_max, int(n_samples))
    t = (-s * s + np.sqrt(s**4 + 8 * s / 27)) / (2 * s)
    f = su3_eigenvalues_closed_form(s, t)[0]
    k = int(np.argmax(f))
    return ScanResult(s, t, f, float(f[k]), float(s[k]))


@dataclass(frozen=True)
class OptimumResult:
    s_star: float
    t_star: float
    f_star: float
    bracket: tuple[float, float, float]
    evaluations: int


def maximize_lambda1_on_curve(
    tol: float = 1e-10, s_lo: float = 0.05, s_hi: float = 2.0, grid: int = 17
) -> OptimumResult:
    """Maximize f along the curve: coarse bracketing, then golden-section search."""
    if not tol > 0:
        raise DomainError("tol must be positive")
    if not 0 < s_lo < s_hi:
        raise DomainError("need 0 < s_lo < s_hi")
    xs = np.linspace(s_lo, s_hi, grid)
    fs = f_on_curve(xs)
    k = int(np.argmax(fs))
    if k in (0, grid - 1):
        raise BracketError(f"maximum at the interval edge s={xs[k]}")
    bracket = (float(xs[k - 1]), float(xs[k]), float(xs[k + 1]))
    # quadratic peak: an s-interval of sqrt(tol) pins f to about tol
    xtol = min(math.sqrt(tol), 1e-8)
    res = optimize.minimize_scalar(
        lambda x: -float(f_on_curve(x)), bracket=bracket, method="golden", tol=xtol
    )
    s_star = float(res.x)
    return OptimumResult(s_star, su3_curve_t(s_star), -float(res.fun), bracket, int(res.nfev))
