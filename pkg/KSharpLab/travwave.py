"""Peakompacton traveling waves U(xi), xi = x - c t, of the K#(n,m) hierarchy.

With both integration constants zero the second integral reads
(U')^(m+1) = kappa U^2 - gamma U^(n+2), and its implicit solution is

    ((m+1)/(m-1)) U (kappa U^2)^(-1/(m+1)) 2F1[a, b; b+1; (U/U_max)^n] = xi0 - |xi|

with a = 1/(m+1), b = (m-1)/((m+1) n). The right half (U falling on
[0, xi0]) is built and mirrored; U vanishes for |xi| >= xi0.
"""
import logging
import math
from typing import Optional

import numpy as np
from scipy.optimize import bisect

from .config import BISECTION_XTOL, NEAR_PEAK_XI
from .exceptions import DomainError
from .models import EdgeBehavior, Grid, HierarchyParams, Peakompacton
from .spatial import mollify as mollify_field, periodic_offsets
from .specfun import Hyp2F1Args, hyp2f1_b_plus_one

logger = logging.getLogger(__name__)


def peak_height(p: HierarchyParams, c: float) -> float:
    return ((p.n + 1) * (p.n + 2) * c / 2.0) ** (1.0 / p.n)


def kappa_gamma(p: HierarchyParams, c: float) -> tuple[float, float]:
    n, m = p.n, p.m
    return (m + 1) * c / (2.0 * m), (m + 1) / ((n + 1) * (n + 2) * m)


def _implicit_lhs(p: HierarchyParams, kappa: float, u_max: float, u: float) -> float:
    # U (kappa U^2)^(-1/(m+1)) written as U^((m-1)/(m+1)) kappa^(-1/(m+1)) so U = 0 is allowed
    n, m = p.n, p.m
    if u == 0.0:
        return 0.0
    z = min((u / u_max) ** n, 1.0)
    args = Hyp2F1Args(a=1.0 / (m + 1), b=(m - 1) / ((m + 1) * n), z=z)
    return ((m + 1) / (m - 1)) * u ** ((m - 1) / (m + 1)) * kappa ** (-1.0 / (m + 1)) \
        * hyp2f1_b_plus_one(args)


def build(p: HierarchyParams, c: float) -> Peakompacton:
    if p.m < 2:
        raise DomainError(f'compact solutions need m >= 2, got m={p.m}')
    if not (c > 0 and math.isfinite(c)):
        raise DomainError(f'wave speed must be positive, got c={c!r}')
    if p.advective != 1.0 or p.dispersive != 1.0:
        raise DomainError('peakompactons are built for the canonical equation; '
                          'rescale with hierarchy.scales_from_coefficients first')
    u_max = peak_height(p, c)
    kappa, gamma_coef = kappa_gamma(p, c)
    xi0 = _implicit_lhs(p, kappa, u_max, u_max)
    return Peakompacton(p=p, c=c, u_max=u_max, kappa=kappa, gamma_coef=gamma_coef, xi0=xi0)


def _distance_from_peak(w: Peakompacton, u: float) -> float:
    return w.xi0 - _implicit_lhs(w.p, w.kappa, w.u_max, u)


def xi_of_u(w: Peakompacton, u: float) -> float:
    """|xi| at which the profile takes the value u, 0 < u <= U_max."""
    if not 0.0 < u <= w.u_max:
        raise DomainError(f'u must lie in (0, {w.u_max}], got {u!r}')
    return _distance_from_peak(w, u)


def profile(w: Peakompacton, xi: float) -> float:
    distance = abs(xi)
    if distance >= w.xi0:
        return 0.0
    if distance < NEAR_PEAK_XI:
        return w.u_max
    # |xi|(U) falls monotonically from xi0 at U = 0 to 0 at U = U_max
    return bisect(lambda u: _distance_from_peak(w, u) - distance, 0.0, w.u_max,
                  xtol=BISECTION_XTOL)


def sample_profile(w: Peakompacton, xi) -> np.ndarray:
    xi = np.asarray(xi, dtype=float)
    return np.array([profile(w, x) for x in xi.ravel()]).reshape(xi.shape)


def _require_interior(w: Peakompacton, u: float) -> None:
    if not 0.0 < u < w.u_max:
        raise DomainError(f'u must lie in (0, {w.u_max}), got {u!r}')


def second_derivative(w: Peakompacton, u: float) -> float:
    """Closed-form U'' on the open range 0 < U < U_max."""
    _require_interior(w, u)
    n, m, c = w.p.n, w.p.m, w.c
    top = w.u_max ** n
    return (u ** (-(m - 3) / (m + 1))
            * (top - u ** n) ** (-(m - 1) / (m + 1))
            * (c * (n + 1) - u ** n)
            * top ** (-2.0 / (m + 1))
            * w.kappa ** (-(m - 1) / (m + 1))
            * (n + 2) * c / (2.0 * m))


def _second_integral(w: Peakompacton, u: float) -> tuple[float, float, float]:
    """G = kappa U^2 - gamma U^(n+2) and its first two U-derivatives."""
    n = w.p.n
    g = w.kappa * u ** 2 - w.gamma_coef * u ** (n + 2)
    dg = 2.0 * w.kappa * u - (n + 2) * w.gamma_coef * u ** (n + 1)
    d2g = 2.0 * w.kappa - (n + 2) * (n + 1) * w.gamma_coef * u ** n
    return g, dg, d2g


def second_derivative_from_ode(w: Peakompacton, u: float) -> float:
    """U'' = G'(U) / ((m+1) G(U)^((m-1)/(m+1))) with G the second-integral right side."""
    _require_interior(w, u)
    m = w.p.m
    g, dg, _ = _second_integral(w, u)
    return dg / ((m + 1) * g ** ((m - 1) / (m + 1)))


def slope(w: Peakompacton, u: float) -> float:
    """|U'| = G(U)^(1/(m+1)) at height 0 <= u <= U_max.

    U' is positive on the rising flank (xi < 0) and vanishes at the support
    edges and at the crest, so U' is continuous at xi = 0 and xi = +-xi0.
    """
    if not 0.0 <= u <= w.u_max:
        raise DomainError(f'u must lie in [0, {w.u_max}], got {u!r}')
    if u in (0.0, w.u_max):
        return 0.0
    g, _, _ = _second_integral(w, u)
    return max(g, 0.0) ** (1.0 / (w.p.m + 1))


def dispersive_terms(w: Peakompacton, u: float) -> tuple[float, float]:
    """The two parts of [(U')^m]'' on the rising flank.

    Returns m(m-1) (U')^(m-2) (U'')^2 and m (U')^(m-1) U'''. Both parts tend to 0
    at the support edges and diverge with opposite signs at the crest; their sum
    (m/(m+1)) G''(U) U' = (c - U^n) U' tends to 0 at both ends.
    """
    _require_interior(w, u)
    m = w.p.m
    g, dg, d2g = _second_integral(w, u)
    curvature = m * (m - 1) * dg ** 2 / ((m + 1) ** 2 * g ** (m / (m + 1)))
    total = (m / (m + 1)) * d2g * g ** (1.0 / (m + 1))
    return curvature, total - curvature


def edge_behavior(p: HierarchyParams, c: Optional[float] = None) -> EdgeBehavior:
    """Limit of U'' as U -> 0+ at the support edges."""
    if p.m < 2:
        raise DomainError(f'compact solutions need m >= 2, got m={p.m}')
    if p.m < 3:
        return EdgeBehavior(kind='vanishing', value=0.0)
    if p.m == 3:
        return EdgeBehavior(kind='finite', value=None if c is None else math.sqrt(c / 6.0))
    return EdgeBehavior(kind='divergent')


def peak_behavior(p: HierarchyParams) -> EdgeBehavior:
    """Limit of U'' as U -> U_max-; divergent for every m > 1, n > 0."""
    if p.m < 2:
        raise DomainError(f'compact solutions need m >= 2, got m={p.m}')
    return EdgeBehavior(kind='divergent')


def second_integral_residual(p: HierarchyParams, c: float, u, u_prime):
    """(U')^(m+1) - kappa U^2 + gamma U^(n+2), zero integration constants.

    Needs no Peakompacton, so it also checks members without compact waves
    such as the (1, 1) soliton.
    """
    kappa, gamma_coef = kappa_gamma(p, c)
    return u_prime ** (p.m + 1) - kappa * u ** 2 + gamma_coef * u ** (p.n + 2)


def ode_residual(w: Peakompacton, u, u_prime):
    return second_integral_residual(w.p, w.c, u, u_prime)


def kdv_soliton(c: float, xi):
    """3c sech^2(sqrt(c) xi / 2), the (n, m) = (1, 1) solitary wave."""
    if not c > 0:
        raise DomainError(f'wave speed must be positive, got c={c!r}')
    s = np.abs(np.sqrt(c) * np.asarray(xi, dtype=float) / 2.0)
    decay = np.exp(-2.0 * s)
    result = 3.0 * c * 4.0 * decay / (1.0 + decay) ** 2
    return float(result) if result.ndim == 0 else result


def initial_peakompacton(w: Peakompacton, grid: Grid, center: Optional[float] = None,
                         amplitude: float = 1.0, mollify: bool = False) -> tuple[np.ndarray, float]:
    """Peakompacton sampled on the grid, optionally smoothed by a Gaussian of width 2h.

    Returns the samples and the max-norm change made by the smoothing.
    """
    if grid.length < 6.0 * w.xi0:
        logger.warning('box length %.4g is below 6 xi0 = %.4g; periodic images interact',
                       grid.length, 6.0 * w.xi0)
    if center is None:
        center = 0.5 * grid.length
    values = amplitude * sample_profile(w, periodic_offsets(grid, center))
    if not mollify:
        return values, 0.0
    smoothed, error = mollify_field(values)
    logger.info('mollified peakompacton, max change %.3e', error)
    return smoothed, error


def describe(w: Peakompacton) -> dict:
    return {'n': w.p.n, 'm': w.p.m, 'c': w.c, 'u_max': w.u_max, 'xi0': w.xi0,
            'kappa': w.kappa, 'gamma': w.gamma_coef}


def tabulate(w: Peakompacton, samples: int, reach: float = 1.2) -> tuple[np.ndarray, np.ndarray]:
    """Profile on `samples` equispaced points of [-reach xi0, reach xi0]."""
    if samples < 2:
        raise DomainError(f'samples must be >= 2, got {samples}')
    xi = np.linspace(-reach * w.xi0, reach * w.xi0, samples)
    return xi, sample_profile(w, xi)
