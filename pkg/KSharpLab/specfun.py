"""Log-gamma and the Gauss function 2F1(a, b; b+1; z) on 0 <= z <= 1."""
import math
from dataclasses import dataclass

from scipy.integrate import quad

from .config import (HYP2F1_SERIES_MAX_TERMS, HYP2F1_SERIES_MAX_Z, HYP2F1_SERIES_TOL,
                     QUAD_EPSREL, QUAD_LIMIT)
from .exceptions import DomainError

# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)


def ln_gamma(x: float) -> float:
    if not x > 0 or not math.isfinite(x):
        raise DomainError(f'ln_gamma needs a finite x > 0, got {x!r}')
    if x < 0.5:
        # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return math.log(math.pi / math.sin(math.pi * x)) - ln_gamma(1.0 - x)
    x -= 1.0
    series = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        series += _LANCZOS_COEF[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (x + 0.5) * math.log(t) - t + math.log(series)


@dataclass(frozen=True)
class Hyp2F1Args:
    """Parameters of 2F1(a, b; c; z) with the third parameter fixed to c = b + 1."""
    a: float
    b: float
    z: float

    def __post_init__(self):
        if not 0.0 < self.a < 1.0:
            raise DomainError(f'need 0 < a < 1, got a={self.a!r}')
        if not (self.b > 0 and math.isfinite(self.b)):
            raise DomainError(f'need b > 0, got b={self.b!r}')
        if not 0.0 <= self.z <= 1.0:
            raise DomainError(f'need 0 <= z <= 1, got z={self.z!r}')

    @property
    def c(self) -> float:
        return self.b + 1.0


def hyp2f1_gauss(args: Hyp2F1Args) -> float:
    """Value at z = 1: Gamma(b+1) Gamma(1-a) / Gamma(b+1-a)."""
    a, b = args.a, args.b
    return math.exp(ln_gamma(b + 1.0) + ln_gamma(1.0 - a) - ln_gamma(b + 1.0 - a))


def hyp2f1_series(args: Hyp2F1Args) -> float:
    """Defining power series sum_k (a)_k/k! * b/(b+k) * z^k, summed to tolerance."""
    a, b, z = args.a, args.b, args.z
    if z == 1.0:
        raise DomainError('the power series is not usable at z = 1')
    total = 1.0
    coef = 1.0
    for k in range(1, HYP2F1_SERIES_MAX_TERMS):
        coef *= (a + k - 1) * z / k
        term = coef * b / (b + k)
        total += term
        if term <= HYP2F1_SERIES_TOL * total:
            return total
    raise DomainError(f'power series did not converge at z={z!r}')


def incomplete_beta_integral(args: Hyp2F1Args) -> float:
    """int_0^z t^(b-1) (1-t)^(-a) dt by adaptive quadrature.

    On [0, 1/2] the substitution r = t^b and on [1/2, z] the substitution
    s = (1-t)^(1-a) leave bounded integrands at both endpoint singularities.
    """
    a, b, z = args.a, args.b, args.z
    head = min(z, 0.5)
    lower, _ = quad(lambda r: (1.0 - r ** (1.0 / b)) ** (-a), 0.0, head ** b,
                    epsabs=0.0, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT)
    total = lower / b
    if z <= 0.5:
        return total
    p = 1.0 / (1.0 - a)
    upper, _ = quad(lambda s: (1.0 - s ** p) ** (b - 1.0), (1.0 - z) ** (1.0 - a), 0.5 ** (1.0 - a),
                    epsabs=0.0, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT)
    return total + upper / (1.0 - a)


def hyp2f1_quadrature(args: Hyp2F1Args) -> float:
    """Incomplete-beta representation b z^(-b) int_0^z t^(b-1) (1-t)^(-a) dt."""
    if args.z == 0.0:
        return 1.0
    return args.b * args.z ** (-args.b) * incomplete_beta_integral(args)


def hyp2f1_b_plus_one(args: Hyp2F1Args) -> float:
    if args.z == 0.0:
        return 1.0
    if args.z == 1.0:
        return hyp2f1_gauss(args)
    if args.z <= HYP2F1_SERIES_MAX_Z:
        return hyp2f1_series(args)
    return hyp2f1_quadrature(args)
