"""Densities and scalings of the K#(n,m) hierarchy.

Densities carry the coefficients eps and delta of HierarchyParams (1 when
unset) of u_t + eps u^n u_x + delta [(u_x)^m]_xx = 0. The scales
x -> x/ell, t -> t/tau, u -> u/V take that form to the canonical eps = delta = 1.
"""
from .exceptions import DomainError
from .models import DimensionalForm, HierarchyParams


def lagrangian_density(phi_x: float, phi_t: float, phi_xx: float, p: HierarchyParams) -> float:
    n, m = p.n, p.m
    return (0.5 * phi_x * phi_t
            + p.advective * phi_x ** (n + 2) / ((n + 2) * (n + 1))
            - p.dispersive * phi_xx ** (m + 1) / (m + 1))


def hamiltonian_density(u: float, u_x: float, p: HierarchyParams) -> float:
    n, m = p.n, p.m
    return (-p.advective * u ** (n + 2) / ((n + 2) * (n + 1))
            + p.dispersive * u_x ** (m + 1) / (m + 1))


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise DomainError(f'{name} must be positive, got {value!r}')


def scales_from_coefficients(epsilon: float, delta: float, p: HierarchyParams,
                             vee: float = 1.0) -> DimensionalForm:
    """Characteristic scales turning the dimensional equation canonical.

    Two relations fix three scales, so the velocity scale V is chosen by the
    caller; then ell^(m+1) = (delta/eps) V^(m-1-n) and tau = ell/(eps V^n).
    """
    _require_positive(epsilon=epsilon, delta=delta, vee=vee)
    n, m = p.n, p.m
    ell = ((delta / epsilon) * vee ** (m - 1 - n)) ** (1.0 / (m + 1))
    tau = ell / (epsilon * vee ** n)
    return DimensionalForm(epsilon=epsilon, delta=delta, ell=ell, tau=tau, vee=vee)


def coefficients_from_scales(d: DimensionalForm, p: HierarchyParams) -> tuple[float, float]:
    n, m = p.n, p.m
    epsilon = d.ell / (d.tau * d.vee ** n)
    delta = d.ell ** (m + 2) / (d.tau * d.vee ** (m - 1))
    return epsilon, delta
