"""Conserved functionals of the hierarchy evaluated on periodic grid states.

Integrals use the periodic rectangle rule, spectrally accurate for smooth
data and second order across the kinks of compactly supported profiles.
The box should be at least 6 xi0 long so a peakompacton sits well away
from its periodic images.
"""
import numpy as np

from .exceptions import DomainError
from .hierarchy import hamiltonian_density
from .models import DiagnosticsRecord, Grid, HierarchyParams, State
from .spatial import derivative


def ik(state: State, grid: Grid, k: int) -> float:
    """I_k = int u^k dx."""
    if int(k) != k or k < 1:
        raise DomainError(f'I_k needs an integer k >= 1, got {k!r}')
    return float(np.sum(state.values ** int(k)) * grid.spacing)


def mass(state: State, grid: Grid) -> float:
    return 0.5 * ik(state, grid, 1)


def momentum(state: State, grid: Grid) -> float:
    return -0.5 * ik(state, grid, 2)


def energy(state: State, grid: Grid, p: HierarchyParams,
           scheme: str = 'fourier_collocation') -> float:
    u_x = derivative(state.values, 1, grid, scheme)
    return float(np.sum(hamiltonian_density(state.values, u_x, p)) * grid.spacing)


def _drift(series: list[float]) -> float:
    if not series:
        return 0.0
    start = series[0]
    change = max(abs(value - start) for value in series)
    return change / abs(start) if start != 0.0 else change


def drift_summary(record: DiagnosticsRecord) -> dict[str, float]:
    """Largest departure of each functional from its initial value.

    Relative to the initial value, absolute when that value is zero.
    """
    summary = {
        'mass': _drift(record.mass),
        'momentum': _drift(record.momentum),
        'energy': _drift(record.energy),
    }
    for k in sorted(record.ik):
        summary[f'I{k}'] = _drift(record.ik[k])
    return summary


def invariants_table(states, grid: Grid, p: HierarchyParams, orders=(),
                     scheme: str = 'fourier_collocation') -> tuple[list[str], list[list[float]]]:
    """One row (t, M, P, H, I_k...) per state."""
    header = ['t', 'mass', 'momentum', 'energy'] + [f'I{k}' for k in orders]
    rows = []
    for state in states:
        rows.append([state.time, mass(state, grid), momentum(state, grid),
                     energy(state, grid, p, scheme), *(ik(state, grid, k) for k in orders)])
    return header, rows
