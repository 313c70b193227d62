"""Method-of-lines solver for u_t + eps u^n u_x + delta [(u_x)^m]_xx = 0 on a periodic box.

The right-hand side is evaluated in split form,

    u^n u_x      = theta D(u^(n+1))/(n+1) + (1 - theta) u^n Du,   theta = (n+1)/(n+2)
    [(u_x)^m]_xx = D F,   F = m/(m+1) [D(w^m) + w^(m-1) Dw],      w = Du

which is the same operator for exact derivatives. With a skew-symmetric D
the dispersive part conserves sum(u) and sum(u^2) exactly, and so does the
advective part for n = 1.
"""
import logging
import math
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import diagnostics
from .config import BLOW_UP_FACTOR, STABILITY_CONSTANTS
from .exceptions import DomainError, SimulationBlowUp
from .models import (DiagnosticsRecord, Grid, HierarchyParams, PeakEstimate, RunManifest,
                     SolverConfig, State)
from .spatial import derivative, periodic_offsets, project, repeated_first_derivative
from .spatial import mollify as mollify_field
from .travwave import build, initial_peakompacton, kdv_soliton

logger = logging.getLogger(__name__)

Observer = Callable[[State, int, bool], None]


def _power(values: np.ndarray, exponent: int, signed: bool) -> np.ndarray:
    if signed:
        return np.abs(values) ** (exponent - 1) * values
    return values ** exponent


def _dealiased(config: SolverConfig) -> bool:
    return config.scheme == 'fourier_collocation' and config.dealias


def rhs(state: State, p: HierarchyParams, grid: Grid, config: SolverConfig) -> np.ndarray:
    u = state.values
    n, m, scheme = p.n, p.m, config.scheme

    u_x = derivative(u, 1, grid, scheme)
    theta = (n + 1) / (n + 2)
    advection = (theta / (n + 1)) * derivative(u ** (n + 1), 1, grid, scheme) \
        + (1.0 - theta) * u ** n * u_x

    u_xx = repeated_first_derivative(u, grid, scheme)
    if config.signed_power:
        slope = np.abs(u_x) ** (m - 1)
    else:
        slope = u_x ** (m - 1)
    flux = (m / (m + 1)) * (derivative(_power(u_x, m, config.signed_power), 1, grid, scheme)
                            + slope * u_xx)
    result = -p.advective * advection - p.dispersive * derivative(flux, 1, grid, scheme)

    if config.smoothing > 0:
        u_4 = derivative(derivative(u, 2, grid, scheme), 2, grid, scheme)
        result -= config.smoothing * u_4
    if _dealiased(config):
        result = project(result, grid)
    if not np.all(np.isfinite(result)):
        raise SimulationBlowUp(f'non-finite right-hand side at t={state.time:.6g}')
    return result


def step_rk4(state: State, p: HierarchyParams, grid: Grid, config: SolverConfig,
             dt: Optional[float] = None) -> State:
    """Classical four-stage step; `dt` overrides config.dt and may be negative."""
    dt = config.dt if dt is None else dt
    t, u = state.time, state.values
    k1 = rhs(state, p, grid, config)
    k2 = rhs(State(t + 0.5 * dt, u + 0.5 * dt * k1), p, grid, config)
    k3 = rhs(State(t + 0.5 * dt, u + 0.5 * dt * k2), p, grid, config)
    k4 = rhs(State(t + dt, u + dt * k3), p, grid, config)
    return State(t + dt, u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4))


def max_stable_dt(state: State, p: HierarchyParams, grid: Grid, config: SolverConfig) -> float:
    """Empirical RK4 bound dt <= C h^3 / max(1, eps max|u|^n, delta max|u_x|^(m-1))."""
    constant = config.stability_constant
    if constant is None:
        constant = STABILITY_CONSTANTS[(config.scheme, _dealiased(config))]
    u_x = derivative(state.values, 1, grid, config.scheme)
    scale = max(1.0,
                p.advective * float(np.max(np.abs(state.values))) ** p.n,
                p.dispersive * float(np.max(np.abs(u_x))) ** (p.m - 1))
    return constant * grid.spacing ** 3 / scale


def track_peak(state: State, grid: Grid) -> PeakEstimate:
    """Sub-grid crest position from a parabola through the largest sample and its neighbours."""
    values = state.values
    j = int(np.argmax(values))
    below, top, above = values[j - 1], values[j], values[(j + 1) % grid.npoints]
    curvature = below - 2.0 * top + above
    if np.ptp(values) == 0.0 or curvature >= 0.0:
        return PeakEstimate(location=j * grid.spacing, height=float(top), degenerate=True)
    offset = 0.5 * (below - above) / curvature
    location = math.fmod((j + offset) * grid.spacing, grid.length)
    if location < 0.0:
        location += grid.length
    return PeakEstimate(location=location, height=float(top - 0.25 * (below - above) * offset))


class DiagnosticsRecorder:
    """Observer sampling M, P, H, the requested I_k and the crest every `every` steps."""

    def __init__(self, p: HierarchyParams, grid: Grid, scheme: str,
                 ik_orders: Sequence[int] = (), every: int = 1):
        self.p = p
        self.grid = grid
        self.scheme = scheme
        self.ik_orders = tuple(ik_orders)
        self.every = every
        self.times: list[float] = []
        self.mass: list[float] = []
        self.momentum: list[float] = []
        self.energy: list[float] = []
        self.ik: dict[int, list[float]] = {k: [] for k in self.ik_orders}
        self.peak_location: list[float] = []
        self.peak_height: list[float] = []

    def __call__(self, state: State, step: int, final: bool) -> None:
        if step % self.every and not final:
            return
        self.times.append(state.time)
        self.mass.append(diagnostics.mass(state, self.grid))
        self.momentum.append(diagnostics.momentum(state, self.grid))
        self.energy.append(diagnostics.energy(state, self.grid, self.p, self.scheme))
        for k in self.ik_orders:
            self.ik[k].append(diagnostics.ik(state, self.grid, k))
        peak = track_peak(state, self.grid)
        self.peak_location.append(peak.location)
        self.peak_height.append(peak.height)

    def record(self) -> DiagnosticsRecord:
        return DiagnosticsRecord(times=self.times, mass=self.mass, momentum=self.momentum,
                                 energy=self.energy, ik=self.ik,
                                 peak_location=self.peak_location, peak_height=self.peak_height)


def run(initial: State, p: HierarchyParams, grid: Grid, config: SolverConfig, t_end: float,
        observers: Iterable[Observer] = (), diagnostics_every: int = 1,
        ik_orders: Sequence[int] = ()) -> tuple[DiagnosticsRecord, State]:
    """Step from initial.time to t_end, landing exactly on t_end.

    Observers are called as observer(state, step, final) after every step and
    once for the initial state (step 0). A blow-up raises SimulationBlowUp with
    the diagnostics gathered so far.
    """
    if not t_end > initial.time:
        raise DomainError(f't_end={t_end!r} must exceed the initial time {initial.time!r}')
    if len(initial.values) != grid.npoints:
        raise DomainError(f'state has {len(initial.values)} samples, grid has {grid.npoints}')

    state = initial
    if _dealiased(config):
        state = State(initial.time, project(initial.values, grid))
    recorder = DiagnosticsRecorder(p, grid, config.scheme, ik_orders, diagnostics_every)
    observers = [recorder, *observers]

    bound = max_stable_dt(state, p, grid, config)
    if config.dt > bound:
        logger.warning('dt=%.3e exceeds the stability guidance %.3e', config.dt, bound)
    limit = BLOW_UP_FACTOR * float(np.max(np.abs(state.values)))
    nsteps = max(1, math.ceil((t_end - initial.time) / config.dt - 1e-9))
    logger.info('run (n, m)=(%d, %d): %d steps of dt=%.3e to t=%.6g',
                p.n, p.m, nsteps, config.dt, t_end)

    for observer in observers:
        observer(state, 0, False)
    for step in range(1, nsteps + 1):
        final = step == nsteps
        target = t_end if final else initial.time + step * config.dt
        try:
            advanced = step_rk4(state, p, grid, config, target - state.time)
        except SimulationBlowUp as exc:
            logger.error('blow-up at step %d: %s', step, exc)
            raise SimulationBlowUp(str(exc), record=recorder.record(), state=state) from exc
        peak = float(np.max(np.abs(advanced.values)))
        if not np.all(np.isfinite(advanced.values)) or peak > limit:
            logger.error('blow-up at step %d, t=%.6g, max|u|=%.3e', step, target, peak)
            raise SimulationBlowUp(f'max|u|={peak:.3e} exceeds {limit:.3e} at t={target:.6g}',
                                   record=recorder.record(), state=state)
        state = State(target, advanced.values)
        for observer in observers:
            observer(state, step, final)
    logger.info('run finished at t=%.6g', state.time)
    return recorder.record(), state


def initial_state(manifest: RunManifest) -> tuple[State, float]:
    """Initial field of a manifest and the max change made by mollification."""
    grid, spec, wave = manifest.grid, manifest.initial, manifest.params
    center = 0.5 * grid.length if spec.center is None else spec.center
    offsets = periodic_offsets(grid, center)
    if spec.kind == 'peakompacton':
        values, error = initial_peakompacton(build(wave.hierarchy(), wave.c), grid, center,
                                             spec.amplitude, spec.mollify)
        return State(0.0, values), error
    if spec.kind == 'kdv_soliton':
        values = spec.amplitude * kdv_soliton(wave.c, offsets)
    elif spec.kind == 'gaussian':
        values = spec.amplitude * np.exp(-0.5 * (offsets / spec.width) ** 2)
    else:
        values = np.zeros(grid.npoints)
    error = 0.0
    if spec.mollify:
        values, error = mollify_field(values)
    return State(0.0, values), error


def run_manifest(manifest: RunManifest,
                 observers: Iterable[Observer] = ()) -> tuple[DiagnosticsRecord, State, float]:
    initial, error = initial_state(manifest)
    record, final = run(initial, manifest.params.hierarchy(), manifest.grid, manifest.solver,
                        manifest.t_end, observers, manifest.outputs.diagnostics_every,
                        manifest.outputs.ik)
    return record, final, error
