from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class HierarchyParams(BaseModel):
    """One member (n, m) of the hierarchy u_t + u^n u_x + [(u_x)^m]_xx = 0.

    `epsilon` and `delta` are the advective and dispersive coefficients of the
    dimensional form; both are absent for the canonical equation. When set they
scale the densities, the energy and the simulated right-hand side.
    """
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1, description='advective exponent')
    m: int = Field(ge=1, description='dispersive exponent')
    epsilon: Optional[float] = Field(None, gt=0)
    delta: Optional[float] = Field(None, gt=0)

    @property
    def advective(self) -> float:
        return 1.0 if self.epsilon is None else self.epsilon

    @property
    def dispersive(self) -> float:
        return 1.0 if self.delta is None else self.delta


class DimensionalForm(BaseModel):
    model_config = ConfigDict(frozen=True)

    epsilon: float = Field(gt=0)
    delta: float = Field(gt=0)
    ell: float = Field(gt=0, description='length scale')
    tau: float = Field(gt=0, description='time scale')
    vee: float = Field(gt=0, description='velocity scale')


class Peakompacton(BaseModel):
    """A resolved compact, peaked traveling wave of speed c.

    Only `travwave.build` should construct these; the closed-form fields are
    not re-derived on validation.
    """
    model_config = ConfigDict(frozen=True)

    p: HierarchyParams
    c: float = Field(gt=0)
    u_max: float = Field(gt=0)
    kappa: float = Field(gt=0)
    gamma_coef: float = Field(gt=0)
    xi0: float = Field(gt=0)


class EdgeBehavior(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal['vanishing', 'finite', 'divergent']
    value: Optional[float] = None


class Grid(BaseModel):
    """Periodic mesh x_j = j h, j = 0..N-1, on [0, L)."""
    model_config = ConfigDict(frozen=True)

    length: float = Field(gt=0)
    npoints: int = Field(ge=16)

    @field_validator('npoints')
    @classmethod
    def npoints_even(cls, value: int) -> int:
        if value % 2:
            raise ValueError('npoints must be even')
        return value

    @property
    def spacing(self) -> float:
        return self.length / self.npoints

    def points(self) -> np.ndarray:
        return np.arange(self.npoints) * self.spacing


@dataclass(frozen=True)
class State:
    time: float
    values: np.ndarray


class SolverConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    dt: float = Field(gt=0)
    scheme: Literal['fourier_collocation', 'centered_fd4'] = 'fourier_collocation'
    dealias: bool = Field(True, description='two-thirds rule; ignored by centered_fd4')
    smoothing: float = Field(0.0, ge=0, description='hyperdiffusion coefficient nu')
    signed_power: bool = Field(False, description='use |u_x|^(m-1) u_x for even m')
    stability_constant: Optional[float] = Field(None, gt=0)


class PeakEstimate(BaseModel):
    location: float
    height: float
    degenerate: bool = False


class DiagnosticsRecord(BaseModel):
    times: list[float] = []
    mass: list[float] = []
    momentum: list[float] = []
    energy: list[float] = []
    ik: dict[int, list[float]] = {}
    peak_location: list[float] = []
    peak_height: list[float] = []

    @model_validator(mode='after')
    def shared_time_axis(self):
        size = len(self.times)
        series = [self.mass, self.momentum, self.energy,
                  self.peak_location, self.peak_height, *self.ik.values()]
        if any(len(s) != size for s in series):
            raise ValueError('all series must share the times axis')
        return self


class WaveParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    m: int = Field(ge=1)
    c: float = Field(0.75, gt=0)

    def hierarchy(self) -> HierarchyParams:
        return HierarchyParams(n=self.n, m=self.m)


class InitialData(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal['zero', 'kdv_soliton', 'peakompacton', 'gaussian'] = 'zero'
    center: Optional[float] = Field(None, description='defaults to L/2')
    amplitude: float = Field(1.0, description='multiplies the profile')
    width: float = Field(1.0, gt=0, description='gaussian standard deviation')
    mollify: bool = False


class OutputSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    directory: str = 'output'
    snapshot_format: Literal['csv', 'json'] = 'json'
    snapshot_every: int = Field(0, ge=0, description='0 keeps first and last only')
    diagnostics_every: int = Field(1, ge=1)
    ik: list[int] = []

    @field_validator('ik', mode='before')
    @classmethod
    def split_orders(cls, value):
        if isinstance(value, str):
            return [int(k) for k in value.replace(' ', '').split(',') if k]
        return value

    @field_validator('ik')
    @classmethod
    def orders_positive(cls, value: list[int]) -> list[int]:
        if any(k < 1 for k in value):
            raise ValueError('I_k orders must be >= 1')
        return value


class RunManifest(BaseModel):
    """Everything that determines a simulation run."""
    model_config = ConfigDict(frozen=True)

    params: WaveParams
    grid: Grid
    solver: SolverConfig
    initial: InitialData = InitialData()
    t_end: float = Field(gt=0)
    outputs: OutputSpec = OutputSpec()
    deterministic: bool = Field(True, description='keep wall-clock time out of the run summary')
