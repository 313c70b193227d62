import numpy as np
import pytest
from fastapi.testclient import TestClient
from scipy.integrate import quad
from ..main import app
from .. import travwave
from ..models import Grid, HierarchyParams, SolverConfig, State

FIGURE_SPEED = 0.75

client = TestClient(app)


def override_get_max_steps():
    return 500


def support_integral(w, lower=0.0):
    """int_lower^U_max dU / [U^2 (kappa - gamma U^n)]^(1/(m+1)) with the endpoint weights handled by QAWS."""
    n, m = w.p.n, w.p.m
    exponent = 1.0 / (m + 1)
    top = w.u_max

    def smooth(u):
        # (U_max^n - U^n) / (U_max - U) without cancellation
        ratio = sum(top ** (n - 1 - j) * u ** j for j in range(n))
        return (w.gamma_coef * ratio) ** (-exponent)

    if lower == 0.0:
        value, _ = quad(smooth, 0.0, top, weight='alg', wvar=(-2.0 * exponent, -exponent),
                        epsabs=1e-14, epsrel=1e-13, limit=200)
    else:
        value, _ = quad(lambda u: u ** (-2.0 * exponent) * smooth(u), lower, top,
                        weight='alg', wvar=(0.0, -exponent), epsabs=1e-14, epsrel=1e-13, limit=200)
    return value


def kdv_state(grid, c=FIGURE_SPEED, center=None, time=0.0):
    center = 0.5 * grid.length if center is None else center
    offsets = grid.points() - center
    return State(time, travwave.kdv_soliton(c, offsets))


def rising_flank(w, count=100):
    return np.linspace(-0.9 * w.xi0, -0.1 * w.xi0, count)


def manifest_document(directory, **sections):
    document = {
        'params': {'n': 1, 'm': 1, 'c': FIGURE_SPEED},
        'grid': {'length': 40.0, 'npoints': 64},
        'solver': {'dt': 0.01},
        'initial': {'kind': 'zero'},
        't_end': 0.1,
        'outputs': {'directory': str(directory), 'snapshot_every': 5, 'ik': [3]},
    }
    for name, values in sections.items():
        if isinstance(values, dict):
            document[name] = {**document.get(name, {}), **values}
        else:
            document[name] = values
    return document


@pytest.fixture
def peakompacton_1_3():
    return travwave.build(HierarchyParams(n=1, m=3), FIGURE_SPEED)


@pytest.fixture
def kdv_params():
    return HierarchyParams(n=1, m=1)


@pytest.fixture
def kdv_grid():
    return Grid(length=40.0, npoints=128)


@pytest.fixture
def kdv_config():
    return SolverConfig(dt=3e-3)


@pytest.fixture
def sine_grid():
    return Grid(length=2 * np.pi, npoints=16)
