"""Periodic derivative operators on a Grid.

`fourier_collocation` differentiates through the real FFT (Nyquist mode
dropped for odd orders); `centered_fd4` uses fourth-order centered stencils.
"""
from functools import lru_cache

import numpy as np
from scipy.ndimage import gaussian_filter1d

from .config import MOLLIFIER_WIDTH
from .exceptions import DomainError
from .models import Grid

SCHEMES = ('fourier_collocation', 'centered_fd4')


@lru_cache(maxsize=32)
def wavenumbers(grid: Grid) -> np.ndarray:
    return 2.0 * np.pi * np.fft.rfftfreq(grid.npoints, d=grid.spacing)


@lru_cache(maxsize=32)
def _first_order_symbol(grid: Grid) -> np.ndarray:
    symbol = 1j * wavenumbers(grid)
    symbol[-1] = 0.0
    return symbol


@lru_cache(maxsize=32)
def dealias_mask(grid: Grid) -> np.ndarray:
    """Two-thirds rule: keep modes with index <= N/3."""
    index = np.arange(grid.npoints // 2 + 1)
    return index <= grid.npoints // 3


def _check_scheme(scheme: str) -> None:
    if scheme not in SCHEMES:
        raise DomainError(f'unknown derivative scheme {scheme!r}')


def _spectral(values: np.ndarray, symbol: np.ndarray, npoints: int) -> np.ndarray:
    return np.fft.irfft(symbol * np.fft.rfft(values), n=npoints)


def _fd4_first(values: np.ndarray, h: float) -> np.ndarray:
    ahead1, ahead2 = np.roll(values, -1), np.roll(values, -2)
    behind1, behind2 = np.roll(values, 1), np.roll(values, 2)
    return (8.0 * (ahead1 - behind1) - (ahead2 - behind2)) / (12.0 * h)


def _fd4_second(values: np.ndarray, h: float) -> np.ndarray:
    ahead1, ahead2 = np.roll(values, -1), np.roll(values, -2)
    behind1, behind2 = np.roll(values, 1), np.roll(values, 2)
    return (16.0 * (ahead1 + behind1) - (ahead2 + behind2) - 30.0 * values) / (12.0 * h * h)


def derivative(values, order: int, grid: Grid, scheme: str = 'fourier_collocation') -> np.ndarray:
    if order not in (1, 2):
        raise DomainError(f'derivative order must be 1 or 2, got {order!r}')
    _check_scheme(scheme)
    values = np.asarray(values, dtype=float)
    if scheme == 'centered_fd4':
        if order == 1:
            return _fd4_first(values, grid.spacing)
        return _fd4_second(values, grid.spacing)
    if order == 1:
        return _spectral(values, _first_order_symbol(grid), grid.npoints)
    return _spectral(values, -wavenumbers(grid) ** 2, grid.npoints)


def repeated_first_derivative(values: np.ndarray, grid: Grid, scheme: str) -> np.ndarray:
    """D(D f) with the first-derivative operator, so that D stays skew-symmetric."""
    if scheme == 'centered_fd4':
        return _fd4_first(_fd4_first(values, grid.spacing), grid.spacing)
    return _spectral(values, _first_order_symbol(grid) ** 2, grid.npoints)


def project(values: np.ndarray, grid: Grid) -> np.ndarray:
    """Drop the modes removed by the two-thirds rule."""
    return np.fft.irfft(dealias_mask(grid) * np.fft.rfft(values), n=grid.npoints)


def mollify(values: np.ndarray) -> tuple[np.ndarray, float]:
    """Periodic Gaussian filter of width 2h; returns the filtered field and the max change."""
    smoothed = gaussian_filter1d(np.asarray(values, dtype=float), sigma=MOLLIFIER_WIDTH, mode='wrap')
    return smoothed, float(np.max(np.abs(smoothed - values)))


def periodic_offsets(grid: Grid, center: float) -> np.ndarray:
    """Signed distance of every grid point from `center`, wrapped to [-L/2, L/2)."""
    length = grid.length
    return np.mod(grid.points() - center + 0.5 * length, length) - 0.5 * length
