"""Shared numerical substrate: uniform grids, sampled functions,
principal-value quadrature and a discrete Fourier contract."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import AccuracyError, DomainError


@dataclass(frozen=True)
class Grid:
    """Uniform grid: points are start + i*step for i in [0, count)."""

    start: float
    step: float
    count: int

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.step)):
            raise DomainError("grid start and step must be finite")
        if self.step <= 0.0:
            raise DomainError("grid step must be positive")
        if self.count < 2:
            raise DomainError("grid needs at least two points")

    @property
    def stop(self) -> float:
        return self.start + self.step * (self.count - 1)

    @property
    def points(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.count)

    @classmethod
    def from_range(cls, start: float, stop: float, step: float) -> "Grid":
        """Inclusive [start, stop] grid with the given step."""
        if stop <= start:
            raise DomainError("grid stop must exceed start")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return cls(start, step, count)

    @classmethod
    def from_span(cls, start: float, stop: float, count: int) -> "Grid":
        if count < 2:
            raise DomainError("grid needs at least two points")
        return cls(start, (stop - start) / (count - 1), count)


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Complex (or real) samples on a uniform grid."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 1 or len(v) != self.grid.count:
            raise DomainError(
                f"need {self.grid.count} samples, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise DomainError("sample values must be finite")
        object.__setattr__(self, "values", v)

    @classmethod
    def from_callable(cls, grid: Grid, fn) -> "SampledFunction":
        return cls(grid, np.asarray(fn(grid.points)))


def pv_integral(f: SampledFunction, pole: float,
                weight: Optional[Callable[[np.ndarray], np.ndarray]] = None):
    """Principal value of  integral f(q) w(q) / (q - pole) dq  over the grid.

    The simple pole is removed by subtracting the local value of the smooth
    numerator g = f*w:  the remainder (g(q) - g(pole))/(q - pole) is regular
    and integrated by the trapezoid rule, while the subtracted part has the
    exact primitive g(pole) * ln|(stop - pole)/(pole - start)|.  g(pole) and
    g'(pole) come from a three-point quadratic fit around the nearest node,
    so the pole may sit anywhere strictly inside the grid.  Deterministic,
    linear in f, and second-order accurate in the step.
    """
    q = f.grid.points
    h = f.grid.step
    if not (f.grid.start < pole < f.grid.stop):
        raise DomainError(f"pole {pole!r} outside the grid span")
    if pole - f.grid.start < 0.5 * h or f.grid.stop - pole < 0.5 * h:
        raise AccuracyError("pole within half a step of the grid boundary")

    g = f.values * weight(q) if weight is not None else f.values

    j = int(round((pole - f.grid.start) / h))
    j = min(max(j, 1), f.grid.count - 2)
    t = (pole - q[j]) / h
    half_diff = 0.5 * (g[j + 1] - g[j - 1])
    curv = g[j + 1] - 2.0 * g[j] + g[j - 1]
    g_pole = g[j] + t * half_diff + 0.5 * t * t * curv
    dg_pole = (half_diff + t * curv) / h

    d = q - pole
    near = np.abs(d) < 1e-9 * h
    phi = np.where(near, dg_pole, (g - g_pole) / np.where(near, 1.0, d))
    core = g_pole * math.log((f.grid.stop - pole) / (pole - f.grid.start))
    return np.trapezoid(phi, dx=h) + core


def _conjugate_grid(grid: Grid) -> tuple[Grid, np.ndarray]:
    freqs = np.fft.fftshift(np.fft.fftfreq(grid.count, d=grid.step))
    k = 2.0 * math.pi * freqs
    return Grid(k[0], 2.0 * math.pi / (grid.count * grid.step), grid.count), k


def discrete_fourier(f: SampledFunction, sign: int) -> SampledFunction:
    """Riemann-sum Fourier transform onto the conjugate frequency grid.

    sign=+1 approximates  integral f(x) exp(+i k x) dx,  sign=-1 the
    conjugate convention.  No 2*pi prefactor is applied; the inversion
    partner ``inverse_discrete_fourier`` carries the 1/(2*pi).  The conjugate
    grid is centered (its start is -(count//2) * step), so the round trip is
    exact for input grids centered the same way.
    """
    if sign not in (+1, -1):
        raise DomainError("sign must be +1 or -1")
    kgrid, k = _conjugate_grid(f.grid)
    n = f.grid.count
    if sign == +1:
        core = n * np.fft.ifft(f.values)
    else:
        core = np.fft.fft(f.values)
    core = np.fft.fftshift(core)
    phase = np.exp(1j * sign * k * f.grid.start)
    return SampledFunction(kgrid, f.grid.step * phase * core)


def inverse_discrete_fourier(spectrum: SampledFunction, sign: int = +1) -> SampledFunction:
    """Inverse of ``discrete_fourier(..., sign)``: opposite kernel, 1/(2*pi)."""
    back = discrete_fourier(spectrum, -sign)
    return SampledFunction(back.grid, back.values / (2.0 * math.pi))
