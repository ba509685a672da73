"""Window projectors and their shift-induced double layers.

Shifting a finite window adds a series of boundary terms: at first order a
pair of opposite-sign deltas sitting on the window edges (a double layer), at
second order their derivatives.  With smoothed deltas the series is an honest
Taylor expansion whose truncation error can be measured.  The same window on
the frequency axis gives the strictly band-limited response: a sinc-kernel
spectral convolution and, on equispaced samples, the sampling-theorem
reconstruction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import erf

from .errors import DomainError
from .numerics import Grid, SampledFunction
from .projectors import DeltaFamily, FlatteningParams, delta_seq, theta_flat


class WindowAxis(Enum):
    TIME = "time"
    SPACE = "space"
    FREQUENCY = "frequency"


@dataclass(frozen=True)
class WindowSpec:
    """Symmetric window of given half-width on one axis, plus a shift."""

    half_width: float
    axis: WindowAxis = WindowAxis.TIME
    shift: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.half_width) and self.half_width > 0.0):
            raise DomainError("half_width must be positive")
        if not math.isfinite(self.shift):
            raise DomainError("shift must be finite")


def window_projector(u, w: WindowSpec):
    """Sharp window indicator: 1 inside (-T, T), 0 outside and on the edges."""
    u = np.asarray(u, dtype=float)
    out = np.where(np.abs(u) < w.half_width, 1.0, 0.0)
    return out if out.ndim else float(out)


def smoothed_window(u, half_width: float, p: FlatteningParams):
    """Window convolved with the delta sequence of depth ``p.a``.

    Closed forms: the arctan (Lorentz) or erf (Gauss) difference across the
    two edges.  Its derivative is delta(u + T) - delta(u - T), the edge pair
    that the first-order shift term reproduces.
    """
    u = np.asarray(u, dtype=float)
    a = p.a
    if a <= 0.0:
        raise DomainError("smoothed window needs a > 0")
    t = half_width
    if p.family is DeltaFamily.LORENTZ:
        return (np.arctan((u + t) / a) - np.arctan((u - t) / a)) / math.pi
    return 0.5 * (erf((u + t) / a) - erf((u - t) / a))


def _delta_derivative(x, a: float, family: DeltaFamily):
    """d/dx of the delta sequence of depth a."""
    x = np.asarray(x, dtype=float)
    if family is DeltaFamily.LORENTZ:
        return -(2.0 * a / math.pi) * x / (x * x + a * a) ** 2
    return -(2.0 * x / (a * a)) * np.exp(-((x / a) ** 2)) / (a * math.sqrt(math.pi))


def _profile_grid(w: WindowSpec, p: FlatteningParams, samples_per_depth: int,
                  extra: float = 0.0) -> Grid:
    half = w.half_width + 10.0 * p.a + extra
    step = p.a / samples_per_depth
    count = 2 * int(round(half / step)) + 1
    return Grid.from_span(-half, half, count)


def commutator_first_order(w: WindowSpec, smoothing: FlatteningParams,
                           samples_per_depth: int = 24) -> SampledFunction:
    """First-order shift term of the window: the smoothed edge-delta pair.

    Returns shift * [delta(T - u) - delta(T + u)] sampled on a grid spanning
    +-(T + 10a).  Antisymmetric in u; its L1 mass is 2|shift| up to the delta
    tails left outside the span.
    """
    if smoothing.a <= 0.0:
        raise DomainError("smoothed deltas need a > 0")
    grid = _profile_grid(w, smoothing, samples_per_depth)
    u = grid.points
    t = w.half_width
    vals = w.shift * (delta_seq(t - u, smoothing) - delta_seq(t + u, smoothing))
    return SampledFunction(grid, vals)


def bandpass_double_layer(band: float, shift: float,
                          smoothing: FlatteningParams,
                          samples_per_depth: int = 24) -> SampledFunction:
    """Frequency-axis analogue: the edge-delta pair sits at +-band."""
    spec = WindowSpec(band, WindowAxis.FREQUENCY, shift)
    return commutator_first_order(spec, smoothing, samples_per_depth)


def shifted_window_vs_series(w: WindowSpec, order: int,
                             smoothing: FlatteningParams,
                             samples_per_depth: int = 24) -> float:
    """L1 error of the truncated shift series against the shifted window.

    The smoothed window moved by the shift is compared with the window plus
    the first-order edge-delta pair (order 1) and the delta-derivative pair
    weighted by shift^2/2 (order 2).  The error scales like shift^(order+1).
    """
    if order not in (1, 2):
        raise DomainError("order must be 1 or 2")
    if abs(w.shift) >= 0.5 * w.half_width:
        raise DomainError("shift must stay below half of the half-width")
    if smoothing.a <= 0.0:
        raise DomainError("smoothed deltas need a > 0")
    tau = w.shift
    t = w.half_width
    a = smoothing.a
    grid = _profile_grid(w, smoothing, samples_per_depth, extra=2.0 * abs(tau))
    u = grid.points

    reference = smoothed_window(u + tau, t, smoothing)
    # the edge-delta pair enters with the orientation of the shift
    series = (smoothed_window(u, t, smoothing)
              + tau * (delta_seq(u + t, smoothing) - delta_seq(u - t, smoothing)))
    if order == 2:
        curvature = (_delta_derivative(u + t, a, smoothing.family)
                     - _delta_derivative(u - t, a, smoothing.family))
        series = series + 0.5 * tau * tau * curvature
    return float(np.trapezoid(np.abs(reference - series), dx=grid.step))


def duhamel_spectrum(f: SampledFunction, half_width: float, omega: float) -> complex:
    """Spectral response of a strictly time-windowed device.

    Returns (1/pi) integral sin((omega - eta) T)/(omega - eta) f(eta) deta;
    the kernel's removable singularity takes its limit value T/pi.
    """
    if not (math.isfinite(half_width) and half_width > 0.0):
        raise DomainError("half_width must be positive")
    if not (f.grid.start < omega < f.grid.stop):
        raise DomainError("omega must lie inside the sampled band")
    eta = f.grid.points
    kernel = (half_width / math.pi) * np.sinc((omega - eta) * half_width / math.pi)
    return complex(np.trapezoid(kernel * f.values, dx=f.grid.step))


def shannon_reconstruct(samples, band: float, t, first_index: int | None = None):
    """Sampling-theorem reconstruction from samples spaced pi/band apart.

    Sample i sits at (first_index + i) * pi/band; by default the run of
    samples is centered on 0.  Exact at the sample points for any input and
    exact on band-limited signals up to the truncation of the series.
    """
    if not (math.isfinite(band) and band > 0.0):
        raise DomainError("band must be positive")
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 1 or samples.size == 0:
        raise DomainError("samples must be a non-empty 1-D sequence")
    if first_index is None:
        first_index = -((samples.size - 1) // 2)
    n = first_index + np.arange(samples.size)
    t = np.asarray(t, dtype=float)
    args = band * t[..., None] / math.pi - n
    out = np.sum(samples * np.sinc(args), axis=-1)
    return out if out.ndim else float(out)


def graded_permittivity_profile(eps1, eps2, p: FlatteningParams, z):
    """Permittivity ramp eps2 + (eps1 - eps2) * theta_flat(z).

    Tends to eps1 above the boundary and eps2 below; for the Lorentz family
    the ramp is monotone between the two values.
    """
    step = theta_flat(z, p)
    return eps2 + (eps1 - eps2) * step
