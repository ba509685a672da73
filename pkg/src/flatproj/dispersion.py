"""Flattened-kernel Hilbert transform and the modified dispersion relations
linking the real and imaginary parts of a causal susceptibility.

The flattening depth ``a`` adds subtraction terms to the classic relations;
``a = 0`` recovers them exactly.  A single-resonance oscillator model with
closed-form real and imaginary parts serves as the ground-truth oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError
from .numerics import Grid, SampledFunction, pv_integral


class ModelKind(Enum):
    LORENTZ_OSCILLATOR = "lorentz-osc"
    DRUDE = "drude"


@dataclass(frozen=True)
class SusceptibilityModel:
    """Single-resonance dielectric model eps(w) = 1 + wp^2/(w0^2 - w^2 - i g w).

    The Drude case is the w0 = 0 specialization (its imaginary part is
    singular at w = 0, so evaluation there is rejected).
    """

    plasma_frequency: float
    resonance: float
    damping: float
    kind: ModelKind = ModelKind.LORENTZ_OSCILLATOR

    def __post_init__(self):
        for name in ("plasma_frequency", "resonance", "damping"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0.0):
                raise DomainError(f"{name} must be finite and >= 0")
        if self.kind is ModelKind.LORENTZ_OSCILLATOR and self.resonance <= 0.0:
            raise DomainError("LorentzOscillator needs resonance > 0")
        if self.kind is ModelKind.DRUDE and self.resonance != 0.0:
            raise DomainError("Drude is the resonance = 0 specialization")


def susceptibility_eval(model: SusceptibilityModel, omega):
    """Closed-form eps(omega); Im eps >= 0 for omega >= 0 (passivity)."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0.0) or not np.all(np.isfinite(omega)):
        raise DomainError("omega must be finite and >= 0")
    denom = (model.resonance ** 2 - omega ** 2
             - 1j * model.damping * omega)
    if np.any(denom == 0):
        raise DomainError("susceptibility singular at this frequency")
    out = 1.0 + model.plasma_frequency ** 2 / denom
    return out if out.ndim else complex(out)


def model_grid(model: SusceptibilityModel) -> Grid:
    """Half-line frequency grid resolving the resonance and its tails.

    Extends to 40x the largest model frequency (the imaginary part decays
    like eta^-3, bounding the truncation error well below test tolerances)
    with a step of min(resonance, damping)/30.
    """
    top = max(model.plasma_frequency, model.resonance, model.damping)
    if top <= 0.0:
        raise DomainError("model has no positive frequency scale")
    scales = [v for v in (model.resonance, model.damping) if v > 0.0]
    if not scales:
        raise DomainError("need a positive resonance or damping to set the step")
    step = min(scales) / 30.0
    return Grid.from_range(0.0, 40.0 * top, step)


class KKIntegrand(Enum):
    """Integrand used in the real-to-imaginary relation."""

    AS_PRINTED = "as-printed"   # bare eps1 under the principal value
    STANDARD = "standard"       # eps1 - 1, the causal-response form


@dataclass(frozen=True)
class KKMode:
    """Bundle of the integrand choice and flattening depth for the relations."""

    integrand: KKIntegrand = KKIntegrand.STANDARD
    a: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a >= 0.0):
            raise DomainError("flattening a must be finite and >= 0")


def _flat_kernel(a: float, k: float):
    def w(q):
        d = q - k
        return np.exp(1j * a * d - a * np.abs(d))
    return w


def f_hilbert(f: SampledFunction, a: float, k: float) -> complex:
    """Hilbert-type transform with the flattened kernel.

    Returns (1/(pi i)) PV integral f(q) exp(i a (q-k) - a |q-k|) / (q-k) dq.
    With a = 0 this is exactly the classic relation; a > 0 exponentially damps
    contributions with |q - k| >> 1/a.
    """
    if not (math.isfinite(a) and a >= 0.0):
        raise DomainError("flattening a must be finite and >= 0")
    weight = _flat_kernel(a, k) if a > 0.0 else None
    return pv_integral(f, k, weight) / (1j * math.pi)


def subtraction_expansion(f: SampledFunction, a: float, k: float) -> complex:
    """Two-term small-``a`` expansion of the flattened transform.

    First term: (1/pi) PV integral f(q)/(q-k) dq.  Second term (the
    subtraction): (a/pi) integral f(q) (1 + i sgn(q-k)) dq.
    """
    if not (math.isfinite(a) and a >= 0.0):
        raise DomainError("flattening a must be finite and >= 0")
    q = f.grid.points
    principal = pv_integral(f, k) / math.pi
    if a == 0.0:
        return principal
    corr = np.trapezoid(f.values * (1.0 + 1j * np.sign(q - k)), dx=f.grid.step)
    return principal + a / math.pi * corr


def kk_real_from_imag(eps2: SampledFunction, a: float, omega: float) -> float:
    """Real part minus one from sampled absorption on [0, eta_max].

    eps1(w) - 1 = (2/pi) PV int eta eps2(eta)/(eta^2 - w^2) deta
                  + (2a/pi) int eps2(eta) deta.
    The second term is a frequency-independent shift generated by the
    flattening depth.
    """
    if not (math.isfinite(a) and a >= 0.0):
        raise DomainError("flattening a must be finite and >= 0")
    vals = np.asarray(eps2.values)
    if np.iscomplexobj(vals) and np.any(vals.imag != 0.0):
        raise DomainError("eps2 samples must be real-valued")
    principal = pv_integral(eps2, omega, lambda q: q / (q + omega))
    out = (2.0 / math.pi) * principal
    if a > 0.0:
        out = out + (2.0 * a / math.pi) * np.trapezoid(vals.real, dx=eps2.grid.step)
    return float(np.real(out))


def kk_imag_from_real(eps1: SampledFunction, a: float, omega: float,
                      mode: KKMode | KKIntegrand = KKIntegrand.STANDARD) -> float:
    """Imaginary part from sampled real part on [0, eta_max].

    eps2(w) = -(2w/pi) PV int I(eta)/(eta^2 - w^2) deta
              - (2a/pi) int_0^w eps1(eta) deta,
    where I = eps1 in AS_PRINTED mode and I = eps1 - 1 in STANDARD mode
    (the causal-response form; AS_PRINTED yields nonzero absorption even for
    vacuum and is kept for comparison).
    """
    if not (math.isfinite(a) and a >= 0.0):
        raise DomainError("flattening a must be finite and >= 0")
    integrand = mode.integrand if isinstance(mode, KKMode) else mode
    if not isinstance(integrand, KKIntegrand):
        raise DomainError(f"unknown mode {mode!r}")
    vals = np.asarray(eps1.values).real.astype(float)
    base = vals - 1.0 if integrand is KKIntegrand.STANDARD else vals
    pv_input = SampledFunction(eps1.grid, base)
    principal = pv_integral(pv_input, omega, lambda q: 1.0 / (q + omega))
    out = -(2.0 * omega / math.pi) * np.real(principal)
    if a > 0.0:
        out -= (2.0 * a / math.pi) * _integral_to(eps1.grid, vals, omega)
    return float(out)


def _integral_to(grid: Grid, vals: np.ndarray, upper: float) -> float:
    """Trapezoid integral of the samples from the grid start up to ``upper``."""
    if not (grid.start <= upper <= grid.stop):
        raise DomainError(f"upper limit {upper!r} outside the grid span")
    q = grid.points
    n_full = int(math.floor((upper - grid.start) / grid.step))
    n_full = min(n_full, grid.count - 1)
    total = np.trapezoid(vals[: n_full + 1], dx=grid.step) if n_full > 0 else 0.0
    frac = upper - q[n_full]
    if frac > 0.0 and n_full + 1 < grid.count:
        slope = (vals[n_full + 1] - vals[n_full]) / grid.step
        v_up = vals[n_full] + slope * frac
        total += 0.5 * (vals[n_full] + v_up) * frac
    return float(total)
