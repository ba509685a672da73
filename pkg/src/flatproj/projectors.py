"""Smoothed ("flattened") step and point projectors built from delta sequences.

A delta sequence of depth ``a`` (Cauchy-Lorentz or Gauss) generates a smoothed
step ``theta_flat`` by integration.  The leftover of the three-term expansion
of unity,

    theta_flat(x, a) + zeta_flat(x, a, b) + theta_flat(-x, b) = 1,

is a bump ``zeta_flat`` concentrated around the support boundary; it plays the
role of a smoothed point projector and carries the induced-layer machinery
(its logarithmic derivative ``kappa``).  All functions are pure, accept
scalars or numpy arrays, and broadcast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np
from scipy.special import erf

from .errors import DomainError, TransientZoneError

# Below this value of the bump the log-derivative is declared out of zone.
ZETA_FLOOR = 1e-12


class DeltaFamily(Enum):
    """Supported delta-sequence families."""

    LORENTZ = "lorentz"
    GAUSS = "gauss"


class GaussOrientation(Enum):
    """Direction of the Gauss step.

    INCREASING rises from 0 to 1 like the Lorentz step and preserves the
    partition range and the sharp limit; DECREASING is the mirrored variant
    (kept because both orientations are in circulation).
    """

    INCREASING = "increasing"
    DECREASING = "decreasing"


@dataclass(frozen=True)
class FlatteningParams:
    """Smoothing depths of the flattened projectors.

    ``a`` is the depth on the positive side, ``b`` on the negative side, in
    the units of the argument variable.  Both must be positive for flattened
    evaluation; ``a = b = 0`` selects the sharp branch in the operations that
    document one.
    """

    a: float
    b: float | None = None
    family: DeltaFamily = DeltaFamily.LORENTZ

    def __post_init__(self):
        if self.b is None:
            object.__setattr__(self, "b", float(self.a))
        for name in ("a", "b"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0.0:
                raise DomainError(f"smoothing depth {name}={v!r} must be finite and >= 0")
        if not isinstance(self.family, DeltaFamily):
            raise DomainError(f"unknown delta family {self.family!r}")


def _check_finite(x, name: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError(f"{name} must be finite")
    return x


def _delta(x, depth: float, family: DeltaFamily):
    """Delta-sequence value; ``depth`` is assumed positive."""
    if family is DeltaFamily.LORENTZ:
        return (depth / math.pi) / (x * x + depth * depth)
    return np.exp(-((x / depth) ** 2)) / (depth * math.sqrt(math.pi))


def _step(x, depth: float, family: DeltaFamily, orientation: GaussOrientation):
    """Flattened unit step of one smoothing depth (sharp for depth == 0)."""
    if depth == 0.0:
        return np.where(x > 0.0, 1.0, 0.0)
    if family is DeltaFamily.LORENTZ:
        return 0.5 + np.arctan(x / depth - 1.0) / math.pi
    s = erf(x / depth - 1.0)
    if orientation is GaussOrientation.INCREASING:
        return 0.5 * (1.0 + s)
    return 0.5 * (1.0 - s)


def _step_derivative(x, depth: float, family: DeltaFamily,
                     orientation: GaussOrientation):
    """d/dx of ``_step``: the delta sequence re-centered at ``x = depth``."""
    d = _delta(x - depth, depth, family)
    if family is DeltaFamily.GAUSS and orientation is GaussOrientation.DECREASING:
        return -d
    return d


def delta_seq(x, p: FlatteningParams):
    """Delta-sequence value at ``x`` for depth ``p.a``.

    Lorentz: (1/pi) a / (x^2 + a^2); Gauss: exp(-x^2/a^2) / (a sqrt(pi)).
    Strictly positive and even in ``x``.
    """
    x = _check_finite(x, "x")
    if p.a <= 0.0:
        raise DomainError("delta_seq requires a > 0")
    return _delta(x, p.a, p.family)


def theta_flat(x, p: FlatteningParams,
               orientation: GaussOrientation = GaussOrientation.INCREASING):
    """Flattened unit step with smoothing depth ``p.a``.

    Lorentz form: 1/2 + arctan(x/a - 1)/pi.  Gauss form: (1 +- erf(x/a - 1))/2
    depending on ``orientation``.  ``p.a == 0`` returns the sharp step with
    the open-interval convention (value 0 at x = 0).  Values lie in [0, 1].
    """
    x = _check_finite(x, "x")
    return _step(x, p.a, p.family, orientation)


def zeta_flat(x, p: FlatteningParams,
              orientation: GaussOrientation = GaussOrientation.INCREASING):
    """Bump completing the flattened steps to a partition of unity.

    Returns 1 - theta_flat(x, a) - theta_flat(-x, b); even in ``x`` when
    a == b, and it tends to 0 as |x| grows.  With ``a == b == 0`` it is the
    sharp point indicator (1 at x = 0, else 0).
    """
    x = _check_finite(x, "x")
    if (p.a == 0.0) != (p.b == 0.0):
        raise DomainError("sharp branch needs a = b = 0; mixed zero depths are undefined")
    if p.a == 0.0:
        return np.where(x == 0.0, 1.0, 0.0)
    up = _step(x, p.a, p.family, orientation)
    down = _step(-x, p.b, p.family, orientation)
    return 1.0 - up - down


def zeta_derivative(x, p: FlatteningParams,
                    orientation: GaussOrientation = GaussOrientation.INCREASING):
    """Closed-form d/dx of ``zeta_flat``: delta(x + b | b) - delta(x - a | a)."""
    x = _check_finite(x, "x")
    if p.a <= 0.0 or p.b <= 0.0:
        raise DomainError("zeta_derivative requires a > 0 and b > 0")
    down = _step_derivative(-x, p.b, p.family, orientation)
    up = _step_derivative(x, p.a, p.family, orientation)
    return down - up


def kappa(z, p: FlatteningParams,
          orientation: GaussOrientation = GaussOrientation.INCREASING):
    """Logarithmic derivative of the bump, zeta'(z) / zeta(z).

    Only defined inside the transient zone where the bump stays above
    ``ZETA_FLOOR``;  outside, the log-derivative blows up and a
    TransientZoneError is raised.  Odd in ``z`` when a == b.
    """
    z = _check_finite(z, "z")
    zeta = zeta_flat(z, p, orientation)
    if np.any(np.asarray(zeta) <= ZETA_FLOOR):
        raise TransientZoneError(
            f"zeta below floor {ZETA_FLOOR:g}: point outside transient zone")
    return zeta_derivative(z, p, orientation) / zeta


def fourier_modulation(k, p: FlatteningParams):
    """Smooth factor the flattening imprints on the step's Fourier transform.

    Lorentz: exp(i k a - a |k|); Gauss: exp(i k a - a^2 k^2 / 4).  Magnitude
    is at most 1 and the value at k = 0 is exactly 1.
    """
    k = _check_finite(k, "k")
    if p.a < 0.0:
        raise DomainError("fourier_modulation requires a >= 0")
    a = p.a
    if p.family is DeltaFamily.LORENTZ:
        return np.exp(1j * k * a - a * np.abs(k))
    return np.exp(1j * k * a - (a * a) * (k * k) / 4.0)


@dataclass(frozen=True)
class PointProjectorSeries:
    """Finite series of weights on delta derivatives at the origin.

    The weights are configuration: their number and values come from the
    model under study, not from this library.  The default is the pure delta.
    """

    coefficients: tuple[float, ...] = (1.0,)

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        if not coeffs:
            raise DomainError("coefficient list must not be empty")
        if not all(math.isfinite(c) for c in coeffs):
            raise DomainError("coefficients must be finite")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def order(self) -> int:
        return len(self.coefficients)


def point_projector_apply(f_derivatives: Sequence[float],
                          series: PointProjectorSeries) -> float:
    """Distributional pairing of the series with a test function.

    Given f's derivatives at 0 (f(0), f'(0), ...), returns
    sum_n c_n (-1)^n f^(n)(0).
    """
    if len(f_derivatives) < series.order:
        raise DomainError(
            f"need at least {series.order} derivatives, got {len(f_derivatives)}")
    total = 0.0
    for n, c in enumerate(series.coefficients):
        d = float(f_derivatives[n])
        if not math.isfinite(d):
            raise DomainError("derivative values must be finite")
        total += c * (-1.0) ** n * d
    return total


_DEFAULT_SWITCH_BASE = FlatteningParams(1.0, 1.0, DeltaFamily.LORENTZ)


@dataclass(frozen=True)
class SwitchingSpec:
    """Parameters of the covariant interaction-switching profile.

    ``n_mu`` is a unit time-like 4-vector (n0^2 - |n|^2 = 1) and ``gamma`` a
    positive rate fixing how fast the profile turns off along it.
    """

    gamma: float
    n_mu: tuple[float, float, float, float] = (1.0, 0.0, 0.0, 0.0)
    base: FlatteningParams = _DEFAULT_SWITCH_BASE

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and self.gamma > 0.0):
            raise DomainError("gamma must be finite and positive")
        n = tuple(float(v) for v in self.n_mu)
        if len(n) != 4:
            raise DomainError("n_mu must have four components")
        norm = n[0] ** 2 - n[1] ** 2 - n[2] ** 2 - n[3] ** 2
        if abs(norm - 1.0) > 1e-12:
            raise DomainError(f"n_mu must be unit time-like; got norm {norm!r}")
        object.__setattr__(self, "n_mu", n)
        if self.base.a <= 0.0 or self.base.b <= 0.0:
            raise DomainError("switching base needs positive depths")


def make_switching_function(spec: SwitchingSpec) -> Callable[..., np.ndarray]:
    """Build the switching profile g(x) over 4-vectors.

    g(x) = zeta_flat(s) / zeta_flat(0) with s = gamma |n . x| (Minkowski dot),
    clamped to [0, 1].  By construction g is even under x -> -x, g(0) is in
    (0, 1], and g decays to 0 as |n . x| grows.
    """
    n0, n1, n2, n3 = spec.n_mu
    origin = float(zeta_flat(0.0, spec.base))

    def g(x):
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != 4:
            raise DomainError("x must have a trailing axis of four components")
        s = spec.gamma * np.abs(
            n0 * x[..., 0] - n1 * x[..., 1] - n2 * x[..., 2] - n3 * x[..., 3])
        return np.clip(zeta_flat(s, spec.base) / origin, 0.0, 1.0)

    return g
