"""Classical string analogue of the trembling motion.

A stretched string attached to an elastic substrate obeys the same wave
equation as a one-dimensional Klein-Gordon field, with the wave speed
``u = sqrt(T/rho)`` standing in for ``c`` and ``sqrt(K/T)`` for the
inverse Compton wavelength.  A real Gaussian displacement carries no
current, but the variance of its position distribution oscillates at the
interband frequency ``2 omega_0`` — the classical signature of the
trembling motion.  This module computes the spectral five-term variance
breakdown, its large-time approximation, the SI parameter mapping, and a
fully independent finite-difference oracle for the same dynamics.

Internally everything is in natural units (c = lambda_c = omega_0 = 1);
:class:`StringConfig` supplies the SI conversion factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import DomainError
from .quadrature import DEFAULT_SPEC, QuadratureSpec, _adaptive

__all__ = [
    "StringConfig",
    "string_parameters",
    "VarianceBreakdown",
    "real_field",
    "variance_terms",
    "variance_large_time",
    "large_time_coefficient",
    "odd_channel_integral",
    "PdeTrace",
    "pde_oracle",
]


@dataclass(frozen=True)
class StringConfig:
    """Material parameters of the string-on-rubber system (SI units)."""

    linear_density: float  # kg/m
    elastic_constant: float  # N/m^2
    tension: float  # N

    def __post_init__(self):
        for name in ("linear_density", "elastic_constant", "tension"):
            if getattr(self, name) <= 0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)}")

    @property
    def wave_speed(self) -> float:
        """u = sqrt(T/rho), m/s — plays the role of the light speed."""
        return math.sqrt(self.tension / self.linear_density)

    @property
    def sim_compton(self) -> float:
        """sqrt(T/K), m — the simulated Compton wavelength."""
        return math.sqrt(self.tension / self.elastic_constant)

    @property
    def sim_freq(self) -> float:
        """sqrt(K/rho), 1/s — the simulated rest frequency omega_0;
        independent of the tension."""
        return math.sqrt(self.elastic_constant / self.linear_density)

    @property
    def sim_time(self) -> float:
        """1/omega_0, s — the simulated characteristic time."""
        return 1.0 / self.sim_freq

    @property
    def audible_freq(self) -> float:
        """f_0 = 2 omega_0 / (2 pi), Hz — the trembling frequency."""
        return self.sim_freq / math.pi


def string_parameters(
    linear_density: float, elastic_constant: float, tension: float
) -> StringConfig:
    """Build a :class:`StringConfig`, validating positivity."""
    return StringConfig(linear_density, elastic_constant, tension)


def _amplitude(d: float, k: np.ndarray | float):
    """Spectral amplitude of the real zero-momentum Gaussian packet,
    (2 d sqrt(pi))^{1/2} exp(-d^2 k^2 / 2)."""
    return math.sqrt(2.0 * d * math.sqrt(math.pi)) * np.exp(-0.5 * d * d * np.square(k))


def _window(d: float, spec: QuadratureSpec) -> float:
    return spec.window_sigmas / d


def real_field(
    d: float, x, t: float, spec: QuadratureSpec = DEFAULT_SPEC
) -> np.ndarray:
    """Real displacement field: the cosine-dispersed evolution of the
    Gaussian packet, by quadrature over the even half-line."""
    if d <= 0:
        raise DomainError(f"width must be positive, got {d}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    half = _window(d, spec)
    out = np.empty_like(x)
    for i, xi in enumerate(x):
        # odd sin(kx) part integrates to zero; keep the even cosine part
        out[i] = _adaptive(
            lambda k: float(
                _amplitude(d, k)
                * math.cos(k * xi)
                * math.cos(t * math.sqrt(1.0 + k * k))
            ),
            0.0,
            half,
            spec,
            t,
        ) / math.pi
    return out


@dataclass(frozen=True)
class VarianceBreakdown:
    """Five-term split of the position variance of the real field."""

    v1c: float
    v1osc: float
    v2c: float
    v2osc: float
    v3: float
    time: float

    def __post_init__(self):
        if self.v1c < 0 or self.v2c < 0:
            raise DomainError("non-oscillating variance terms must be non-negative")

    @property
    def total(self) -> float:
        return self.v1c + self.v1osc + self.v2c + self.v2osc + self.v3


def variance_terms(
    d: float, t: float, spec: QuadratureSpec = DEFAULT_SPEC
) -> VarianceBreakdown:
    """Evaluate the five variance integrals at time ``t``.

    The constant term of the width channel is d^2/4 analytically; its
    oscillating partner starts equal to it and decays.  The spreading
    channel grows as t^2 with a persistent oscillating correction.  The
    odd term vanishes identically and is returned as literal zero.
    """
    if d <= 0:
        raise DomainError(f"width must be positive, got {d}")
    half = _window(d, spec)

    def even(f):
        # all integrands below are even in k
        return 2.0 * _adaptive(f, 0.0, half, spec, t)

    pref1 = d**3 / (2.0 * math.sqrt(math.pi))
    pref2 = d * t * t / (2.0 * math.sqrt(math.pi))
    v1c = 0.25 * d * d  # closed form of the Gaussian moment
    v1osc = pref1 * even(
        lambda k: math.exp(-d * d * k * k)
        * (k * d) ** 2
        * math.cos(2.0 * t * math.sqrt(1.0 + k * k))
    )
    v2c = pref2 * even(
        lambda k: math.exp(-d * d * k * k) * k * k / (1.0 + k * k)
    )
    v2osc = -pref2 * even(
        lambda k: math.exp(-d * d * k * k)
        * k
        * k
        / (1.0 + k * k)
        * math.cos(2.0 * t * math.sqrt(1.0 + k * k))
    )
    # cross term of the squared real field: even in k (the extra kd factor
    # relative to the vanishing odd channel), nonzero, and required for the
    # total to equal the quadratic-form value of the evolved field exactly
    v3 = (d**3 * t / math.sqrt(math.pi)) * even(
        lambda k: math.exp(-d * d * k * k)
        * k
        * k
        / math.sqrt(1.0 + k * k)
        * math.sin(2.0 * t * math.sqrt(1.0 + k * k))
    )
    return VarianceBreakdown(v1c=v1c, v1osc=v1osc, v2c=v2c, v2osc=v2osc, v3=v3, time=t)


def odd_channel_integral(
    d: float, t: float, spec: QuadratureSpec = DEFAULT_SPEC
) -> float:
    """Sine-channel integral with a single power of k: odd in k, so it
    vanishes identically; evaluated over the full window as a check."""
    if d <= 0:
        raise DomainError(f"width must be positive, got {d}")
    half = _window(d, spec)
    return (d * d * t / math.sqrt(math.pi)) * _adaptive(
        lambda k: math.exp(-d * d * k * k)
        * k
        / math.sqrt(1.0 + k * k)
        * math.sin(2.0 * t * math.sqrt(1.0 + k * k)),
        -half,
        half,
        spec,
        t,
    )


def variance_large_time(d: float, t: float) -> float:
    """Wide-packet closed form of the persistent oscillating term:
    a conjugate pair of complex amplitudes whose sum is real.

    Stationary-phase reduction of the persistent-channel integral: the
    phase factor exp(2 i eta t) pairs with the complex width d^2 - i eta t
    (its conjugate), with overall weight d t^2 / 8; both verified against
    the exact integral by quadrature.
    """
    if d <= 0:
        raise DomainError(f"width must be positive, got {d}")
    total = 0.0j
    for eta in (1.0, -1.0):
        total += np.exp(2.0j * eta * t) / (d * d - 1.0j * eta * t) ** 1.5
    result = -0.125 * d * t * t * total
    assert abs(result.imag) < 1e-12 * max(1.0, abs(result.real))
    return float(result.real)


def large_time_coefficient(d: float, t_lo: float = 50.0, t_hi: float = 500.0) -> float:
    """Fit the growth coefficient of the ``sqrt(t)`` oscillation envelope.

    The prefactor is not available in closed form here; it is extracted
    by a least-squares fit of the envelope of the wide-packet form over
    the given window and reported, never asserted against a reference.
    """
    times = np.linspace(t_lo, t_hi, 4001)
    values = np.array([variance_large_time(d, t) for t in times])
    envelope = np.abs(values)
    # sample the envelope at its oscillation peaks
    peaks = (envelope[1:-1] > envelope[:-2]) & (envelope[1:-1] > envelope[2:])
    tp = times[1:-1][peaks]
    vp = envelope[1:-1][peaks]
    coeff = float(np.sum(vp * np.sqrt(tp)) / np.sum(tp))
    return coeff


@dataclass(frozen=True)
class PdeTrace:
    """Variance history from the finite-difference evolution."""

    times: np.ndarray
    raw: np.ndarray  # int y^2 x^2 dx, same quadratic form as the spectral terms
    normalized: np.ndarray = field(repr=False)  # raw / int y^2 dx


def pde_oracle(
    d: float,
    t_end: float,
    dx: float = 0.02,
    dt: float | None = None,
    n_samples: int = 101,
    half_width: float | None = None,
) -> PdeTrace:
    """Leapfrog evolution of the string equation as an independent check.

    Second-order centred differences in space and time; starts from the
    Gaussian displacement at rest (the cosine-dispersed field has zero
    initial velocity by parity).  Deliberately shares no code with the
    spectral route.
    """
    if d <= 0 or t_end < 0 or dx <= 0:
        raise DomainError("width, horizon and step must be positive")
    if dt is None:
        dt = 0.9 * dx
    if dt > 0.9 * dx:
        raise DomainError(
            f"time step {dt} violates the stability bound 0.9*dx = {0.9 * dx}"
        )
    needed = t_end + 8.0 * d
    if half_width is None:
        half_width = needed
    elif half_width < needed:
        raise DomainError(
            f"domain half-width {half_width} < {needed}; reflections from the "
            "boundary would contaminate the variance"
        )
    x = np.arange(-half_width, half_width + dx, dx)
    y = (d * math.sqrt(math.pi)) ** -0.5 * np.exp(-x * x / (2.0 * d * d))

    def accel(u: np.ndarray) -> np.ndarray:
        lap = np.zeros_like(u)
        lap[1:-1] = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (dx * dx)
        return lap - u

    sample_times = np.linspace(0.0, t_end, n_samples)
    raw = np.empty(n_samples)
    norm = np.empty(n_samples)
    if t_end > 0:
        # shrink dt so every sample time falls exactly on a step
        spacing = t_end / (n_samples - 1)
        per_sample = max(1, math.ceil(spacing / dt))
        dt = spacing / per_sample
        n_steps = per_sample * (n_samples - 1)
    else:
        per_sample, n_steps = 1, 0

    def record(i: int, u: np.ndarray) -> None:
        raw[i] = float(np.trapezoid(u * u * x * x, x))
        norm[i] = raw[i] / float(np.trapezoid(u * u, x))

    curr = y
    prev = None
    record(0, curr)
    for step in range(1, n_steps + 1):
        if prev is None:
            # first step from rest: Taylor start keeps second-order accuracy
            new = curr + 0.5 * dt * dt * accel(curr)
        else:
            new = 2.0 * curr - prev + dt * dt * accel(curr)
        prev, curr = curr, new
        if step % per_sample == 0:
            record(step // per_sample, curr)
    return PdeTrace(times=sample_times, raw=raw, normalized=norm)
