"""Adaptive integration engine for Gaussian-weighted momentum-space integrals.

All 3D integrals in this package reduce analytically to 1D radial or line
integrals; this module evaluates them with an adaptive Gauss-Kronrod rule
(QUADPACK) over a finite window around the packet center. The window is
truncated ``window_sigmas / d`` beyond k0: the Gaussian weight decays as
exp(-d^2 dk^2), so the default 10 sigma leaves a < 1e-21 tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from kgzb.core import GaussianPacket


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_subdivisions: int = 200
    window_sigmas: float = 10.0

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if self.window_sigmas < 6:
            raise ValueError("window_sigmas must be >= 6")


DEFAULT_SPEC = QuadratureSpec()


class ConvergenceError(RuntimeError):
    """Tolerance not reached; carries the best estimate and error bound."""

    def __init__(self, estimate: float, error: float, message: str = ""):
        self.estimate = estimate
        self.error = error
        super().__init__(
            message
            or f"quadrature did not converge: estimate={estimate!r}, error bound={error!r}"
        )


def _adaptive(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    spec: QuadratureSpec,
    time_hint: float,
) -> float:
    # The ZB phase ~ t*sqrt(1+q^2) shrinks the oscillation period in k as t
    # grows; scale the subdivision budget accordingly.
    limit = spec.max_subdivisions * max(1, math.ceil(abs(time_hint)))
    val, err = quad(f, lo, hi, epsabs=spec.abs_tol, epsrel=spec.rel_tol, limit=limit)
    if err > max(spec.abs_tol, spec.rel_tol * abs(val)) * 10.0:
        raise ConvergenceError(val, err)
    return val


def radial_window(packet: GaussianPacket, spec: QuadratureSpec) -> tuple[float, float]:
    """Integration window [max(0, k0 - w/d), k0 + w/d] for the radial integral."""
    d = packet.d
    k0 = float(np.linalg.norm(packet.k0))
    half = spec.window_sigmas / d
    lo, hi = max(0.0, k0 - half), k0 + half
    if packet.truncated:
        hi = min(hi, 1.0)
        lo = min(lo, hi)
    return lo, hi


def integrate_radial(
    f: Callable[[float], float],
    packet: GaussianPacket,
    spec: QuadratureSpec = DEFAULT_SPEC,
    time_hint: float = 0.0,
) -> float:
    """Integrate f(k) dk over the radial window around the packet center.

    The caller has already folded the angular integrals into f; the packet
    must be isotropic with k0 along z for that reduction to hold.
    """
    if not packet.is_isotropic:
        raise ValueError("radial reduction requires an isotropic packet")
    if packet.k0[0] != 0.0 or packet.k0[1] != 0.0:
        raise ValueError("radial reduction requires k0 along z")
    lo, hi = radial_window(packet, spec)
    if hi <= lo:
        return 0.0
    return _adaptive(f, lo, hi, spec, time_hint)


def gaussian_line_weight(packet: GaussianPacket, k_z) -> np.ndarray | float:
    """Normalized |g_z(k_z)|^2 weight: (d_z/sqrt(pi)) exp(-d_z^2 (k_z-k0z)^2)."""
    d_z = packet.widths[2]
    k0z = packet.k0[2]
    return d_z / np.sqrt(np.pi) * np.exp(-(d_z**2) * (np.asarray(k_z) - k0z) ** 2)


def line_window(packet: GaussianPacket, spec: QuadratureSpec) -> tuple[float, float]:
    d_z = packet.widths[2]
    k0z = packet.k0[2]
    half = spec.window_sigmas / d_z
    return k0z - half, k0z + half


def integrate_1d_gaussian(
    f: Callable[[float], float],
    packet: GaussianPacket,
    spec: QuadratureSpec = DEFAULT_SPEC,
    time_hint: float = 0.0,
) -> float:
    """Gaussian-weighted line integral: int f(k_z) |g_z(k_z)|^2 dk_z."""
    lo, hi = line_window(packet, spec)
    return _adaptive(
        lambda k: f(k) * float(gaussian_line_weight(packet, k)), lo, hi, spec, time_hint
    )


def riemann_oracle(
    f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, n: int = 1_000_000
) -> float:
    """Dense midpoint Riemann sum, the independent cross-check for the
    adaptive rule. Deliberately shares no code with it."""
    k = np.linspace(lo, hi, n, endpoint=False) + (hi - lo) / (2 * n)
    return float(np.sum(f(k)) * (hi - lo) / n)
