"""Exact operator-level current dynamics in a magnetic field.

The charge-conjugation two-space is spanned by the Pauli-type matrices
``tau_1, tau_2, tau_3``; the nilpotent combination ``T = tau_3 + i tau_2``
carries the kinetic part of the Hamiltonian.  The transverse current
operators factor into ``T`` times oscillator ladder operators, and their
exact time dependence is a closed two-branch expression.  This module
evaluates those closed forms on the truncated Landau eigenbasis and checks
them against plain Heisenberg-picture phase evolution, together with the
completeness and pseudo-Hermitian exponential identities the derivation
rests on.

All quantities are in natural units (energies in mc^2, times in t_c,
lengths in Compton wavelengths).
"""

from __future__ import annotations

import math
from typing import Literal

import numpy as np
from scipy.linalg import expm

from .core import DomainError
from .magnetic import LandauContext, LandauState, hermite_functions, landau_energy, landau_nu

__all__ = [
    "TAU1",
    "TAU2",
    "TAU3",
    "TMAT",
    "eigenspinor",
    "current_raw_element",
    "heisenberg_current_element",
    "exact_current_element",
    "heisenberg_conjugate_element",
    "exact_conjugate_element",
    "p_operator_matrix",
    "p_operator_matrix_dt",
    "p_operator_element",
    "current_velocity_element",
    "spin_block_identity",
    "verify_unity_resolution",
    "random_pseudo_hermitian",
    "verify_tau3_exponential",
]

TAU1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
TAU2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
TAU3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
#: nilpotent kinetic matrix T = tau_3 + i tau_2; T @ T == 0
TMAT = TAU3 + 1.0j * TAU2


def eigenspinor(nu: float, s: int) -> np.ndarray:
    """Two-component amplitude of a Landau eigenstate of branch ``s``.

    Normalized so that the tau_3-weighted product of two spinors at the
    same level is ``s * delta_{s s'}``.
    """
    if s not in (-1, 1):
        raise DomainError(f"branch index must be +-1, got {s}")
    return 0.5 * np.array([nu + s / nu, nu - s / nu])


def _branch_energies(n: int, k_z: float, ctx: LandauContext) -> tuple[float, float]:
    e_n = float(landau_energy(n, k_z, ctx))
    e_m = float(landau_energy(n + 1, k_z, ctx))
    return e_n, e_m


def current_raw_element(n: int, k_z: float, ctx: LandauContext) -> float:
    """tau_3-weighted element of the lowering current between levels
    ``(n, s)`` and ``(n+1, z)`` at t = 0.

    The spinor factor contracts to ``nu_n nu_{n+1}`` for every branch
    pair, so the element is branch-independent and real.
    """
    if n < 0:
        raise DomainError(f"level index must be non-negative, got {n}")
    nu_n = float(landau_nu(n, k_z, ctx))
    nu_m = float(landau_nu(n + 1, k_z, ctx))
    return math.sqrt(n + 1.0) * nu_n * nu_m


def heisenberg_current_element(
    n: int, s: int, z: int, t: float, ctx: LandauContext, k_z: float = 0.0
) -> complex:
    """Heisenberg-picture element between ``(n, s)`` and ``(n+1, z)``:
    the raw element rotated by the two branch phases."""
    e_n, e_m = _branch_energies(n, k_z, ctx)
    phase = np.exp(1.0j * s * e_n * t) * np.exp(-1.0j * z * e_m * t)
    return complex(phase * current_raw_element(n, k_z, ctx))


def exact_current_element(
    n: int,
    s: int,
    z: int,
    t: float,
    ctx: LandauContext,
    k_z: float = 0.0,
    eta: int = 1,
) -> complex:
    """Closed-form element of the time-dependent lowering current.

    The two branches carry weights ``(1 +- eta z)/2`` and counter-rotating
    phases at the shifted frequency E_{n+1}; their sum is independent of
    the root-sign choice ``eta``.
    """
    if eta not in (-1, 1):
        raise DomainError(f"root sign must be +-1, got {eta}")
    e_n, e_m = _branch_energies(n, k_z, ctx)
    j0 = current_raw_element(n, k_z, ctx)
    left = np.exp(1.0j * s * e_n * t)
    branch1 = 0.5 * (1.0 + eta * z) * np.exp(-1.0j * eta * e_m * t)
    branch2 = 0.5 * (1.0 - eta * z) * np.exp(+1.0j * eta * e_m * t)
    return complex(left * (branch1 + branch2) * j0)


def heisenberg_conjugate_element(
    n: int, s: int, z: int, t: float, ctx: LandauContext, k_z: float = 0.0
) -> complex:
    """Heisenberg element of the raising current between ``(n+1, s)``
    and ``(n, z)``."""
    e_n, e_m = _branch_energies(n, k_z, ctx)
    phase = np.exp(1.0j * s * e_m * t) * np.exp(-1.0j * z * e_n * t)
    return complex(phase * current_raw_element(n, k_z, ctx))


def exact_conjugate_element(
    n: int,
    s: int,
    z: int,
    t: float,
    ctx: LandauContext,
    k_z: float = 0.0,
    eta: int = 1,
) -> complex:
    """Closed-form element of the time-dependent raising current; the
    branch weights here are ``(1 +- eta s)/2``."""
    if eta not in (-1, 1):
        raise DomainError(f"root sign must be +-1, got {eta}")
    e_n, e_m = _branch_energies(n, k_z, ctx)
    j0 = current_raw_element(n, k_z, ctx)
    right = np.exp(-1.0j * z * e_n * t)
    branch1 = 0.5 * (1.0 + eta * s) * np.exp(+1.0j * eta * e_m * t)
    branch2 = 0.5 * (1.0 - eta * s) * np.exp(-1.0j * eta * e_m * t)
    return complex((branch1 + branch2) * right * j0)


def _two_space_hamiltonian(n: int, k_z: float, ctx: LandauContext) -> np.ndarray:
    """2x2 action of the Hamiltonian at fixed level and longitudinal
    momentum: T times the kinetic energy plus tau_3 times the rest energy."""
    kinetic = ctx.b_ratio * (n + 0.5) + 0.5 * k_z * k_z
    return TMAT * kinetic + TAU3


def p_operator_matrix(
    n: int, k_x: float, k_z: float, t: float, ctx: LandauContext
) -> np.ndarray:
    """2x2 matrix of the longitudinal-gradient operator at time ``t``,
    acting on a plane-wave factor of momentum ``k_x``.

    At t = 0 this is ``i k_x T``; the time-dependent part rotates in the
    tau_1 channel at twice the state energy.  The square of the 2x2
    Hamiltonian is the scalar E^2, so the matrix exponential reduces to
    a cosine and a sine term.
    """
    h = _two_space_hamiltonian(n, k_z, ctx)
    e2 = float(landau_energy(n, k_z, ctx)) ** 2
    e = math.sqrt(e2)
    exp_2iht = math.cos(2.0 * e * t) * np.eye(2) + 1.0j * math.sin(2.0 * e * t) * h / e
    return 1.0j * k_x * (TMAT + (h / e2) @ (exp_2iht - np.eye(2)) @ TAU1)


def p_operator_matrix_dt(
    n: int, k_x: float, k_z: float, t: float, ctx: LandauContext
) -> np.ndarray:
    """Analytic time derivative of :func:`p_operator_matrix`; equals
    ``2 i k_x exp(2iHt) tau_1`` and reduces to ``2 i k_x tau_1`` at t = 0."""
    h = _two_space_hamiltonian(n, k_z, ctx)
    e = float(landau_energy(n, k_z, ctx))
    exp_2iht = math.cos(2.0 * e * t) * np.eye(2) + 1.0j * math.sin(2.0 * e * t) * h / e
    return 1.0j * k_x * 2.0j * exp_2iht @ TAU1


def p_operator_element(
    n: int, k_x: float, k_z: float, s: int, z: int, t: float, ctx: LandauContext
) -> complex:
    """tau_3-weighted element of the gradient operator between branches
    ``s`` and ``z`` at the same level."""
    nu = float(landau_nu(n, k_z, ctx))
    bra = eigenspinor(nu, s)
    ket = eigenspinor(nu, z)
    return complex(bra @ TAU3 @ p_operator_matrix(n, k_x, k_z, t, ctx) @ ket)


def current_velocity_element(
    state_n: LandauState, state_m: LandauState, axis: Literal["x", "y"], ctx: LandauContext
) -> complex:
    """Transverse current element assembled from the ladder currents.

    Argument order matches :func:`kgzb.magnetic.velocity_matrix_element`:
    ``state_n`` indexes the ket, ``state_m`` the bra.  The oscillator
    coordinate is oriented away from the guiding centre (the same
    orientation the level-coefficient table uses), which flips the sign
    of both ladder operators relative to a coordinate oriented towards
    it.  The gradient term cancels against the guiding-centre part of
    the vector potential, leaving pure ladder content.  For unit charge
    the result is the velocity matrix element.
    """
    bra, ket = state_m, state_n
    if bra.k_z != ket.k_z or bra.k_x != ket.k_x:
        return 0.0 + 0.0j
    length = ctx.magnetic_length
    n, z_branch = ket.n, ket.s
    m, s_branch = bra.n, bra.s
    nu_prod = float(landau_nu(m, bra.k_z, ctx)) * float(landau_nu(n, ket.k_z, ctx))
    lower = math.sqrt(n) if m == n - 1 else 0.0  # <m|a|n>
    raise_ = math.sqrt(n + 1.0) if m == n + 1 else 0.0  # <m|a^dag|n>
    # orientation flip: a -> -a, a^dag -> -a^dag
    lower, raise_ = -lower, -raise_
    del z_branch, s_branch  # spinor contraction is branch-independent
    if axis == "x":
        return complex(nu_prod * (lower + raise_) / (math.sqrt(2.0) * length))
    if axis == "y":
        return complex(-1.0j * nu_prod * (lower - raise_) / (math.sqrt(2.0) * length))
    raise DomainError(f"axis must be 'x' or 'y', got {axis!r}")


def spin_block_identity(nu: float) -> np.ndarray:
    """Branch-summed outer-product block ``sum_s s (mu mu^T) tau_3``;
    evaluates to four times the identity for any 0 < nu <= 1."""
    if not 0.0 < nu <= 1.0:
        raise DomainError(f"nu must lie in (0, 1], got {nu}")
    total = np.zeros((2, 2), dtype=complex)
    for s in (-1, 1):
        mu = np.array([nu + s / nu, nu - s / nu])
        total += s * np.outer(mu, mu) @ TAU3
    return total


def verify_unity_resolution(
    ctx: LandauContext,
    n_max: int,
    grid: np.ndarray | None = None,
    d_y: float | None = None,
) -> float:
    """Apply the truncated oscillator completeness kernel to a Gaussian
    and return the maximum deviation from the identity action.

    The branch sum over the two-space has already been carried out (it
    contributes the exact factor four that normalizes the kernel), so the
    residual measures only the oscillator truncation.
    """
    length = ctx.magnetic_length
    if d_y is None:
        d_y = 2.0 * length
    if grid is None:
        half = 8.0 * max(d_y, length)
        grid = np.linspace(-half, half, 1601)
    xi = grid / length
    phi = hermite_functions(n_max, xi, length=length)
    test = (2.0 * math.pi * d_y * d_y) ** -0.25 * np.exp(-grid * grid / (4.0 * d_y * d_y))
    weights = np.gradient(grid)
    projected = phi.T @ (phi @ (test * weights))
    return float(np.max(np.abs(projected - test)))


def random_pseudo_hermitian(rng: np.random.Generator) -> np.ndarray:
    """Random 2x2 operator O satisfying O = tau_3 O^dag tau_3, built by
    symmetrizing a matrix with entries uniform in the unit disc."""
    raw = rng.uniform(-1.0, 1.0, (2, 2)) + 1.0j * rng.uniform(-1.0, 1.0, (2, 2))
    return raw + TAU3 @ raw.conj().T @ TAU3


def verify_tau3_exponential(operator: np.ndarray) -> float:
    """Max entry deviation between ``tau_3 exp(O)`` and ``exp(O^dag) tau_3``
    computed with the scaling-and-squaring matrix exponential."""
    lhs = TAU3 @ expm(operator)
    rhs = expm(operator.conj().T) @ TAU3
    return float(np.max(np.abs(lhs - rhs)))
