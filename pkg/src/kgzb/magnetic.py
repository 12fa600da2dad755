"""ZB of a charged Klein-Gordon particle in a uniform magnetic field.

Landau spectrum, the Gaussian-packet expansion coefficients U_{m,n} over
oscillator states, the closed velocity series (intraband / cyclotron and
interband / ZB frequencies), sum rules, and the non-relativistic limit.

Natural units: lengths in lambda_c, times in t_c, energies in mc^2,
velocities in c. The field enters through b_ratio = B / B_s (Schwinger
field), giving magnetic length L = 1/sqrt(b) and cyclotron frequency
omega_c = b.

Numerical route for U_{m,n}: the printed finite sum for the Gaussian
overlap cancels catastrophically for large indices, so production uses an
exact three-term recurrence in (m, n) for the same overlap integral
int F_m* F_n dk_x, scaled so every stored quantity stays O(1). With the
level-ratio factor folded in, all recurrence coefficients are real even
when the intermediate c-coefficient is imaginary (d_y > L). The printed
sums survive as small-index reference implementations for cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from kgzb.core import DomainError, GaussianPacket
from kgzb.quadrature import DEFAULT_SPEC, QuadratureSpec, gaussian_line_weight

SQRT2 = math.sqrt(2.0)


class TruncationError(RuntimeError):
    """Level sum truncated too early; carries diagnostics."""

    def __init__(self, n_max: int, deficit: float, message: str = ""):
        self.n_max = n_max
        self.deficit = deficit
        super().__init__(
            message
            or f"Landau-level truncation at n_max={n_max} leaves weight "
            f"deficit {deficit:.3e}"
        )


@dataclass(frozen=True)
class LandauContext:
    """Magnetic-field context: b_ratio = B/B_s and the particle charge sign."""

    b_ratio: float
    charge_sign: int = +1

    def __post_init__(self):
        if self.b_ratio <= 0:
            raise DomainError("b_ratio must be positive")
        if self.charge_sign not in (-1, +1):
            raise DomainError("charge_sign must be +1 or -1")
        # construction-time invariants tying the derived scales together
        assert math.isclose(self.magnetic_length, 1.0 / math.sqrt(self.b_ratio))
        assert math.isclose(self.cyclotron_freq, self.b_ratio)

    @property
    def magnetic_length(self) -> float:
        """L in units of lambda_c."""
        return 1.0 / math.sqrt(self.b_ratio)

    @property
    def cyclotron_freq(self) -> float:
        """omega_c in units of omega_0 (= b_ratio for |q| = e)."""
        return self.b_ratio


def landau_energy(n, k_z, ctx: LandauContext):
    """E_{n, k_z} = sqrt(1 + 2 b (n + 1/2) + k_z^2), units mc^2."""
    n = np.asarray(n)
    if np.any(n < 0):
        raise DomainError("Landau index must be >= 0")
    k_z = np.asarray(k_z, dtype=float)
    return np.sqrt(1.0 + 2.0 * ctx.b_ratio * (n + 0.5) + k_z * k_z)


def landau_nu(n, k_z, ctx: LandauContext):
    """nu_{n, k_z} = sqrt(mc^2 / E) in (0, 1]."""
    return 1.0 / np.sqrt(landau_energy(n, k_z, ctx))


@dataclass(frozen=True)
class LandauState:
    """One eigenstate |n, k_x, k_z, s> of the Landau problem."""

    n: int
    k_x: float
    k_z: float
    s: int

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("Landau index must be >= 0")
        if self.s not in (-1, +1):
            raise DomainError("energy branch s must be +1 or -1")

    def energy(self, ctx: LandauContext) -> float:
        return float(landau_energy(self.n, self.k_z, ctx))

    def nu(self, ctx: LandauContext) -> float:
        return float(landau_nu(self.n, self.k_z, ctx))

    def mu_plus(self, ctx: LandauContext) -> float:
        nu = self.nu(ctx)
        return nu + self.s / nu

    def mu_minus(self, ctx: LandauContext) -> float:
        nu = self.nu(ctx)
        return nu - self.s / nu


def hermite_functions(n_max: int, xi, length: float = 1.0) -> np.ndarray:
    """Normalized oscillator functions phi_0..phi_n_max on grid xi.

    phi_n(xi) = H_n(xi) e^{-xi^2/2} / (C_n sqrt(L)); evaluated through the
    normalized three-term recurrence (never raw Hermite polynomials), stable
    to n ~ 500.
    """
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    out = np.zeros((n_max + 1, xi.size))
    out[0] = np.pi**-0.25 * np.exp(-0.5 * xi * xi) / math.sqrt(length)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * xi * out[0]
    for n in range(1, n_max):
        out[n + 1] = (
            math.sqrt(2.0 / (n + 1)) * xi * out[n]
            - math.sqrt(n / (n + 1)) * out[n - 1]
        )
    return out


def hermite_function(n: int, xi, length: float = 1.0) -> np.ndarray:
    """phi_n(xi); see :func:`hermite_functions`."""
    return hermite_functions(n, xi, length)[n]


# ---------------------------------------------------------------------------
# U-table

def _u_aux(packet: GaussianPacket, ctx: LandauContext) -> dict:
    """Auxiliary constants of the Gaussian overlap (Appendix-level algebra)."""
    L = ctx.magnetic_length
    d_x, d_y, _ = packet.widths
    k0x = packet.k0[0]
    big_d = L * L / math.sqrt(L * L + d_y * d_y)
    alpha = d_x * d_x + big_d * big_d
    gamma = 2.0 * d_x * d_x * k0x
    ratio = (L * L - d_y * d_y) / (L * L + d_y * d_y)
    c_hat = L**3 / (L * L + d_y * d_y)  # c * sqrt(ratio), real for all d_y
    a0sq = 2.0 * math.pi * d_y * d_y / (L * L + d_y * d_y)
    q_coef = 1.0 / math.sqrt(alpha)
    prefactor = (
        L * d_x * a0sq / (math.pi * d_y * math.sqrt(math.pi))
        * math.exp(-(d_x * k0x) ** 2 + gamma * gamma / (4.0 * alpha))
    )
    return {
        "L": L,
        "D": big_d,
        "alpha": alpha,
        "gamma": gamma,
        "ratio": ratio,
        "c_hat": c_hat,
        "Q": q_coef,
        "W": d_x * big_d * q_coef * k0x,
        "Y": d_x * d_x * k0x * q_coef,
        "P": math.sqrt(d_x * d_x + 0.5 * L * L),
        "prefactor": prefactor,
    }


def _u_matrix(packet: GaussianPacket, ctx: LandauContext, n_max: int) -> np.ndarray:
    """U_{m,n} for 0 <= m,n <= n_max by the scaled real recurrence.

    Z_{m,n} is the overlap integral with the oscillator normalization and
    the level-ratio factor absorbed; columns advance in n, vectorized over m:

      Z_{m,n+1} = -(c^ g/a)/sqrt(2(n+1)) Z_{m,n}
                  + (c^2/a) sqrt(m/(n+1)) Z_{m-1,n}
                  + (c^2/a - r) sqrt(n/(n+1)) Z_{m,n-1}
    """
    aux = _u_aux(packet, ctx)
    alpha, gamma = aux["alpha"], aux["gamma"]
    c_hat, ratio = aux["c_hat"], aux["ratio"]
    c1 = -c_hat * gamma / alpha
    c2 = c_hat * c_hat / alpha
    c3 = c2 - ratio
    m_idx = np.arange(n_max + 1, dtype=float)
    z = np.zeros((n_max + 1, n_max + 2))
    z[0, 0] = math.sqrt(math.pi / alpha)
    # column n = 0 first: advance m using the same recurrence transposed
    # (the overlap is symmetric in m, n; the ladder term drops since its
    # partner index is -1)
    for m in range(n_max):
        z[m + 1, 0] = c1 / math.sqrt(2.0 * (m + 1)) * z[m, 0] + (
            c3 * math.sqrt(m / (m + 1)) * z[m - 1, 0] if m >= 1 else 0.0
        )
    for n in range(n_max):
        shifted = np.zeros(n_max + 1)
        shifted[1:] = z[:-1, n]
        z[:, n + 1] = (
            c1 / math.sqrt(2.0 * (n + 1)) * z[:, n]
            + c2 * np.sqrt(m_idx / (n + 1)) * shifted
            + (c3 * math.sqrt(n / (n + 1)) * z[:, n - 1] if n >= 1 else 0.0)
        )
    return aux["prefactor"] * z[:, : n_max + 1]


@dataclass(frozen=True)
class UCoeffTable:
    """Level-expansion coefficients U_{m,n} of a Gaussian packet."""

    coefficients: np.ndarray
    packet: GaussianPacket
    ctx: LandauContext
    aux: dict

    @property
    def n_max(self) -> int:
        return self.coefficients.shape[0] - 1

    def entry(self, m: int, n: int) -> float:
        return float(self.coefficients[m, n])

    def diagonal_sum(self) -> float:
        return float(np.trace(self.coefficients))

    def ladder_sum(self) -> float:
        """sum_n sqrt(n+1) U_{n+1,n}."""
        sub = np.diagonal(self.coefficients, offset=-1)
        return float(np.sum(np.sqrt(np.arange(1, sub.size + 1)) * sub))

    def weight_deficit(self) -> float:
        return abs(1.0 - self.diagonal_sum())


def compute_u_table(
    packet: GaussianPacket,
    ctx: LandauContext,
    n_max: int = 200,
    auto_extend: bool = True,
    target: float = 1e-10,
    n_cap: int = 4000,
    entry_floor: float = 1e-14,
) -> UCoeffTable:
    """Coefficient table, extending n_max until sum U_{n,n} = 1 within target.

    The packet must be separable with k0y = 0. Entries below entry_floor
    (relative to the largest) are zeroed.
    """
    if packet.k0[1] != 0.0:
        raise DomainError("level expansion requires k0y = 0")
    n = n_max
    while True:
        u = _u_matrix(packet, ctx, n)
        deficit = abs(1.0 - float(np.trace(u)))
        if deficit <= target or not auto_extend or n >= n_cap:
            break
        n = min(n_cap, max(n + 1, int(n * 1.5)))
    if deficit > target:
        raise TruncationError(n, deficit)
    u[np.abs(u) < entry_floor * np.max(np.abs(u))] = 0.0
    return UCoeffTable(coefficients=u, packet=packet, ctx=ctx, aux=_u_aux(packet, ctx))


def u_entry_series(packet: GaussianPacket, ctx: LandauContext, m: int, n: int) -> float:
    """Printed finite-sum overlap formula (reference path, small m, n only).

    Evaluated in complex arithmetic (the c-coefficient is imaginary for
    d_y > L); asserts the imaginary part below 1e-10 before realifying.
    """
    aux = _u_aux(packet, ctx)
    L, d_y = aux["L"], packet.widths[1]
    d_x = packet.widths[0]
    k0x = packet.k0[0]
    ratio_c = complex((L * L - d_y * d_y) / (L * L + d_y * d_y))
    a_n = (
        math.sqrt(2.0 * math.pi) * d_y / math.sqrt(L * L + d_y * d_y)
        * ratio_c ** (n / 2.0)
    )
    a_m = (
        math.sqrt(2.0 * math.pi) * d_y / math.sqrt(L * L + d_y * d_y)
        * ratio_c ** (m / 2.0)
    ).conjugate()
    c_coef = L**3 / np.sqrt(complex(L**4 - d_y**4))
    q_coef, w_coef, y_coef = aux["Q"], aux["W"], aux["Y"]
    beta = 1.0 - (c_coef * q_coef) ** 2
    x_arg = -c_coef * q_coef * y_coef / np.sqrt(beta)
    log_c_mn = (
        0.5 * ((m + n) * math.log(2.0) + gammaln(m + 1) + gammaln(n + 1))
        + 0.5 * math.log(math.pi)
    )
    total = 0.0 + 0.0j
    for l in range(min(m, n) + 1):
        k = m + n - 2 * l
        coef = math.exp(
            l * math.log(2.0)
            + gammaln(l + 1)
            + (gammaln(m + 1) - gammaln(l + 1) - gammaln(m - l + 1))
            + (gammaln(n + 1) - gammaln(l + 1) - gammaln(n - l + 1))
        )
        total += coef * beta ** (k / 2.0) * _hermite_poly_complex(k, x_arg)
    # For d_y > L the c-coefficient is imaginary and conjugating the bra's
    # Hermite argument flips its parity; the printed finite sum omits this
    # factor, which would break the promised m <-> n symmetry. Restore it.
    sigma = (-1.0) ** m if d_y > L else 1.0
    value = sigma * (
        a_m * a_n * L * q_coef * d_x * math.sqrt(math.pi)
        * math.exp(-(w_coef**2))
        / (math.pi * math.exp(log_c_mn) * d_y)
    ) * total
    assert abs(value.imag) < 1e-10, f"nonreal overlap entry: {value!r}"
    return float(value.real)


def u_entry_special(packet: GaussianPacket, ctx: LandauContext, m: int, n: int) -> float:
    """Printed closed form for the d_y = L special case (reference path)."""
    aux = _u_aux(packet, ctx)
    L = aux["L"]
    d_x = packet.widths[0]
    k0x = packet.k0[0]
    p_coef = aux["P"]
    log_c_mn = (
        0.5 * ((m + n) * math.log(2.0) + gammaln(m + 1) + gammaln(n + 1))
        + 0.5 * math.log(math.pi)
    )
    value = (
        2.0 * math.sqrt(math.pi) * (-1j) ** (m + n) * d_x
        / (math.exp(log_c_mn) * L)
        * (L / (2.0 * p_coef)) ** (m + n + 1)
        * math.exp(-(d_x * k0x * L) ** 2 / (2.0 * p_coef**2))
        * _hermite_poly_complex(m + n, -1j * d_x * d_x * k0x / p_coef)
    )
    assert abs(value.imag) < 1e-10, f"nonreal overlap entry: {value!r}"
    return float(value.real)


def _hermite_poly_complex(k: int, x: complex) -> complex:
    """Raw Hermite polynomial H_k at complex argument (small k only)."""
    h_prev, h = 1.0 + 0.0j, 2.0 * x
    if k == 0:
        return h_prev
    for j in range(1, k):
        h_prev, h = h, 2.0 * x * h - 2.0 * j * h_prev
    return h


# ---------------------------------------------------------------------------
# Velocity series

def velocity_matrix_element(
    state_n: LandauState, state_m: LandauState, axis: str, ctx: LandauContext
) -> complex:
    """Velocity matrix element between Landau states, units c.

    Ladder selection: x and y couple m = n +- 1 only, z is diagonal. The
    overall sign of the x/y elements is fixed so that the raw double-sum
    assembly reproduces the closed velocity series and the non-relativistic
    v_x(0) = +hbar k0x / m.
    """
    if axis not in ("x", "y", "z"):
        raise DomainError(f"unknown axis {axis!r}")
    if state_n.k_x != state_m.k_x or state_n.k_z != state_m.k_z:
        return 0.0 + 0.0j
    n, m = state_n.n, state_m.n
    nu_n = state_n.nu(ctx)
    nu_m = state_m.nu(ctx)
    L = ctx.magnetic_length
    if axis == "z":
        if m != n:
            return 0.0 + 0.0j
        return complex(state_n.k_z * nu_n * nu_n)
    ladder = 0.0
    if m == n + 1:
        ladder = math.sqrt(n + 1)
    elif m == n - 1:
        ladder = math.sqrt(n) if axis == "x" else -math.sqrt(n)
    else:
        return 0.0 + 0.0j
    base = nu_n * nu_m * ladder / (SQRT2 * L)
    return complex(-base) if axis == "x" else base / 1j


def _kz_nodes(packet: GaussianPacket, spec: QuadratureSpec, n_nodes: int):
    """Fixed Gauss-Legendre nodes/weights on the Gaussian k_z window."""
    d_z = packet.widths[2]
    k0z = packet.k0[2]
    half = spec.window_sigmas / d_z
    x, w = np.polynomial.legendre.leggauss(n_nodes)
    nodes = k0z + half * x
    weights = half * w * np.asarray(gaussian_line_weight(packet, nodes))
    return nodes, weights


def _series_terms(table: UCoeffTable, spec: QuadratureSpec, n_nodes: int):
    """Per-level coefficients and k_z-resolved energies for the series."""
    u = table.coefficients
    n_max = table.n_max
    sub = np.diagonal(u, offset=-1)  # U_{n+1,n}
    sup = np.diagonal(u, offset=+1)  # U_{n,n+1}
    n_idx = np.arange(n_max)
    c_xy = np.sqrt(n_idx + 1.0) * (sub + sup)
    c_z = np.diagonal(u).copy()
    # drop levels with negligible weight to keep the trig sums short
    keep_xy = np.nonzero(np.abs(c_xy) > 1e-16 * max(np.max(np.abs(c_xy)), 1e-300))[0]
    keep_z = np.nonzero(np.abs(c_z) > 1e-16 * max(np.max(np.abs(c_z)), 1e-300))[0]
    nodes, weights = _kz_nodes(table.packet, spec, n_nodes)
    return c_xy, c_z, keep_xy, keep_z, nodes, weights


def velocity_components(
    packet: GaussianPacket,
    ctx: LandauContext,
    times,
    table: UCoeffTable | None = None,
    spec: QuadratureSpec = DEFAULT_SPEC,
    n_nodes: int = 200,
    tail_tolerance: float = 1e-6,
) -> np.ndarray:
    """(v_x, v_y, v_z)(t) for the packet, shape (3, ntimes), units c.

    Closed series over Landau levels: intraband terms at E_{n+1} - E_n
    (cyclotron) and interband terms at E_{n+1} + E_n (or 2 E_n for v_z, the
    ZB frequencies), each under the Gaussian k_z profile.
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if table is None:
        table = compute_u_table(packet, ctx)
    if table.weight_deficit() > tail_tolerance:
        raise TruncationError(table.n_max, table.weight_deficit())
    c_xy, c_z, keep_xy, keep_z, nodes, weights = _series_terms(table, spec, n_nodes)
    L = ctx.magnetic_length
    out = np.zeros((3, times.size))

    xy_active = packet.k0[0] != 0.0 and keep_xy.size > 0
    if xy_active:
        e_n = landau_energy(keep_xy[:, None], nodes[None, :], ctx)
        e_m = landau_energy(keep_xy[:, None] + 1, nodes[None, :], ctx)
        nu2_prod = 1.0 / (e_n * e_m)  # nu_n^2 nu_{n+1}^2
        nu2_sum = 1.0 / e_n + 1.0 / e_m
        diff, summ = e_m - e_n, e_m + e_n
        coeff = c_xy[keep_xy][:, None] * weights[None, :]
        pref = -1.0 / (2.0 * SQRT2 * L)
        for i, t in enumerate(times):
            cos_d, cos_s = np.cos(diff * t), np.cos(summ * t)
            sin_d, sin_s = np.sin(diff * t), np.sin(summ * t)
            out[0, i] = pref * np.sum(
                coeff * ((1.0 + nu2_prod) * cos_d + (1.0 - nu2_prod) * cos_s)
            )
            out[1, i] = pref * np.sum(
                coeff * (nu2_sum * sin_d + (1.0 / e_m - 1.0 / e_n) * sin_s)
            )

    if packet.k0[2] != 0.0 and keep_z.size > 0:
        e_n = landau_energy(keep_z[:, None], nodes[None, :], ctx)
        nu4 = 1.0 / (e_n * e_n)
        coeff = c_z[keep_z][:, None] * (nodes * weights)[None, :]
        for i, t in enumerate(times):
            out[2, i] = 0.5 * np.sum(
                coeff * ((1.0 + nu4) + (1.0 - nu4) * np.cos(2.0 * e_n * t))
            )
    return out


def velocity_x(packet, ctx, t, table=None, **kw) -> float:
    return float(velocity_components(packet, ctx, [t], table, **kw)[0, 0])


def velocity_y(packet, ctx, t, table=None, **kw) -> float:
    return float(velocity_components(packet, ctx, [t], table, **kw)[1, 0])


def velocity_z(packet, ctx, t, table=None, **kw) -> float:
    return float(velocity_components(packet, ctx, [t], table, **kw)[2, 0])


def nonrel_limit_velocity(
    packet: GaussianPacket, ctx: LandauContext, t
) -> tuple:
    """Cyclotron-orbit limit: (k0x cos(w_c t), k0x sin(w_c t), k0z), units c."""
    t = np.asarray(t, dtype=float)
    k0x, _, k0z = packet.k0
    wc = ctx.cyclotron_freq
    return (
        k0x * np.cos(wc * t),
        k0x * np.sin(wc * t),
        k0z * np.ones_like(t) if t.shape else k0z,
    )


def sum_rules(table: UCoeffTable, ctx: LandauContext) -> tuple[float, float]:
    """(s1, s2) = (sum sqrt(n+1) U_{n+1,n}, sum U_{n,n}).

    Expected: s1 = -k0x L / sqrt(2), s2 = 1.
    """
    return table.ladder_sum(), table.diagonal_sum()


def rebuild_velocity(
    packet: GaussianPacket,
    ctx: LandauContext,
    t: float,
    table: UCoeffTable,
    spec: QuadratureSpec = DEFAULT_SPEC,
    n_nodes: int = 200,
) -> tuple[float, float, float]:
    """Velocity assembled from the raw branch/level double sum.

    Independent route: explicit sum over (n, m, s, s') with expansion
    weights (mu^+_{n,s}/2) and single-state matrix elements, never using
    the trigonometric regrouping of the closed series. Small n_max only.
    """
    nodes, weights = _kz_nodes(packet, spec, n_nodes)
    n_max = table.n_max
    totals = np.zeros(3, dtype=complex)
    for n in range(n_max + 1):
        for m in range(n_max + 1):
            u_nm = table.entry(n, m)
            if u_nm == 0.0 or abs(n - m) > 1:
                continue
            e_n = landau_energy(n, nodes, ctx)
            e_m = landau_energy(m, nodes, ctx)
            nu_n, nu_m = 1.0 / np.sqrt(e_n), 1.0 / np.sqrt(e_m)
            for axis_i, axis in enumerate(("x", "y", "z")):
                elem = np.zeros(nodes.size, dtype=complex)
                if axis == "z" and m == n:
                    elem = (nodes * nu_n * nu_n).astype(complex)
                elif axis in ("x", "y") and abs(m - n) == 1:
                    ladder = math.sqrt(max(n, m))
                    if axis == "y" and m == n - 1:
                        ladder = -ladder
                    base = nu_n * nu_m * ladder / (SQRT2 * ctx.magnetic_length)
                    elem = (-base).astype(complex) if axis == "x" else base / 1j
                else:
                    continue
                for s in (+1, -1):
                    for sp in (+1, -1):
                        mu_n = 0.5 * (nu_n + s / nu_n)
                        mu_m = 0.5 * (nu_m + sp / nu_m)
                        phase = np.exp(1j * (s * e_n - sp * e_m) * t)
                        totals[axis_i] += s * sp * u_nm * np.sum(
                            weights * mu_n * mu_m * phase * elem
                        )
    assert np.max(np.abs(totals.imag)) < 1e-10
    return tuple(float(v) for v in totals.real)
