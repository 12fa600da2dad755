"""Physical scales, wave-packet definitions and shared numeric conventions.

Everything downstream works in natural units (c = lambda_c = omega_0 = 1);
this module owns the conversion to and from SI.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from jsonschema import Draft202012Validator
from scipy import constants as const


class DomainError(ValueError):
    """Input outside the physically meaningful domain."""


# hbar/(m_e c^2) and the field at which hbar*omega_c = m_e c^2, for an electron.
_ELECTRON_TC = const.hbar / (const.m_e * const.c**2)
_ELECTRON_COMPTON = const.hbar / (const.m_e * const.c)
_ELECTRON_SCHWINGER = (const.m_e * const.c) ** 2 / (const.hbar * const.e)


@dataclass(frozen=True)
class PhysicalScale:
    """Particle mass and the derived natural units.

    mass_ratio is the particle mass in electron masses; the other fields are
    SI values of the Compton wavelength, the characteristic ZB time
    t_c = hbar/mc^2, its inverse angular frequency and the effective
    Schwinger field.
    """

    mass_ratio: float
    compton_length: float
    zb_time: float
    zb_angular_freq: float
    schwinger_field: float

    def __post_init__(self):
        if self.mass_ratio <= 0:
            raise DomainError(f"mass_ratio must be positive, got {self.mass_ratio}")

    def length_to_si(self, x: float) -> float:
        return x * self.compton_length

    def length_from_si(self, x: float) -> float:
        return x / self.compton_length

    def time_to_si(self, t: float) -> float:
        return t * self.zb_time

    def time_from_si(self, t: float) -> float:
        return t / self.zb_time

    def field_to_si(self, b_ratio: float) -> float:
        return b_ratio * self.schwinger_field

    def field_from_si(self, b: float) -> float:
        return b / self.schwinger_field


def scale_from_mass(mass_ratio: float) -> PhysicalScale:
    """Derive all natural scales from the particle mass in electron masses."""
    if mass_ratio <= 0:
        raise DomainError(f"mass_ratio must be positive, got {mass_ratio}")
    return PhysicalScale(
        mass_ratio=mass_ratio,
        compton_length=_ELECTRON_COMPTON / mass_ratio,
        zb_time=_ELECTRON_TC / mass_ratio,
        zb_angular_freq=mass_ratio / _ELECTRON_TC,
        schwinger_field=_ELECTRON_SCHWINGER * mass_ratio**2,
    )


@dataclass(frozen=True)
class GaussianPacket:
    """Gaussian wave packet in natural units.

    widths: (d_x, d_y, d_z) in lambda_c; k0: central wave vector in
    1/lambda_c. With ``truncated`` the momentum components beyond
    |k| = 1/lambda_c are removed (step-function cutoff) and packet averages
    renormalize accordingly.
    """

    widths: tuple[float, float, float]
    k0: tuple[float, float, float]
    truncated: bool = False

    def __post_init__(self):
        if any(d <= 0 for d in self.widths):
            raise DomainError(f"widths must be positive, got {self.widths}")

    @classmethod
    def isotropic(cls, d: float, k0z: float = 0.0, truncated: bool = False) -> "GaussianPacket":
        return cls(widths=(d, d, d), k0=(0.0, 0.0, k0z), truncated=truncated)

    @property
    def is_isotropic(self) -> bool:
        dx, dy, dz = self.widths
        return np.isclose(dx, dy) and np.isclose(dy, dz)

    @property
    def d(self) -> float:
        if not self.is_isotropic:
            raise DomainError("scalar width requested for an anisotropic packet")
        return self.widths[0]

    def momentum_amplitude(self, k) -> np.ndarray | float:
        """Momentum-space amplitude, product of per-axis 1D Gaussians.

        Isotropic case reduces to (2 d sqrt(pi))^{3/2} exp(-d^2 (k-k0)^2 / 2).
        Truncated packets are zero beyond |k| = 1 (lambda_c units).
        """
        k = np.asarray(k, dtype=float)
        d = np.asarray(self.widths)
        k0 = np.asarray(self.k0)
        amp = np.prod((2.0 * d * np.sqrt(np.pi)) ** 0.5) * np.exp(
            -0.5 * np.sum(d**2 * (k - k0) ** 2, axis=-1)
        )
        if self.truncated:
            amp = np.where(np.sqrt(np.sum(k**2, axis=-1)) <= 1.0, amp, 0.0)
        return amp if amp.ndim else float(amp)

    def real_space_amplitude(self, r) -> np.ndarray | complex:
        """Real-space form, unit L2 norm: Fourier partner of momentum_amplitude."""
        r = np.asarray(r, dtype=float)
        d = np.asarray(self.widths)
        k0 = np.asarray(self.k0)
        norm = np.prod(d * np.sqrt(np.pi)) ** -0.5
        val = norm * np.exp(
            -np.sum(r**2 / (2.0 * d**2), axis=-1) + 1j * np.sum(k0 * r, axis=-1)
        )
        return val if val.ndim else complex(val)


@dataclass
class TwoComponentState:
    """Two-component Feshbach-Villars state on a grid or basis."""

    upper: np.ndarray
    lower: np.ndarray

    def pseudo_norm(self, weight: float = 1.0) -> float:
        """tau_3 pseudo-norm <Psi|tau_3|Psi>, conserved under evolution."""
        return float(
            weight * np.sum(np.abs(self.upper) ** 2 - np.abs(self.lower) ** 2)
        )


@dataclass
class Trace:
    """Time series of packet-averaged observables, serializable to CSV."""

    times: np.ndarray
    values: np.ndarray
    label: str = ""
    columns: tuple[str, ...] = ("value",)
    header: dict = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.values = np.atleast_2d(np.asarray(self.values, dtype=float))
        if self.values.shape[0] == self.times.size and self.values.ndim == 2:
            pass
        if self.values.shape[-1] != self.times.size:
            raise ValueError("values and times length mismatch")

    def write_csv(self, path: str | Path, time_column: str = "t") -> None:
        path = Path(path)
        with path.open("w", newline="") as fh:
            for key, val in self.header.items():
                fh.write(f"# {key}: {val}\n")
            fh.write(",".join([time_column, *self.columns]) + "\n")
            for i, t in enumerate(self.times):
                row = [format_number(t)] + [
                    format_number(v) for v in self.values[:, i]
                ]
                fh.write(",".join(row) + "\n")


def format_number(x: float) -> str:
    """Fixed 17-significant-digit formatting for reproducible CSV output."""
    return f"{x:.17g}"


_CONFIG_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "mass_ratio": {"type": "number", "exclusiveMinimum": 0},
        "widths": {
            "type": "array",
            "items": {"type": "number", "exclusiveMinimum": 0},
            "minItems": 3,
            "maxItems": 3,
        },
        "k0": {
            "type": "array",
            "items": {"type": "number"},
            "minItems": 3,
            "maxItems": 3,
        },
        "truncated": {"type": "boolean"},
        "time": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "start": {"type": "number"},
                "stop": {"type": "number"},
                "num": {"type": "integer", "minimum": 2},
            },
        },
        "quadrature": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "rel_tol": {"type": "number", "exclusiveMinimum": 0},
                "abs_tol": {"type": "number", "exclusiveMinimum": 0},
                "max_subdivisions": {"type": "integer", "minimum": 1},
                "window_sigmas": {"type": "number", "minimum": 6},
            },
        },
        "magnetic": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "b_ratio": {"type": "number", "exclusiveMinimum": 0},
                "charge_sign": {"enum": [1, -1]},
                "n_max": {"type": "integer", "minimum": 1},
            },
        },
        "string": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "linear_density": {"type": "number", "exclusiveMinimum": 0},
                "elastic_constant": {"type": "number", "exclusiveMinimum": 0},
                "tension": {"type": "number", "exclusiveMinimum": 0},
                "d": {"type": "number", "exclusiveMinimum": 0},
            },
        },
    },
}

_validator = Draft202012Validator(_CONFIG_SCHEMA)


class ConfigError(ValueError):
    """Malformed or unknown-key run configuration."""


def validate_config(cfg: dict) -> dict:
    """Validate a run configuration dict; unknown keys are rejected."""
    errors = sorted(_validator.iter_errors(cfg), key=lambda e: str(e.path))
    if errors:
        msgs = "; ".join(e.message for e in errors)
        raise ConfigError(f"invalid configuration: {msgs}")
    return cfg


def load_config(path: str | Path) -> dict:
    with Path(path).open() as fh:
        return validate_config(json.load(fh))
