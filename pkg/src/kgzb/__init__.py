"""Numerical laboratory for the Zitterbewegung of spin-zero Klein-Gordon particles.

Internal unit system: c = lambda_c = omega_0 = 1 (lengths in Compton
wavelengths, times in t_c = hbar/mc^2, velocities in c). SI appears only in
the `core` conversions and in `string_sim`.
"""

from kgzb.core import GaussianPacket, PhysicalScale, Trace, scale_from_mass

__version__ = "0.1.0"

__all__ = [
    "GaussianPacket",
    "PhysicalScale",
    "Trace",
    "scale_from_mass",
    "__version__",
]
