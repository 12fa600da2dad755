import json

import numpy as np
import pytest
from scipy.integrate import quad

from kgzb.core import (
    ConfigError,
    DomainError,
    GaussianPacket,
    TwoComponentState,
    load_config,
    scale_from_mass,
    validate_config,
)


class TestScaleFromMass:
    def test_electron_zb_time(self):
        # t_c = 1.29e-21 s for the electron mass
        scale = scale_from_mass(1.0)
        assert scale.zb_time == pytest.approx(1.29e-21, rel=1e-2)

    def test_pion_schwinger_field(self):
        # B_s = 3.29e14 T for m = 273.1 m_e
        scale = scale_from_mass(273.1)
        assert scale.schwinger_field == pytest.approx(3.29e14, rel=5e-3)

    def test_omega_times_tc_is_one(self):
        scale = scale_from_mass(1.0)
        assert scale.zb_angular_freq * scale.zb_time == pytest.approx(1.0, abs=1e-15)

    def test_schwinger_scaling(self):
        s1 = scale_from_mass(1.0)
        s2 = scale_from_mass(2.0)
        assert s2.schwinger_field == pytest.approx(4.0 * s1.schwinger_field, rel=1e-12)
        assert s1.schwinger_field == pytest.approx(4.41e9, rel=1e-2)

    def test_nonpositive_mass_rejected(self):
        with pytest.raises(DomainError):
            scale_from_mass(0.0)
        with pytest.raises(DomainError):
            scale_from_mass(-1.0)

    def test_si_round_trip(self):
        scale = scale_from_mass(273.1)
        for x in (1.0, 3.7, 1e-4):
            assert scale.time_from_si(scale.time_to_si(x)) == pytest.approx(x, rel=1e-12)
            assert scale.length_from_si(scale.length_to_si(x)) == pytest.approx(x, rel=1e-12)
            assert scale.field_from_si(scale.field_to_si(x)) == pytest.approx(x, rel=1e-12)


class TestGaussianPacket:
    def test_peak_amplitude(self):
        p = GaussianPacket.isotropic(2.0, k0z=0.8)
        expected = (2 * 2.0 * np.sqrt(np.pi)) ** 1.5
        assert p.momentum_amplitude([0.0, 0.0, 0.8]) == pytest.approx(expected)

    def test_one_sigma_falloff(self):
        d = 2.0
        p = GaussianPacket.isotropic(d, k0z=0.8)
        peak = p.momentum_amplitude([0.0, 0.0, 0.8])
        val = p.momentum_amplitude([0.0, 0.0, 0.8 + 1.0 / d])
        assert val == pytest.approx(peak * np.exp(-0.5))

    def test_truncated_zero_beyond_cutoff(self):
        p = GaussianPacket.isotropic(2.0, k0z=0.8, truncated=True)
        assert p.momentum_amplitude([0.0, 0.0, 1.2]) == 0.0
        assert p.momentum_amplitude([0.0, 0.0, 0.99]) > 0.0

    def test_nonpositive_width_rejected(self):
        with pytest.raises(DomainError):
            GaussianPacket(widths=(1.0, -1.0, 1.0), k0=(0, 0, 0))

    def test_fourier_round_trip_1d(self):
        # per-axis check of the real-space <-> momentum-space pair:
        # int w(z) e^{-i k z} dz must recover the 1D momentum factor
        d, k0 = 1.5, 0.6
        p = GaussianPacket.isotropic(d, k0z=k0)

        def w_z(z):
            # 1D marginal of the separable real-space form
            return (d * np.sqrt(np.pi)) ** -0.5 * np.exp(
                -(z**2) / (2 * d**2) + 1j * k0 * z
            )

        for k in (0.0, 0.3, 0.6, 1.1):
            re = quad(lambda z: (w_z(z) * np.exp(-1j * k * z)).real, -30, 30, limit=200)[0]
            im = quad(lambda z: (w_z(z) * np.exp(-1j * k * z)).imag, -30, 30, limit=200)[0]
            expected = (2 * d * np.sqrt(np.pi)) ** 0.5 * np.exp(-(d**2) * (k - k0) ** 2 / 2)
            assert re == pytest.approx(expected, abs=1e-10)
            assert im == pytest.approx(0.0, abs=1e-10)

    def test_anisotropic_amplitude(self):
        p = GaussianPacket(widths=(1.0, 2.0, 3.0), k0=(0.5, 0.0, 0.1))
        k = np.array([0.7, 0.1, 0.0])
        expected = np.prod([(2 * d * np.sqrt(np.pi)) ** 0.5 for d in (1, 2, 3)]) * np.exp(
            -0.5 * (1 * (0.7 - 0.5) ** 2 + 4 * 0.1**2 + 9 * 0.1**2)
        )
        assert p.momentum_amplitude(k) == pytest.approx(expected, rel=1e-12)


class TestTwoComponentState:
    def test_pseudo_norm_sign(self):
        st = TwoComponentState(upper=np.array([1.0, 1.0]), lower=np.array([0.5, 0.0]))
        assert st.pseudo_norm() == pytest.approx(2.0 - 0.25)


class TestConfig:
    def test_valid_config(self, tmp_path):
        cfg = {"mass_ratio": 273.1, "widths": [2, 2, 2], "k0": [0, 0, 0.8]}
        path = tmp_path / "run.json"
        path.write_text(json.dumps(cfg))
        assert load_config(path) == cfg

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError):
            validate_config({"mass_ratio": 1.0, "wdiths": [1, 1, 1]})

    def test_nested_unknown_key_rejected(self):
        with pytest.raises(ConfigError):
            validate_config({"quadrature": {"reltol": 1e-8}})

    def test_bad_value_rejected(self):
        with pytest.raises(ConfigError):
            validate_config({"mass_ratio": -1.0})
