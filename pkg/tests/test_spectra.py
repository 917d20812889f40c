import math

import pytest

from ncengine.errors import DegenerateCoupling, InvalidParameter, NegativeModeFrequency
from ncengine.spectra import (
    ModeSpectrum,
    RawCoupling,
    ReducedParams,
    SpaceConfig,
    effective_mass,
    energy_level,
    gnc_derived,
    mode_spectrum,
    nc_effective_frequency,
    normal_mode_reduce,
)


class TestNormalModeReduce:
    def test_uncoupled_symmetric(self):
        p = normal_mode_reduce(RawCoupling(1, 1, 1, 1, 0))
        assert (p.m, p.K, p.zeta) == (1.0, 1.0, 0.0)

    def test_unit_coupling(self):
        # e^zeta = 3 / (2K) = sqrt(3)
        p = normal_mode_reduce(RawCoupling(1, 1, 1, 1, 1))
        assert p.m == 1.0
        assert p.K == pytest.approx(0.8660254037844386, rel=1e-15)
        assert p.zeta == pytest.approx(0.5493061443340548, rel=1e-15)

    def test_degenerate(self):
        with pytest.raises(DegenerateCoupling):
            normal_mode_reduce(RawCoupling(1, 1, 1, 1, 2))

    def test_unequal_masses_rescale(self):
        raw = RawCoupling(4.0, 1.0, 2.0, 3.0, 0.5)
        c1, c2, c3 = raw.rescaled
        assert c1 == pytest.approx(2.0 * math.sqrt(1 / 4))
        assert c2 == pytest.approx(3.0 * math.sqrt(4 / 1))
        p = normal_mode_reduce(raw)
        assert p.m == pytest.approx(2.0)
        assert p.K == pytest.approx(math.sqrt(c1 * c2 - c3 ** 2 / 4))

    def test_bad_mass(self):
        with pytest.raises(InvalidParameter):
            RawCoupling(0, 1, 1, 1, 0)


class TestEffectiveMass:
    @pytest.mark.parametrize("m, omega, theta, expected", [
        (1, 4, 0, 1.0),
        (1, 4, 0.5, 0.5),
        (1, 1, 2, 0.5),
    ])
    def test_values(self, m, omega, theta, expected):
        assert effective_mass(m, omega, theta) == pytest.approx(expected, rel=1e-15)

    def test_never_exceeds_mass(self):
        assert effective_mass(2.0, 3.0, 0.1) < 2.0

    def test_rejects_negative_theta(self):
        with pytest.raises(InvalidParameter):
            effective_mass(1, 1, -0.1)

    def test_reporting_frequency(self):
        # Omega = sqrt(K/M) with M = m at theta = 0
        assert nc_effective_frequency(ReducedParams(4.0, 2.0, 0.25), 0.0) == pytest.approx(0.5)


class TestModeSpectrum:
    def test_commutative_unit(self):
        s = mode_spectrum(SpaceConfig.commutative(), ReducedParams(1.0, 0.0))
        assert (s.f1, s.f2, s.e0) == (1.0, 1.0, 1.0)

    def test_nc_theta_zero(self):
        s = mode_spectrum(SpaceConfig.nc(0.0), ReducedParams(4.0, 2.0, 0.25))
        assert (s.f1, s.f2, s.e0) == (4.0, 4.0, 4.0)

    def test_nc_theta_two(self):
        s = mode_spectrum(SpaceConfig.nc(2.0), ReducedParams(4.0, 2.0, 0.25))
        assert (s.f1, s.f2, s.e0) == (4.25, 3.75, 4.0)

    def test_gnc_reduces_to_commutative(self):
        s = mode_spectrum(SpaceConfig.gnc(0.0, 0.0), ReducedParams(4.0, 2.0, 0.25, 1.0))
        assert s.f1 == pytest.approx(4 * math.exp(2), rel=1e-14)
        assert s.f2 == pytest.approx(4 * math.exp(-2), rel=1e-14)
        assert s.e0 == pytest.approx(4 * math.cosh(2), rel=1e-14)

    def test_gnc_finite_at_zero_coupling(self):
        s = mode_spectrum(SpaceConfig.gnc(0.3, 0.2), ReducedParams(1.0, 0.0, 0.5, 1.0))
        # P2 = sqrt(0 + (Km gamma + xi)^2 / Km) = |0.35| / sqrt(0.5)
        p2 = 0.35 / math.sqrt(0.5)
        sym = math.sqrt(4 + (0.15 - 0.2) ** 2 / 0.5)
        assert s.f1 == pytest.approx(0.5 * (sym + p2), rel=1e-14)
        assert s.f2 == pytest.approx(0.5 * (sym - p2), rel=1e-14)

    def test_gnc_matches_delta_form_away_from_zero(self):
        params = ReducedParams(3.0, 0.7, 0.4, 1.3)
        gamma, xi = 0.6, -0.25
        d = gnc_derived(params, gamma, xi)
        ch, sh = 2 * math.cosh(0.7), 2 * math.sinh(0.7)
        f1 = 1.5 * (ch * math.sqrt(1 + d.delta1) + sh * math.sqrt(1 + d.delta2))
        f2 = 1.5 * (ch * math.sqrt(1 + d.delta1) - sh * math.sqrt(1 + d.delta2))
        s = mode_spectrum(SpaceConfig.gnc(gamma, xi), params)
        assert s.f1 == pytest.approx(f1, rel=1e-13)
        assert s.f2 == pytest.approx(f2, rel=1e-13)
        assert s.e0 == pytest.approx(1.5 * ch * math.sqrt(1 + d.delta1), rel=1e-13)

    def test_gnc_lambda_product_form(self):
        d = gnc_derived(ReducedParams(1.0, 0.0, 0.5, 1.0), 0.3, 0.2)
        assert math.isinf(d.delta2)
        assert math.isfinite(d.lambda2)
        assert d.delta1 >= 0

    def test_nc_soft_mode_collapse(self):
        with pytest.raises(NegativeModeFrequency):
            mode_spectrum(SpaceConfig.nc(40.0), ReducedParams(4.0, 2.0, 0.25))

    def test_gnc_soft_mode_collapse(self):
        # f1 f2 = omega^2 (1 - gamma xi) at K m = 0.25 ... vanishes at gamma xi = 1
        with pytest.raises(NegativeModeFrequency):
            mode_spectrum(SpaceConfig.gnc(1.0, 1.0), ReducedParams(4.0, 2.0, 0.25))

    def test_ordering_normalized(self):
        s = ModeSpectrum(1.0, 3.0, 0.0)
        assert (s.f1, s.f2) == (3.0, 1.0)
        s = mode_spectrum(SpaceConfig.commutative(), ReducedParams(2.0, -1.0))
        assert s.f1 >= s.f2

    def test_space_config_guards(self):
        with pytest.raises(InvalidParameter):
            SpaceConfig("comm", theta=1.0)
        with pytest.raises(InvalidParameter):
            SpaceConfig.nc(-1.0)
        with pytest.raises(ValueError):
            SpaceConfig("bogus")


class TestEnergyLevel:
    def test_ground(self):
        assert energy_level(ModeSpectrum(1, 1, 1), 0, 0) == 1

    def test_commutative_ln2(self):
        s = mode_spectrum(SpaceConfig.commutative(), ReducedParams(1.0, math.log(2)))
        assert (s.f1, s.f2) == pytest.approx((2.0, 0.5))
        assert s.e0 == pytest.approx(1.25)
        assert energy_level(s, 1, 0) == pytest.approx(3.25, rel=1e-15)

    def test_direct_sum(self):
        assert energy_level(ModeSpectrum(4.25, 3.75, 4.0), 1, 1) == 12.0

    def test_negative_occupation(self):
        with pytest.raises(InvalidParameter):
            energy_level(ModeSpectrum(1, 1, 1), -1, 0)
