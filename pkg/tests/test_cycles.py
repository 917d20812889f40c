import math
from dataclasses import replace

import numpy as np
import pytest

from ncengine.cycles import (
    OttoSpec,
    StirlingSpec,
    carnot_efficiency,
    otto_cycle,
    stirling_cycle,
)
from ncengine.errors import InvalidParameter, NegativeModeFrequency, ZeroHeatInput
from ncengine.spectra import SpaceConfig
from ncengine.thermo import BathPair, Mode

from .oracles import (
    CLASSICAL_STIRLING_LIMIT,
    classical_stirling_efficiency,
    otto_by_level_sums,
    stirling_by_level_sums,
)

COMM = SpaceConfig.commutative()

# frozen from otto_by_level_sums at 40 digits (tests/oracles.py)
OTTO_NC_THETA2_EFFICIENCY = 0.25132413784889774


class TestOtto:
    @pytest.mark.parametrize("zeta", np.linspace(0, 5, 11))
    @pytest.mark.parametrize("mode", list(Mode))
    def test_commutative_cancellation(self, zeta, mode):
        r = otto_cycle(OttoSpec(COMM, 4.0, 3.0, zeta=zeta, mode=mode))
        assert r.efficiency == pytest.approx(0.25, abs=1e-12)

    def test_nc_theta_zero(self):
        r = otto_cycle(OttoSpec(SpaceConfig.nc(0.0)))
        assert r.efficiency == pytest.approx(0.25, abs=1e-12)

    def test_gnc_undeformed(self):
        r = otto_cycle(OttoSpec(SpaceConfig.gnc(0.0, 0.0), zeta=2.0, K=0.25))
        assert r.efficiency == pytest.approx(0.25, abs=1e-12)

    def test_nc_theta_two_golden(self):
        r = otto_cycle(OttoSpec(SpaceConfig.nc(2.0)))
        assert r.efficiency == pytest.approx(OTTO_NC_THETA2_EFFICIENCY, rel=1e-12)

    def test_against_level_sum_oracle(self):
        for space in (COMM, SpaceConfig.nc(1.3), SpaceConfig.gnc(0.4, -0.3)):
            spec = OttoSpec(space, 4.0, 3.0, zeta=0.8, K=0.25)
            r = otto_cycle(spec)
            q, w = otto_by_level_sums(spec)
            assert r.heat_in == pytest.approx(q, rel=1e-12)
            assert r.work == pytest.approx(w, rel=1e-12)

    def test_ledger_closes(self):
        for mode in Mode:
            r = otto_cycle(OttoSpec(SpaceConfig.nc(1.0), mode=mode))
            led = r.ledger
            assert led.q_hot + led.q_cold == pytest.approx(r.work, rel=1e-12)
            assert led.w1 + led.w2 == pytest.approx(r.work, rel=1e-10)

    def test_gnc_efficiency_is_deformation_invariant(self):
        # both GNC modes scale linearly with omega, so W/Q = 1 - omega_c/omega_h
        for g, x in [(0.5, -0.7), (-0.9, 0.9), (0.2, 0.95)]:
            r = otto_cycle(OttoSpec(SpaceConfig.gnc(g, x)))
            assert r.efficiency == pytest.approx(0.25, abs=1e-12)

    def test_negative_mode(self):
        with pytest.raises(NegativeModeFrequency):
            otto_cycle(OttoSpec(SpaceConfig.nc(30.0)))

    def test_zero_heat(self):
        # hot stroke that is colder in occupation than the cold stroke
        spec = OttoSpec(COMM, 4.0, 3.0, baths=BathPair(1.01, 1.0), zeta=0.0)
        with pytest.raises(ZeroHeatInput) as info:
            otto_cycle(spec)
        assert math.isnan(info.value.result.efficiency)
        assert info.value.result.ledger.q_hot <= 0

    def test_frequency_order(self):
        with pytest.raises(InvalidParameter):
            OttoSpec(COMM, 3.0, 4.0)


class TestStirlingExact:
    def test_degenerate_cycle(self):
        r = stirling_cycle(StirlingSpec(COMM, 3.0, 3.0, zeta=0.0))
        led = r.ledger
        assert led.q_AB == 0.0 and led.q_CD == 0.0
        assert r.heat_in == pytest.approx(led.q_DA) and led.q_DA > 0
        assert r.work == pytest.approx(0.0, abs=1e-14)
        assert r.efficiency == pytest.approx(0.0, abs=1e-14)

    @pytest.mark.parametrize("space", [COMM, SpaceConfig.nc(1.5), SpaceConfig.gnc(0.3, 0.6)])
    def test_against_level_sum_oracle(self, space):
        spec = StirlingSpec(space, 4.0, 2.0, zeta=1.1, K=0.25)
        r = stirling_cycle(spec)
        ref = stirling_by_level_sums(spec)
        for key in ("q_AB", "q_BC", "q_CD", "q_DA"):
            assert getattr(r.ledger, key) == pytest.approx(ref[key], rel=1e-10, abs=1e-12)

    def test_signs(self):
        led = stirling_cycle(StirlingSpec()).ledger
        assert led.q_AB > 0 and led.q_DA > 0
        assert led.q_BC < 0 and led.q_CD < 0

    def test_classical_limit(self):
        r = stirling_cycle(StirlingSpec(COMM, 4.0, 2.0, zeta=5.0))
        assert classical_stirling_efficiency(2.0, 1.0, 4.0, 2.0) == pytest.approx(
            CLASSICAL_STIRLING_LIMIT, rel=1e-15)
        assert abs(r.efficiency - CLASSICAL_STIRLING_LIMIT) < 0.02

    def test_nc_rises_with_theta(self):
        effs = [stirling_cycle(StirlingSpec(SpaceConfig.nc(t))).efficiency
                for t in np.linspace(0.04, 2, 50)]
        assert np.all(np.diff(effs) > 0)
        assert max(effs) < 0.5

    def test_below_carnot_everywhere(self):
        for z in np.linspace(0, 5, 26):
            r = stirling_cycle(StirlingSpec(zeta=z))
            assert r.efficiency < r.carnot == 0.5
            assert not r.anomalies


class TestStirlingPaper:
    def test_commutative_undefined_at_defaults(self):
        # closed-form Q_AB reduces to -2 T_h ln(omega_A/omega_B)
        with pytest.raises(ZeroHeatInput) as info:
            stirling_cycle(StirlingSpec(mode=Mode.PAPER))
        led = info.value.result.ledger
        assert led.q_AB == pytest.approx(-4 * math.log(2), rel=1e-14)
        assert led.q_CD == pytest.approx(-2 * math.log(2), rel=1e-14)
        assert led.q_BC == pytest.approx(-2.0, rel=1e-14)
        assert led.q_DA == pytest.approx(2.0, rel=1e-14)

    def test_closed_form_q_ab_is_negative_of_exact(self):
        # in the classical (high-T) limit the exact isothermal heat is +2 T ln(wA/wB)
        spec = StirlingSpec(COMM, 4.0, 2.0, baths=BathPair(400.0, 200.0), zeta=0.0)
        exact = stirling_cycle(spec).ledger.q_AB
        with pytest.raises(ZeroHeatInput) as info:
            stirling_cycle(replace(spec, mode=Mode.PAPER))
        assert info.value.result.ledger.q_AB == pytest.approx(-exact, rel=1e-3)

    def test_defined_efficiency_when_denominator_positive(self):
        # Q_DA + Q_AB = 2(T_h - T_c) - 2 T_h ln(wA/wB) > 0 for a small frequency ratio
        spec = StirlingSpec(COMM, 2.2, 2.0, mode=Mode.PAPER)
        r = stirling_cycle(spec)
        led = r.ledger
        assert r.efficiency == pytest.approx(1 + (led.q_BC + led.q_CD) / (led.q_DA + led.q_AB))

    def test_nc_theta_independent(self):
        def ledger(theta):
            try:
                return stirling_cycle(StirlingSpec(SpaceConfig.nc(theta), mode=Mode.PAPER)).ledger
            except ZeroHeatInput as exc:
                return exc.result.ledger
        a, b = ledger(0.5), ledger(1.7)
        for key in ("q_AB", "q_BC", "q_CD", "q_DA", "w_total"):
            assert getattr(a, key) == pytest.approx(getattr(b, key), rel=1e-13)


def test_carnot():
    assert carnot_efficiency(BathPair(2, 1)) == 0.5
    assert carnot_efficiency(BathPair(4, 1)) == 0.75
    assert carnot_efficiency(BathPair(1 + 1e-12, 1)) == pytest.approx(0, abs=1e-11)
