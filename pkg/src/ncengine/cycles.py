"""Quantum Otto and Stirling cycles with the two-mode medium.

Heats are signed from the medium's point of view: positive means absorbed.

Otto strokes pair the hot- and cold-stroke mode frequencies by sorted index
(hard mode with hard mode). Stirling states are labelled

    A = (omega_A, T_hot)   B = (omega_B, T_hot)
    C = (omega_B, T_cold)  D = (omega_A, T_cold)

with A->B and C->D isothermal and B->C, D->A isochoric.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from .errors import InvalidParameter, ZeroHeatInput
from .spectra import ReducedParams, SpaceConfig, mode_spectrum
from .thermo import BathPair, Mode, PartitionModel, bose_occupation

__all__ = [
    "OttoSpec",
    "StirlingSpec",
    "OttoLedger",
    "StrokeLedger",
    "CycleResult",
    "otto_cycle",
    "stirling_cycle",
    "carnot_efficiency",
]

# slack before an efficiency above 1 - Tc/Th is called a Carnot violation
CARNOT_SLACK = 1e-12


@dataclass(frozen=True)
class OttoSpec:
    space: SpaceConfig = field(default_factory=SpaceConfig)
    omega_hot: float = 4.0
    omega_cold: float = 3.0
    baths: BathPair = field(default_factory=lambda: BathPair(2.0, 1.0))
    zeta: float = 2.0
    K: float = 0.25
    m: float = 1.0
    mode: Mode = Mode.PAPER

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if not self.omega_hot > self.omega_cold > 0:
            raise InvalidParameter(
                f"Otto needs omega_hot > omega_cold > 0, got {self.omega_hot}, {self.omega_cold}"
            )

    def params(self, omega: float) -> ReducedParams:
        return ReducedParams(omega=omega, zeta=self.zeta, K=self.K, m=self.m)


@dataclass(frozen=True)
class StirlingSpec:
    space: SpaceConfig = field(default_factory=SpaceConfig)
    omega_A: float = 4.0
    omega_B: float = 2.0
    baths: BathPair = field(default_factory=lambda: BathPair(2.0, 1.0))
    zeta: float = 2.0
    K: float = 0.25
    m: float = 1.0
    mode: Mode = Mode.EXACT

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        # equality allowed: the degenerate cycle is a useful zero-work check
        if not self.omega_A >= self.omega_B > 0:
            raise InvalidParameter(
                f"Stirling needs omega_A >= omega_B > 0, got {self.omega_A}, {self.omega_B}"
            )

    def params(self, omega: float) -> ReducedParams:
        return ReducedParams(omega=omega, zeta=self.zeta, K=self.K, m=self.m)


@dataclass(frozen=True)
class OttoLedger:
    q_hot: float
    q_cold: float
    w1: float
    w2: float


@dataclass(frozen=True)
class StrokeLedger:
    q_AB: float
    q_BC: float
    q_CD: float
    q_DA: float
    w_total: float


@dataclass(frozen=True)
class CycleResult:
    engine: str
    mode: Mode
    space: SpaceConfig
    work: float
    heat_in: float
    efficiency: float
    ledger: OttoLedger | StrokeLedger
    carnot: float
    anomalies: tuple[str, ...] = ()

    @property
    def defined(self) -> bool:
        return not math.isnan(self.efficiency)

    def as_dict(self) -> dict:
        out = {
            "engine": self.engine,
            "mode": self.mode.value,
            **self.space.as_dict(),
            "work": self.work,
            "heat_in": self.heat_in,
            "efficiency": self.efficiency,
            "carnot": self.carnot,
        }
        out.update(asdict(self.ledger))
        out["anomalies"] = list(self.anomalies)
        return out


def carnot_efficiency(baths: BathPair) -> float:
    return 1.0 - baths.t_cold / baths.t_hot


def _finish(engine, spec, work, heat_in, ledger):
    carnot = carnot_efficiency(spec.baths)
    if heat_in > 0:
        efficiency = work / heat_in
        anomalies = ()
        if efficiency > carnot + CARNOT_SLACK:
            anomalies = (f"efficiency {efficiency!r} exceeds Carnot bound {carnot!r}",)
        return CycleResult(engine, spec.mode, spec.space, work, heat_in, efficiency,
                           ledger, carnot, anomalies)
    result = CycleResult(engine, spec.mode, spec.space, work, heat_in, math.nan, ledger,
                         carnot, ("heat input not positive; efficiency undefined",))
    raise ZeroHeatInput(f"{engine} heat input {heat_in!r} <= 0, efficiency undefined", result)


def _coth(x):
    return 1.0 / math.tanh(x)


def otto_cycle(spec: OttoSpec) -> CycleResult:
    """Four-stroke Otto cycle: hot isochore, adiabat, cold isochore, adiabat.

    Paper mode evaluates the closed-form coth mode sums

        Q_in = sum_i (Fh_i/2) [coth(bh Fh_i/2) - coth(bc Fc_i/2)]
        W    = sum_i ((Fh_i - Fc_i)/2) [same bracket]

    Exact mode tracks Bose occupations through population-preserving
    adiabats. Both give the same numbers; the zero-point terms cancel.

    Raises
    ------
    NegativeModeFrequency
        If either stroke has a non-positive mode.
    ZeroHeatInput
        If Q_in <= 0; the partial result is attached to the exception.
    """
    hot = mode_spectrum(spec.space, spec.params(spec.omega_hot))
    cold = mode_spectrum(spec.space, spec.params(spec.omega_cold))
    bh, bc = spec.baths.beta_hot, spec.baths.beta_cold
    pairs = list(zip(hot.frequencies, cold.frequencies))

    if spec.mode is Mode.PAPER:
        q_hot = w1 = w2 = work = 0.0
        for fh, fc in pairs:
            ch, cc = _coth(bh * fh / 2.0), _coth(bc * fc / 2.0)
            q_hot += 0.5 * fh * (ch - cc)
            work += 0.5 * (fh - fc) * (ch - cc)
            w1 += 0.5 * (fh - fc) * ch
            w2 -= 0.5 * (fh - fc) * cc
        q_cold = work - q_hot
    else:
        occ_hot = [bose_occupation(fh, bh) for fh, _ in pairs]
        occ_cold = [bose_occupation(fc, bc) for _, fc in pairs]
        # mean energies Tr[rho H]; the offsets e0 enter w1/w2 only
        q_hot = sum(fh * (nh - nc) for (fh, _), nh, nc in zip(pairs, occ_hot, occ_cold))
        q_cold = sum(fc * (nc - nh) for (_, fc), nh, nc in zip(pairs, occ_hot, occ_cold))
        w1 = sum((fh - fc) * nh for (fh, fc), nh in zip(pairs, occ_hot)) + hot.e0 - cold.e0
        w2 = sum((fc - fh) * nc for (fh, fc), nc in zip(pairs, occ_cold)) + cold.e0 - hot.e0
        work = q_hot + q_cold

    return _finish("otto", spec, work, q_hot, OttoLedger(q_hot, q_cold, w1, w2))


def _state_model(spec: StirlingSpec, omega: float) -> PartitionModel:
    params = spec.params(omega)
    if spec.mode is Mode.EXACT:
        return PartitionModel.exact(mode_spectrum(spec.space, params), spec.space)
    # fail early on modes that would not exist, even though Z is closed-form
    mode_spectrum(spec.space, params)
    return PartitionModel.paper(spec.space, params)


def stirling_cycle(spec: StirlingSpec) -> CycleResult:
    """Two isotherms and two isochores between the four states A, B, C, D.

    Exact (standard) mode uses isothermal heat T dS and isochoric heat dU
    from the exact spectral partition function; heat input is the sum of the
    positive heats among Q_AB and Q_DA.

    Paper mode uses the closed-form stroke formulas
    Q_AB = U_A - U_B + T_h ln(Z_A/Z_B), Q_CD = U_D - U_C + T_c ln(Z_D/Z_C),
    Q_BC = U_C - U_B, Q_DA = U_A - U_D and efficiency
    1 + (Q_BC + Q_CD)/(Q_DA + Q_AB), with Z and U from the closed forms.
    """
    bh, bc = spec.baths.beta_hot, spec.baths.beta_cold
    th, tc = spec.baths.t_hot, spec.baths.t_cold
    model_A = _state_model(spec, spec.omega_A)
    model_B = _state_model(spec, spec.omega_B)

    U_A, U_B = model_A.internal_energy(bh), model_B.internal_energy(bh)
    U_C, U_D = model_B.internal_energy(bc), model_A.internal_energy(bc)
    lnZ_A, lnZ_B = model_A.log_z(bh), model_B.log_z(bh)
    lnZ_C, lnZ_D = model_B.log_z(bc), model_A.log_z(bc)

    q_BC = U_C - U_B
    q_DA = U_A - U_D
    if spec.mode is Mode.EXACT:
        S_A, S_B = lnZ_A + bh * U_A, lnZ_B + bh * U_B
        S_C, S_D = lnZ_C + bc * U_C, lnZ_D + bc * U_D
        q_AB = th * (S_B - S_A)
        q_CD = tc * (S_D - S_C)
        heat_in = sum(q for q in (q_AB, q_DA) if q > 0)
    else:
        q_AB = U_A - U_B + th * (lnZ_A - lnZ_B)
        q_CD = U_D - U_C + tc * (lnZ_D - lnZ_C)
        heat_in = q_DA + q_AB

    w_total = q_AB + q_BC + q_CD + q_DA
    ledger = StrokeLedger(q_AB, q_BC, q_CD, q_DA, w_total)
    if spec.mode is Mode.PAPER and heat_in > 0:
        efficiency = 1.0 + (q_BC + q_CD) / heat_in
        carnot = carnot_efficiency(spec.baths)
        anomalies = ()
        if efficiency > carnot + CARNOT_SLACK:
            anomalies = (f"efficiency {efficiency!r} exceeds Carnot bound {carnot!r}",)
        return CycleResult("stirling", spec.mode, spec.space, w_total, heat_in, efficiency,
                           ledger, carnot, anomalies)
    return _finish("stirling", spec, w_total, heat_in, ledger)

