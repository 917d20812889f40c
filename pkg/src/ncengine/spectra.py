"""Two-mode energy spectra of a coupled harmonic oscillator.

Every phase-space structure handled here (commutative, non-commutative with a
single position deformation ``theta``, and generalized non-commutative with
position/momentum deformations ``gamma``/``xi``) leads to a spectrum that is
linear in the two occupation numbers,

    E(n1, n2) = f1 * n1 + f2 * n2 + e0,

so a :class:`ModeSpectrum` is fully described by three numbers. Units are
natural: hbar = k_B = 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

from .errors import DegenerateCoupling, InvalidParameter, NegativeModeFrequency

__all__ = [
    "Space",
    "SpaceConfig",
    "RawCoupling",
    "ReducedParams",
    "ModeSpectrum",
    "GncDerived",
    "normal_mode_reduce",
    "effective_mass",
    "nc_effective_frequency",
    "gnc_derived",
    "mode_spectrum",
    "energy_level",
]


class Space(str, enum.Enum):
    COMM = "comm"
    NC = "nc"
    GNC = "gnc"


@dataclass(frozen=True)
class SpaceConfig:
    """Phase-space structure plus its deformation parameters."""

    variant: Space = Space.COMM
    theta: float = 0.0
    gamma: float = 0.0
    xi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "variant", Space(self.variant))
        if self.variant is Space.COMM and (self.theta or self.gamma or self.xi):
            raise InvalidParameter("commutative space carries no deformation parameters")
        if self.variant is Space.NC:
            if self.gamma or self.xi:
                raise InvalidParameter("NC space takes theta only")
            if not self.theta >= 0:
                raise InvalidParameter(f"theta must be >= 0, got {self.theta}")
        if self.variant is Space.GNC and self.theta:
            raise InvalidParameter("GNC space takes gamma and xi only")

    @classmethod
    def commutative(cls) -> SpaceConfig:
        return cls(Space.COMM)

    @classmethod
    def nc(cls, theta: float) -> SpaceConfig:
        return cls(Space.NC, theta=theta)

    @classmethod
    def gnc(cls, gamma: float, xi: float) -> SpaceConfig:
        return cls(Space.GNC, gamma=gamma, xi=xi)

    def as_dict(self) -> dict:
        out = {"space": self.variant.value}
        if self.variant is Space.NC:
            out["theta"] = self.theta
        elif self.variant is Space.GNC:
            out["gamma"] = self.gamma
            out["xi"] = self.xi
        return out


@dataclass(frozen=True)
class RawCoupling:
    """Masses and spring constants of H = p1^2/2m1 + p2^2/2m2 + (C1 x1^2 + C2 x2^2 + C3 x1 x2)/2."""

    m1: float
    m2: float
    C1: float
    C2: float
    C3: float

    def __post_init__(self):
        if not (self.m1 > 0 and self.m2 > 0):
            raise InvalidParameter(f"masses must be positive, got m1={self.m1}, m2={self.m2}")

    @property
    def rescaled(self) -> tuple[float, float, float]:
        """Spring constants (c1, c2, c3) after the mass-symmetrising rescale."""
        c1 = self.C1 * math.sqrt(self.m2 / self.m1)
        c2 = self.C2 * math.sqrt(self.m1 / self.m2)
        return c1, c2, self.C3


@dataclass(frozen=True)
class ReducedParams:
    """Normal-mode parameters of the medium.

    ``omega`` is the base frequency of a particular stroke; the other fields
    describe the medium and stay fixed around a cycle.
    """

    omega: float
    zeta: float = 0.0
    K: float = 1.0
    m: float = 1.0

    def __post_init__(self):
        if not self.omega > 0:
            raise InvalidParameter(f"omega must be positive, got {self.omega}")
        if not self.m > 0:
            raise InvalidParameter(f"mass must be positive, got {self.m}")
        if not self.K > 0:
            raise InvalidParameter(f"K must be positive, got {self.K}")

    def with_omega(self, omega: float) -> ReducedParams:
        return replace(self, omega=omega)


@dataclass(frozen=True)
class ModeSpectrum:
    """Linear two-mode spectrum; ``f1 >= f2`` is enforced by construction."""

    f1: float
    f2: float
    e0: float

    def __post_init__(self):
        if self.f2 > self.f1:
            f1, f2 = self.f2, self.f1
            object.__setattr__(self, "f1", f1)
            object.__setattr__(self, "f2", f2)
        if not (self.f1 > 0 and self.f2 > 0):
            raise NegativeModeFrequency(
                f"mode frequencies must be positive, got f1={self.f1}, f2={self.f2}"
            )

    @property
    def frequencies(self) -> tuple[float, float]:
        return (self.f1, self.f2)


@dataclass(frozen=True)
class GncDerived:
    delta1: float
    delta2: float
    lambda1: float
    lambda2: float


def normal_mode_reduce(raw: RawCoupling, omega: float = 1.0) -> ReducedParams:
    """Rotate the rescaled coupled oscillator onto its normal modes.

    Returns m = sqrt(m1 m2), K = sqrt(c1 c2 - c3^2/4) and
    zeta = ln[(c1 + c2 + sqrt((c1 - c2)^2 + c3^2)) / (2K)].
    ``omega`` is not determined by the springs; it is attached as supplied.
    """
    c1, c2, c3 = raw.rescaled
    disc = 4.0 * c1 * c2 - c3 * c3
    if not disc > 0:
        raise DegenerateCoupling(f"4*c1*c2 = {4 * c1 * c2} must exceed c3^2 = {c3 * c3}")
    K = math.sqrt(disc) / 2.0
    zeta = math.log((c1 + c2 + math.hypot(c1 - c2, c3)) / (2.0 * K))
    return ReducedParams(omega=omega, zeta=zeta, K=K, m=math.sqrt(raw.m1 * raw.m2))


def effective_mass(m: float, omega: float, theta: float) -> float:
    """NC effective mass M = m / (1 + (m omega theta / 2)^2)."""
    if not (m > 0 and omega > 0 and theta >= 0):
        raise InvalidParameter("effective_mass needs m > 0, omega > 0, theta >= 0")
    return m / (1.0 + (m * omega * theta / 2.0) ** 2)


def nc_effective_frequency(params: ReducedParams, theta: float) -> float:
    """Omega = sqrt(K / M); used only for reporting, cycles use the stroke omega."""
    return math.sqrt(params.K / effective_mass(params.m, params.omega, theta))


def gnc_derived(params: ReducedParams, gamma: float, xi: float) -> GncDerived:
    """Deformation measures Delta1, Delta2 and scales lambda1, lambda2.

    Delta2 diverges at zeta = 0 whenever K m gamma + xi != 0; it is returned as
    ``inf`` there. lambda2 is computed in product form and stays finite.
    """
    K, m, z = params.K, params.m, params.zeta
    km = K * m
    ch2 = 2.0 * math.cosh(z)
    sh2 = 2.0 * math.sinh(z)
    minus = km * gamma - xi
    plus = km * gamma + xi
    delta1 = minus * minus / (ch2 * ch2 * km)
    if sh2 == 0.0:
        delta2 = 0.0 if plus == 0.0 else math.inf
    else:
        delta2 = plus * plus / (sh2 * sh2 * km)
    root = math.sqrt(km)
    lambda1 = ch2 * root * math.sqrt(1.0 + delta1)
    lambda2 = root * math.sqrt(sh2 * sh2 + plus * plus / km)
    return GncDerived(delta1, delta2, lambda1, lambda2)


def mode_spectrum(space: SpaceConfig, params: ReducedParams) -> ModeSpectrum:
    """Mode frequencies and zero-point offset for one stroke."""
    w, z = params.omega, params.zeta
    if space.variant is Space.COMM:
        return ModeSpectrum(w * math.exp(z), w * math.exp(-z), w * math.cosh(z))

    if space.variant is Space.NC:
        shift = params.K * space.theta / 2.0
        if not w > shift:
            raise NegativeModeFrequency(
                f"NC soft mode omega - K*theta/2 = {w - shift} is not positive"
            )
        return ModeSpectrum(w + shift, w - shift, w)

    km = params.K * params.m
    minus = km * space.gamma - space.xi
    plus = km * space.gamma + space.xi
    ch2 = 2.0 * math.cosh(z)
    # (e^z + e^-z) sqrt(1 + Delta1), written without the division by ch2
    sym = math.sqrt(ch2 * ch2 + minus * minus / km)
    # (e^z - e^-z) sqrt(1 + Delta2) in product form; finite at zeta = 0
    antisym = math.sqrt((2.0 * math.sinh(z)) ** 2 + plus * plus / km)
    if z < 0:
        antisym = -antisym
    f1 = 0.5 * w * (sym + antisym)
    f2 = 0.5 * w * (sym - antisym)
    if not (f1 > 0 and f2 > 0):
        raise NegativeModeFrequency(f"GNC mode frequencies ({f1}, {f2}) not both positive")
    return ModeSpectrum(f1, f2, 0.5 * w * sym)


def energy_level(spec: ModeSpectrum, n1: int, n2: int) -> float:
    if n1 < 0 or n2 < 0:
        raise InvalidParameter("occupation numbers must be non-negative")
    return spec.f1 * n1 + spec.f2 * n2 + spec.e0
