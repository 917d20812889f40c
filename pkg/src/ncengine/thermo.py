"""Partition functions and equilibrium thermodynamics of the two-mode medium.

Two families of partition function live here:

* the exact geometric-series resummation over a :class:`ModeSpectrum`
  (``Mode.EXACT``), and
* the closed forms for each phase-space structure (``Mode.PAPER``),
  which are high-temperature style expressions with their own validity
  conditions.

All logarithms of Z are computed directly so deep-quantum parameters do not
underflow. Internal energies are analytic derivatives of ln Z; finite
differences are reserved for :mod:`ncengine.verify`.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    CutoffTooSmall,
    DomainConditionViolated,
    InvalidParameter,
    NegativeModeFrequency,
    NonPositivePartition,
)
from .spectra import ModeSpectrum, ReducedParams, Space, SpaceConfig

__all__ = [
    "Mode",
    "BathPair",
    "PartitionModel",
    "BruteForceSum",
    "bose_occupation",
    "mode_mean_energy",
    "log_partition_exact",
    "partition_exact",
    "partition_bruteforce",
    "paper_condition",
    "log_partition_paper",
    "partition_paper",
    "internal_energy",
    "entropy",
    "free_energy",
]

_EPS = np.finfo(float).eps


class Mode(str, enum.Enum):
    PAPER = "paper"
    EXACT = "exact"


@dataclass(frozen=True)
class BathPair:
    t_hot: float
    t_cold: float

    def __post_init__(self):
        if not (self.t_hot > self.t_cold > 0):
            raise InvalidParameter(
                f"need t_hot > t_cold > 0, got t_hot={self.t_hot}, t_cold={self.t_cold}"
            )

    @property
    def beta_hot(self) -> float:
        return 1.0 / self.t_hot

    @property
    def beta_cold(self) -> float:
        return 1.0 / self.t_cold


def _check_beta(beta):
    if not beta > 0:
        raise InvalidParameter(f"beta must be positive, got {beta}")


def bose_occupation(f: float, beta: float) -> float:
    """Mean occupation 1 / (e^{beta f} - 1)."""
    # written in e^{-x} so large beta f underflows to 0 instead of overflowing
    x = beta * f
    return math.exp(-x) / -math.expm1(-x)


def mode_mean_energy(f: float, beta: float) -> float:
    """Thermal energy of one oscillator mode including zero point, (f/2) coth(beta f/2)."""
    if not (f > 0 and beta > 0):
        raise InvalidParameter("mode_mean_energy needs f > 0 and beta > 0")
    return 0.5 * f / math.tanh(0.5 * beta * f)


# -- exact spectral sums ---------------------------------------------------


def log_partition_exact(spec: ModeSpectrum, beta: float) -> float:
    _check_beta(beta)
    return (
        -beta * spec.e0
        - math.log(-math.expm1(-beta * spec.f1))
        - math.log(-math.expm1(-beta * spec.f2))
    )


def partition_exact(spec: ModeSpectrum, beta: float) -> float:
    """Geometric-series resummation e^{-beta e0} / [(1 - e^{-beta f1})(1 - e^{-beta f2})]."""
    return math.exp(log_partition_exact(spec, beta))


class BruteForceSum(NamedTuple):
    value: float
    tail_bound: float
    n_max: int


def partition_bruteforce(
    spec: ModeSpectrum, beta: float, n_max: int, rtol: float | None = None
) -> BruteForceSum:
    """Direct Boltzmann sum over the square 0 <= n1, n2 <= n_max.

    The missing tail is bounded by Z_partial (a + b + ab) / ((1 - a)(1 - b))
    with a = e^{-beta f1 (n_max+1)}, b = e^{-beta f2 (n_max+1)}, plus a
    floating-point allowance for the summed terms. With ``rtol`` set,
    :class:`CutoffTooSmall` is raised when the bound exceeds ``rtol * value``.
    """
    _check_beta(beta)
    if n_max < 1:
        raise InvalidParameter("n_max must be >= 1")
    n = np.arange(n_max + 1, dtype=float)
    bE = beta * (spec.f1 * n[:, None] + spec.f2 * n[None, :] + spec.e0)
    terms = np.exp(-bE)
    partial = math.fsum(terms.ravel())

    a = math.exp(-beta * spec.f1 * (n_max + 1))
    b = math.exp(-beta * spec.f2 * (n_max + 1))
    tail = partial * (a / (1.0 - a) + b / (1.0 - b) + a * b / ((1.0 - a) * (1.0 - b)))
    rounding = 8.0 * _EPS * float(np.sum(terms * (1.0 + bE)))
    bound = tail + rounding
    if rtol is not None and bound > rtol * partial:
        raise CutoffTooSmall(
            f"n_max={n_max} leaves tail bound {bound:.3e} > {rtol:.1e} * Z"
        )
    return BruteForceSum(partial, bound, n_max)


# -- closed forms ----------------------------------------------------------


def _gnc_exponent_root(zeta, K, gamma, xi):
    c = xi - K * gamma
    return math.sqrt(4.0 + 2.0 * K * c * c / math.cosh(zeta))


def paper_condition(space: SpaceConfig, omega: float, zeta: float, K: float, beta: float) -> float:
    """Real part whose positivity is the validity condition of each closed form."""
    if space.variant is Space.COMM:
        return math.exp(zeta) * beta * omega
    if space.variant is Space.NC:
        th = space.theta
        return (K * beta * th / 2.0 + beta * cmath.sqrt(K * th * th * omega * omega)).real
    c = space.xi - K * space.gamma
    c2 = c * c
    ez, e2z = math.exp(zeta), math.exp(2.0 * zeta)
    s1 = cmath.sqrt(1.0 + ez * K * c2 / (1.0 + e2z))
    d = e2z - 1.0
    # (e^{2z} - 1) * sqrt(1 + x/(e^{2z} - 1)) -> 0 as zeta -> 0
    t2 = 0.0 if d == 0.0 else d * cmath.sqrt(1.0 + ez * K * c2 / d)
    return (ez * beta * omega * (s1 + e2z * s1 + t2)).real


def log_partition_paper(
    space: SpaceConfig, omega: float, zeta: float, K: float, beta: float
) -> float:
    _check_beta(beta)
    cond = paper_condition(space, omega, zeta, K, beta)
    if not cond > 0:
        raise DomainConditionViolated(
            f"{space.variant.value} closed form needs its Re[...] condition > 0, got {cond:.6g}"
        )
    if space.variant is Space.COMM:
        return -beta * omega * math.cosh(zeta) - 2.0 * math.log(beta * omega)
    if space.variant is Space.NC:
        gap = 4.0 * omega * omega - K
        if not gap > 0:
            raise NonPositivePartition(
                f"NC closed form is non-positive for K={K} >= 4 omega^2={4 * omega * omega}"
            )
        return math.log(4.0) - 2.0 * math.log(beta * space.theta) - math.log(gap)
    g, x = space.gamma, space.xi
    denom = (
        -2.0 * math.exp(zeta)
        + 2.0 * math.exp(2.0 * zeta) * K * K * g * x
        - K * (K * K * g * g + x * x)
    )
    if not denom < 0:
        raise NonPositivePartition(f"GNC closed form is non-positive (denominator {denom:.6g})")
    exponent = zeta - 0.5 * beta * omega * math.cosh(zeta) * _gnc_exponent_root(zeta, K, g, x)
    return math.log(-2.0 / denom) + exponent - 2.0 * math.log(omega * beta)


def partition_paper(space: SpaceConfig, omega: float, zeta: float, K: float, beta: float) -> float:
    """Closed-form partition function for the given phase-space structure.

    The GNC form carries no mass; it is the m = 1 expression.
    """
    return math.exp(log_partition_paper(space, omega, zeta, K, beta))


def _paper_internal_energy(space, omega, zeta, K, beta):
    if space.variant is Space.COMM:
        return omega * math.cosh(zeta) + 2.0 / beta
    if space.variant is Space.NC:
        return 2.0 / beta
    root = _gnc_exponent_root(zeta, K, space.gamma, space.xi)
    return 0.5 * omega * math.cosh(zeta) * root + 2.0 / beta


# -- models ----------------------------------------------------------------


@dataclass(frozen=True)
class PartitionModel:
    """Selects how Z(beta) is evaluated for one fixed Hamiltonian.

    Build with :meth:`exact` from a spectrum, or :meth:`paper` from the
    phase-space structure and medium parameters.
    """

    mode: Mode
    space: SpaceConfig
    spectrum: ModeSpectrum | None = None
    params: ReducedParams | None = None

    @classmethod
    def exact(cls, spectrum: ModeSpectrum, space: SpaceConfig | None = None) -> PartitionModel:
        if not (spectrum.f1 > 0 and spectrum.f2 > 0):
            raise NegativeModeFrequency("exact model needs positive mode frequencies")
        return cls(Mode.EXACT, space or SpaceConfig(), spectrum=spectrum)

    @classmethod
    def paper(cls, space: SpaceConfig, params: ReducedParams) -> PartitionModel:
        return cls(Mode.PAPER, space, params=params)

    def log_z(self, beta: float) -> float:
        if self.mode is Mode.EXACT:
            return log_partition_exact(self.spectrum, beta)
        p = self.params
        return log_partition_paper(self.space, p.omega, p.zeta, p.K, beta)

    def z(self, beta: float) -> float:
        return math.exp(self.log_z(beta))

    def internal_energy(self, beta: float) -> float:
        _check_beta(beta)
        if self.mode is Mode.EXACT:
            s = self.spectrum
            return s.e0 + s.f1 * bose_occupation(s.f1, beta) + s.f2 * bose_occupation(s.f2, beta)
        # validity of the closed form is part of the model's contract
        self.log_z(beta)
        p = self.params
        return _paper_internal_energy(self.space, p.omega, p.zeta, p.K, beta)


def internal_energy(model: PartitionModel, beta: float) -> float:
    """U = -d ln Z / d beta, analytic for every model."""
    return model.internal_energy(beta)


def entropy(model: PartitionModel, beta: float) -> float:
    """S = ln Z + beta U (k_B = 1)."""
    return model.log_z(beta) + beta * model.internal_energy(beta)


def free_energy(model: PartitionModel, beta: float) -> float:
    return -model.log_z(beta) / beta
