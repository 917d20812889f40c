"""Quantum Otto and Stirling engines with a coupled-oscillator working medium.

Modules
-------
spectra : two-mode spectra in commutative, NC and generalized NC phase space
thermo  : partition functions (closed forms, exact sums, brute-force oracle)
cycles  : Otto and Stirling cycle evaluation
verify  : finite-difference, brute-force and first-law checks
sweeps  : run configurations, parameter sweeps, figure tables
cli     : ``ncengine`` command line entry point
"""

__version__ = "0.1.0"

from .cycles import (  # noqa: E402
    CycleResult,
    OttoSpec,
    StirlingSpec,
    carnot_efficiency,
    otto_cycle,
    stirling_cycle,
)
from .spectra import (  # noqa: E402
    ModeSpectrum,
    RawCoupling,
    ReducedParams,
    Space,
    SpaceConfig,
    energy_level,
    mode_spectrum,
    normal_mode_reduce,
)
from .thermo import BathPair, Mode, PartitionModel  # noqa: E402
