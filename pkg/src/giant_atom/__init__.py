"""Single-photon scattering on two- and three-level giant atoms in a waveguide."""

__version__ = "0.1.0"

from .exceptions import (  # noqa: E402
    DegenerateDressingError,
    IllConditionedFitError,
    NoConvergenceError,
    ParameterError,
    SingularSystemError,
)
from .params import (  # noqa: E402
    Coupling,
    Drive,
    ReducedParams,
    SystemParams,
    ThreeLevelAtom,
    TwoLevelAtom,
    WaveguideParams,
    reduce,
    wave_vector,
)
from .two_level import ScatterResult, r1, scatter, t1, t1_dissipative  # noqa: E402
from .three_level import (  # noqa: E402
    DressedPair,
    dressed_frequencies,
    dressed_pair,
    effective_couplings,
    mixing_angle,
    r2,
    r2_dissipative,
    scatter_three_level,
    t2,
    t2_dissipative,
)
from .resonance import (  # noqa: E402
    RootSet,
    ShiftFit,
    complete_reflection_detunings,
    fit_shift_amplitude,
    valley_energies,
)
from .small_atoms import T3  # noqa: E402
from .oracle import MatchingSystem, assemble, oracle_amplitudes, solve  # noqa: E402
