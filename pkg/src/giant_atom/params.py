"""Parameter records and reduced quantities.

All frequencies are angular frequencies in rad/s with hbar = 1, lengths are
in metres and the coupling ``f`` carries units of sqrt(rad/s * m/s), so that
``f**2 / v_g`` is a rate.  Figure-style parameters are usually quoted through
the dimensionless ratio ``g = f / sqrt(v_g * omega_e)``; use
:meth:`Coupling.from_ratio` or the :class:`SystemParams` factories for that.

Every field may be a scalar or a numpy array.  Arrays broadcast through all
amplitude functions, which is how sweeps over ``x0`` or random parameter draws
are evaluated without Python loops.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .exceptions import ParameterError

ArrayLike = Union[float, np.ndarray]

# Default parameter set: omega_e = 3 GHz read as rad/s, v_g = 3e8 m/s,
# f / sqrt(v_g omega_e) = 0.05, omega_f = 0.7 omega_e, eta = 0.08 omega_e.
DEFAULT_OMEGA_E = 3.0e9
DEFAULT_V_G = 3.0e8
DEFAULT_G = 0.05
DEFAULT_OMEGA_F_RATIO = 0.7
DEFAULT_ETA_RATIO = 0.08
DEFAULT_OMEGA_D_RATIO = 0.3

# Natural linewidth of a superconducting qubit with ~20 us coherence time.
NATURAL_LINEWIDTH = 5.0e4


def _require(condition, message):
    if not np.all(condition):
        raise ParameterError(message)


def _finite(name, value):
    _require(np.isfinite(value), f"{name} must be finite")


@dataclass(frozen=True)
class WaveguideParams:
    v_g: ArrayLike = DEFAULT_V_G

    def __post_init__(self):
        _finite("v_g", self.v_g)
        _require(np.asarray(self.v_g) > 0, "v_g must be positive")


@dataclass(frozen=True)
class TwoLevelAtom:
    omega_e: ArrayLike = DEFAULT_OMEGA_E
    gamma_e: ArrayLike = 0.0

    def __post_init__(self):
        _finite("omega_e", self.omega_e)
        _require(np.asarray(self.omega_e) > 0, "omega_e must be positive")
        _require(np.asarray(self.gamma_e) >= 0, "gamma_e must be non-negative")


@dataclass(frozen=True)
class ThreeLevelAtom:
    omega_e: ArrayLike = DEFAULT_OMEGA_E
    omega_f: ArrayLike = DEFAULT_OMEGA_F_RATIO * DEFAULT_OMEGA_E
    gamma_e: ArrayLike = 0.0
    gamma_f: ArrayLike = 0.0

    def __post_init__(self):
        _finite("omega_e", self.omega_e)
        _finite("omega_f", self.omega_f)
        omega_e = np.asarray(self.omega_e)
        omega_f = np.asarray(self.omega_f)
        _require((omega_f > 0) & (omega_f < omega_e),
                 "need 0 < omega_f < omega_e")
        _require(np.asarray(self.gamma_e) >= 0, "gamma_e must be non-negative")
        _require(np.asarray(self.gamma_f) >= 0, "gamma_f must be non-negative")


@dataclass(frozen=True)
class Drive:
    eta: ArrayLike = DEFAULT_ETA_RATIO * DEFAULT_OMEGA_E
    omega_d: ArrayLike = DEFAULT_OMEGA_D_RATIO * DEFAULT_OMEGA_E

    def __post_init__(self):
        _finite("eta", self.eta)
        _finite("omega_d", self.omega_d)
        _require(np.asarray(self.eta) >= 0, "eta must be non-negative")
        _require(np.asarray(self.omega_d) > 0, "omega_d must be positive")


@dataclass(frozen=True)
class Coupling:
    f: ArrayLike
    x0: ArrayLike = 0.0

    def __post_init__(self):
        _finite("f", self.f)
        _finite("x0", self.x0)
        _require(np.asarray(self.f) >= 0, "f must be non-negative")
        _require(np.asarray(self.x0) >= 0, "x0 must be non-negative")

    @classmethod
    def from_ratio(cls, g, v_g, omega_e, x0=0.0):
        """Build from ``g = f / sqrt(v_g * omega_e)``."""
        _require(np.asarray(g) >= 0, "coupling ratio g must be non-negative")
        return cls(f=np.asarray(g) * np.sqrt(np.asarray(v_g) * np.asarray(omega_e)), x0=x0)


@dataclass(frozen=True)
class SystemParams:
    """Waveguide, atom, coupling and (for the three-level atom) drive."""

    waveguide: WaveguideParams
    atom: Union[TwoLevelAtom, ThreeLevelAtom]
    coupling: Coupling
    drive: Optional[Drive] = None

    def __post_init__(self):
        if isinstance(self.atom, ThreeLevelAtom) and self.drive is None:
            raise ParameterError("a three-level atom needs a Drive")
        if isinstance(self.atom, TwoLevelAtom) and self.drive is not None:
            raise ParameterError("a two-level atom takes no Drive")

    @classmethod
    def two_level(cls, *, omega_e=DEFAULT_OMEGA_E, v_g=DEFAULT_V_G, g=DEFAULT_G,
                  f=None, x0=0.0, gamma_e=0.0):
        """Two-level giant atom; ``f`` overrides the ratio ``g`` when given."""
        coupling = (Coupling(f=f, x0=x0) if f is not None
                    else Coupling.from_ratio(g, v_g, omega_e, x0))
        return cls(WaveguideParams(v_g), TwoLevelAtom(omega_e, gamma_e), coupling)

    @classmethod
    def three_level(cls, *, omega_e=DEFAULT_OMEGA_E, v_g=DEFAULT_V_G, g=DEFAULT_G,
                    f=None, x0=0.0, omega_f=None, eta=None, omega_d=None,
                    gamma_e=0.0, gamma_f=0.0):
        """Driven Lambda-type giant atom.

        ``omega_f``, ``eta`` and ``omega_d`` default to 0.7, 0.08 and 0.3 times
        ``omega_e``.
        """
        omega_e_arr = np.asarray(omega_e)
        if omega_f is None:
            omega_f = DEFAULT_OMEGA_F_RATIO * omega_e_arr
        if eta is None:
            eta = DEFAULT_ETA_RATIO * omega_e_arr
        if omega_d is None:
            omega_d = DEFAULT_OMEGA_D_RATIO * omega_e_arr
        coupling = (Coupling(f=f, x0=x0) if f is not None
                    else Coupling.from_ratio(g, v_g, omega_e, x0))
        return cls(WaveguideParams(v_g),
                   ThreeLevelAtom(omega_e, omega_f, gamma_e, gamma_f),
                   coupling, Drive(eta, omega_d))

    @property
    def is_three_level(self):
        return isinstance(self.atom, ThreeLevelAtom)

    @property
    def v_g(self):
        return self.waveguide.v_g

    @property
    def omega_e(self):
        return self.atom.omega_e

    @property
    def f(self):
        return self.coupling.f

    @property
    def x0(self):
        return self.coupling.x0

    @property
    def gamma_e(self):
        return self.atom.gamma_e

    @property
    def gamma_f(self):
        return self.atom.gamma_f if self.is_three_level else 0.0

    @property
    def is_lossless(self):
        return bool(np.all(np.asarray(self.gamma_e) == 0)
                    and np.all(np.asarray(self.gamma_f) == 0))

    def with_x0(self, x0):
        return dataclasses.replace(
            self, coupling=dataclasses.replace(self.coupling, x0=x0))

    def with_f(self, f):
        return dataclasses.replace(
            self, coupling=dataclasses.replace(self.coupling, f=f))

    def with_atom(self, **changes):
        return dataclasses.replace(self, atom=dataclasses.replace(self.atom, **changes))

    def with_drive(self, **changes):
        if self.drive is None:
            raise ParameterError("two-level parameters have no drive")
        return dataclasses.replace(self, drive=dataclasses.replace(self.drive, **changes))

    def lossless(self):
        """Copy with every dissipation rate set to zero."""
        if self.is_three_level:
            return self.with_atom(gamma_e=0.0, gamma_f=0.0)
        return self.with_atom(gamma_e=0.0)

    def as_dict(self):
        """Flat parameter echo (scalars only) used in output metadata."""
        out = {
            "kind": "three-level" if self.is_three_level else "two-level",
            "omega_e": self.omega_e,
            "v_g": self.v_g,
            "f": self.f,
            "g": np.asarray(self.f) / np.sqrt(np.asarray(self.v_g) * np.asarray(self.omega_e)),
            "x0": self.x0,
            "gamma_e": self.gamma_e,
        }
        if self.is_three_level:
            out.update(omega_f=self.atom.omega_f, gamma_f=self.atom.gamma_f,
                       eta=self.drive.eta, omega_d=self.drive.omega_d)
        return {k: (float(v) if np.ndim(v) == 0 and not isinstance(v, str) else v)
                for k, v in out.items()}


@dataclass(frozen=True)
class ReducedParams:
    Gamma: ArrayLike
    phi: ArrayLike
    Delta: ArrayLike
    Delta2: Optional[ArrayLike] = None
    delta_tp: Optional[ArrayLike] = None


def wave_vector(E, wg):
    """Photon wave vector ``k = E / v_g`` for the linear dispersion.

    ``wg`` is a :class:`WaveguideParams` or a bare group velocity.
    """
    v_g = wg.v_g if isinstance(wg, WaveguideParams) else wg
    E = np.asarray(E, dtype=float)
    if not np.all(E > 0):
        raise ParameterError("photon energy E must be positive")
    k = E / v_g
    return float(k) if k.ndim == 0 else k


def check_energy(E):
    E = np.asarray(E, dtype=float)
    if not np.all(E > 0):
        raise ParameterError("photon energy E must be positive")
    return E


def reduce(params: SystemParams, E) -> ReducedParams:
    """Collect the combinations every closed form is written in."""
    E = check_energy(E)
    Gamma = 2.0 * np.asarray(params.f) ** 2 / params.v_g
    phi = E / params.v_g * params.x0
    Delta = E - params.omega_e
    Delta2 = delta_tp = None
    if params.is_three_level:
        delta_tp = np.asarray(params.atom.omega_f) + params.drive.omega_d
        Delta2 = drive_detuning(params)
    return ReducedParams(Gamma=Gamma, phi=phi, Delta=Delta, Delta2=Delta2, delta_tp=delta_tp)


def detuning_from(omega_e, omega_f, omega_d):
    """``omega_e - omega_f - omega_d`` with rounding-level residue set to zero.

    Caption-style inputs such as ``0.7 omega_e + 0.3 omega_e`` do not cancel
    exactly in floating point; the resonant branch needs an exact zero.
    """
    delta2 = np.asarray(omega_e - omega_f - omega_d, dtype=float)
    scale = np.abs(omega_e) + np.abs(omega_f) + np.abs(omega_d)
    delta2 = np.where(np.abs(delta2) <= 8 * np.finfo(float).eps * scale, 0.0, delta2)
    return delta2[()] if delta2.ndim == 0 else delta2


def drive_detuning(params: SystemParams):
    """``Delta2 = omega_e - omega_f - omega_d``."""
    if not params.is_three_level:
        raise ParameterError("drive detuning needs three-level parameters")
    return detuning_from(params.omega_e, params.atom.omega_f, params.drive.omega_d)


def two_photon_energy(params: SystemParams):
    """Two-photon resonance ``delta = omega_f + omega_d``."""
    if not params.is_three_level:
        raise ParameterError("two-photon resonance needs three-level parameters")
    return params.atom.omega_f + params.drive.omega_d
