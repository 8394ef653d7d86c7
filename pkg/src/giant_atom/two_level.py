"""Closed-form scattering amplitudes for the two-level giant atom.

With ``phi = k x0`` and ``D = E - omega_e + i gamma_e``::

    t = (i D v_g - 2 i f^2 sin phi) / (i D v_g - 2 f^2 (1 + e^{i phi}))
    r = 2 f^2 (1 + cos phi) e^{i phi} / (i D v_g - 2 f^2 (1 + e^{i phi}))

At ``phi = (2m+1) pi`` with ``E = omega_e`` (lossless) both numerator and
denominator vanish; the amplitudes are then replaced by their limit along the
energy axis, ``t = 1`` and ``r = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .exceptions import ParameterError
from .params import SystemParams, check_energy

# Relative tolerance used to detect the removable 0/0 point.
DEGENERACY_RTOL = 1e-12


@dataclass(frozen=True)
class ScatterResult:
    t: Union[complex, np.ndarray]
    r: Union[complex, np.ndarray]
    E: Union[float, np.ndarray]

    @property
    def T(self):
        return np.abs(self.t) ** 2

    @property
    def R(self):
        return np.abs(self.r) ** 2


def _unwrap(x):
    x = np.asarray(x)
    return x[()] if x.ndim == 0 else x


def decoherence_free_mask(phi, detuning, omega_e):
    """True where ``phi`` is an odd multiple of pi and ``detuning`` vanishes."""
    phi = np.asarray(phi, dtype=float)
    m = np.round((phi / np.pi - 1.0) / 2.0)
    off_phase = np.abs(phi - (2.0 * m + 1.0) * np.pi)
    return ((off_phase <= DEGENERACY_RTOL * np.maximum(np.abs(phi), 1.0))
            & (np.abs(detuning) <= DEGENERACY_RTOL * np.asarray(omega_e)))


def two_level_kernel(E, x0, f, v_g, omega_e, gamma_e=0.0):
    """Array kernel returning ``(t, r)``; broadcasts over every argument."""
    E = np.asarray(E, dtype=float)
    phi = E / v_g * x0
    f2 = np.asarray(f, dtype=float) ** 2
    detuning = E - omega_e
    D = detuning + 1j * np.asarray(gamma_e)
    phase = np.exp(1j * phi)
    with np.errstate(divide="ignore", invalid="ignore"):
        den = 1j * D * v_g - 2.0 * f2 * (1.0 + phase)
        t = (1j * D * v_g - 2j * f2 * np.sin(phi)) / den
        r = 2.0 * f2 * (1.0 + np.cos(phi)) * phase / den
    degenerate = decoherence_free_mask(phi, detuning, omega_e) & (np.asarray(gamma_e) == 0)
    if np.any(degenerate):
        t = np.where(degenerate, 1.0 + 0j, t)
        r = np.where(degenerate, 0j, r)
    return t, r


def _require_two_level(params):
    if params.is_three_level:
        raise ParameterError("expected two-level parameters")


def _require_lossless(params):
    if not params.is_lossless:
        raise ParameterError("lossless amplitude requested for dissipative parameters; "
                             "use the *_dissipative variant")


def t1(params: SystemParams, E):
    """Lossless transmission amplitude of the two-level giant atom."""
    _require_two_level(params)
    _require_lossless(params)
    E = check_energy(E)
    t, _ = two_level_kernel(E, params.x0, params.f, params.v_g, params.omega_e)
    return _unwrap(t)


def t1_dissipative(params: SystemParams, E):
    """Transmission amplitude with spontaneous emission ``gamma_e``."""
    _require_two_level(params)
    E = check_energy(E)
    t, _ = two_level_kernel(E, params.x0, params.f, params.v_g, params.omega_e,
                            params.gamma_e)
    return _unwrap(t)


def r1(params: SystemParams, E):
    """Reflection amplitude, with or without spontaneous emission."""
    _require_two_level(params)
    E = check_energy(E)
    _, r = two_level_kernel(E, params.x0, params.f, params.v_g, params.omega_e,
                            params.gamma_e)
    return _unwrap(r)


def scatter(params: SystemParams, E) -> ScatterResult:
    _require_two_level(params)
    E = check_energy(E)
    t, r = two_level_kernel(E, params.x0, params.f, params.v_g, params.omega_e,
                            params.gamma_e)
    return ScatterResult(t=_unwrap(t), r=_unwrap(r), E=_unwrap(E))

