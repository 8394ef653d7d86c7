"""Driven Lambda-type three-level giant atom.

The drive couples ``|e>`` and ``|f>``; in the rotating frame ``|f>`` sits at
``delta = omega_f + omega_d``.  With ``D_e = E - omega_e + i gamma_e``,
``D_f = E - delta + i gamma_f`` and ``phi = k x0``::

    den = D_f [i D_e v_g - 2 f^2 (1 + e^{i phi})] - i v_g eta^2
    t   = (D_f [i D_e v_g - 2 i f^2 sin phi] - i v_g eta^2) / den
    r   = 2 f^2 D_f (1 + cos phi) e^{i phi} / den

For ``eta = 0`` the ``D_f`` factor cancels and the two-level amplitudes are
returned directly, which also covers ``E = delta`` where the expression above
is 0/0.  ``t`` is evaluated as ``1 + r e^{-i phi}``, the same expression
rearranged.  When ``phi`` is an odd multiple of pi both numerator and denominator
reduce to ``i v_g (D_f D_e - eta^2)``, which vanishes at the dressed
frequencies; the lossless limit there is ``t = 1``, ``r = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateDressingError, ParameterError
from .params import SystemParams, check_energy, detuning_from, drive_detuning, two_photon_energy
from .two_level import ScatterResult, _unwrap, decoherence_free_mask, two_level_kernel


def three_level_kernel(E, x0, f, v_g, omega_e, delta, eta, gamma_e=0.0, gamma_f=0.0):
    """Array kernel returning ``(t, r)``; broadcasts over every argument."""
    E = np.asarray(E, dtype=float)
    eta = np.asarray(eta, dtype=float)
    phi = E / v_g * x0
    f2 = np.asarray(f, dtype=float) ** 2
    detuning = E - omega_e
    D_e = detuning + 1j * np.asarray(gamma_e)
    D_f = E - delta + 1j * np.asarray(gamma_f)
    phase = np.exp(1j * phi)
    drive_term = 1j * v_g * eta ** 2
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        den = D_f * (1j * D_e * v_g - 2.0 * f2 * (1.0 + phase)) - drive_term
        # Numerator minus denominator is 2 f^2 D_f (1 + cos phi); writing t as
        # 1 + that / den keeps t = 1 exact at E = delta.
        ratio = 2.0 * f2 * D_f * (1.0 + np.cos(phi)) / den
        t = 1.0 + ratio
        r = ratio * phase
    undriven = eta == 0
    if np.any(undriven):
        t_bare, r_bare = two_level_kernel(E, x0, f, v_g, omega_e, gamma_e)
        t = np.where(undriven, t_bare, t)
        r = np.where(undriven, r_bare, r)
    lossless = (np.asarray(gamma_e) == 0) & (np.asarray(gamma_f) == 0)
    # Distance to the nearer dressed frequency (equals |Delta| when undriven).
    delta2 = omega_e - np.asarray(delta, dtype=float)
    split = np.hypot(delta2, 2.0 * eta) / 2.0
    centre = omega_e - delta2 / 2.0
    pole = np.minimum(np.abs(E - centre - split), np.abs(E - centre + split))
    pole = np.where(eta == 0, detuning, pole)
    degenerate = decoherence_free_mask(phi, pole, omega_e) & lossless
    if np.any(degenerate):
        t = np.where(degenerate, 1.0 + 0j, t)
        r = np.where(degenerate, 0j, r)
    return t, r


def _require_three_level(params):
    if not params.is_three_level:
        raise ParameterError("expected three-level parameters")


def _amplitudes(params, E, lossless):
    _require_three_level(params)
    if lossless and not params.is_lossless:
        raise ParameterError("lossless amplitude requested for dissipative parameters; "
                             "use the *_dissipative variant")
    E = check_energy(E)
    gamma_e, gamma_f = (0.0, 0.0) if lossless else (params.gamma_e, params.gamma_f)
    return three_level_kernel(E, params.x0, params.f, params.v_g, params.omega_e,
                              two_photon_energy(params), params.drive.eta,
                              gamma_e, gamma_f)


def t2(params: SystemParams, E):
    """Lossless transmission amplitude."""
    return _unwrap(_amplitudes(params, E, lossless=True)[0])


def r2(params: SystemParams, E):
    """Lossless reflection amplitude."""
    return _unwrap(_amplitudes(params, E, lossless=True)[1])


def t2_dissipative(params: SystemParams, E):
    """Transmission amplitude with spontaneous emission from ``|e>`` and ``|f>``."""
    return _unwrap(_amplitudes(params, E, lossless=False)[0])


def r2_dissipative(params: SystemParams, E):
    return _unwrap(_amplitudes(params, E, lossless=False)[1])


def scatter_three_level(params: SystemParams, E) -> ScatterResult:
    E = check_energy(E)
    t, r = _amplitudes(params, E, lossless=False)
    return ScatterResult(t=_unwrap(t), r=_unwrap(r), E=_unwrap(E))


# -- dressed states ---------------------------------------------------------

@dataclass(frozen=True)
class DressedPair:
    omega_plus: float
    omega_minus: float
    theta: float
    G_plus_abs: float
    G_minus_abs: float


def dressed_frequencies(atom, drive):
    """Eigenfrequencies of the driven ``{|e>, |f>}`` block in the rotating frame.

    Returns ``(omega_plus, omega_minus)`` with
    ``omega_pm = omega_e - Delta2/2 +- sqrt(Delta2^2 + 4 eta^2)/2``.
    """
    delta2 = detuning_from(atom.omega_e, atom.omega_f, drive.omega_d)
    split = np.hypot(delta2, 2.0 * np.asarray(drive.eta)) / 2.0
    centre = atom.omega_e - delta2 / 2.0
    return _unwrap(centre + split), _unwrap(centre - split)


def mixing_angle(atom, drive):
    """Mixing angle ``theta`` in (0, pi) of the dressed states.

    ``|psi+> = cos(theta/2)|e> + sin(theta/2)|f>``.  ``theta = pi/2`` on
    resonance, ``atan(2 eta / Delta2)`` for ``Delta2 > 0`` and
    ``pi + atan(2 eta / Delta2)`` for ``Delta2 < 0``.
    """
    delta2 = np.asarray(detuning_from(atom.omega_e, atom.omega_f, drive.omega_d))
    eta = np.asarray(drive.eta, dtype=float)
    if np.any((eta == 0) & (delta2 == 0)):
        raise DegenerateDressingError("dressed states undefined for eta = Delta2 = 0")
    with np.errstate(divide="ignore"):
        ratio = np.arctan(2.0 * eta / delta2)
    theta = np.where(delta2 > 0, ratio, np.pi + ratio)
    theta = np.where(delta2 == 0, np.pi / 2.0, theta)
    return _unwrap(theta)


def effective_couplings(params: SystemParams, k_plus, k_minus):
    """``(|G+|, |G-|)`` for waveguide modes ``k_plus`` and ``k_minus``.

    ``|G+,k| = f cos(theta/2) |1 + e^{ik x0}|`` and
    ``|G-,k| = f sin(theta/2) |1 + e^{ik x0}|``.  The dressed-state width
    convention uses ``k = omega_pm / v_g``; see :func:`dressed_pair`.
    """
    _require_three_level(params)
    if np.any(np.asarray(k_plus) <= 0) or np.any(np.asarray(k_minus) <= 0):
        raise ParameterError("wave vectors must be positive")
    theta = mixing_angle(params.atom, params.drive)
    x0 = params.x0
    G_plus = params.f * np.cos(theta / 2.0) * np.abs(1.0 + np.exp(1j * k_plus * x0))
    G_minus = params.f * np.sin(theta / 2.0) * np.abs(1.0 + np.exp(1j * k_minus * x0))
    return _unwrap(G_plus), _unwrap(G_minus)


def dressed_pair(params: SystemParams) -> DressedPair:
    """Dressed frequencies, mixing angle and couplings at ``k = omega_pm / v_g``."""
    _require_three_level(params)
    omega_plus, omega_minus = dressed_frequencies(params.atom, params.drive)
    theta = mixing_angle(params.atom, params.drive)
    G_plus, G_minus = effective_couplings(params, omega_plus / params.v_g,
                                          omega_minus / params.v_g)
    return DressedPair(omega_plus, omega_minus, theta, G_plus, G_minus)


__all__ = [
    "DressedPair", "dressed_frequencies", "dressed_pair", "drive_detuning",
    "effective_couplings", "mixing_angle", "r2", "r2_dissipative",
    "scatter_three_level", "t2", "t2_dissipative", "three_level_kernel",
]
