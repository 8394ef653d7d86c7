"""Reference system: two identical small atoms at ``x = 0`` and ``x = x0``.

Only the transmission rate has a closed form here; complex amplitudes come
from :func:`giant_atom.oracle.oracle_amplitudes` with kind
``"two-small-atoms"``.
"""
from __future__ import annotations

import numpy as np

from .exceptions import ParameterError
from .params import SystemParams, check_energy
from .two_level import _unwrap


def T3(params: SystemParams, E):
    """Transmission rate of two lossless small atoms separated by ``x0``.

    Vanishes at ``E = omega_e`` for every separation, unlike the giant atom.
    """
    if params.is_three_level:
        raise ParameterError("small-atom reference takes two-level parameters")
    if not params.is_lossless:
        raise ParameterError("closed-form T3 is lossless only")
    E = check_energy(E)
    v = params.v_g
    f2 = np.asarray(params.f, dtype=float) ** 2
    phi = E / v * params.x0
    delta = E - params.omega_e
    num = (delta ** 2 * v) ** 2
    real = delta ** 2 * v - 2.0 * f2 ** 2 / v * np.sin(phi) ** 2
    imag = 2.0 * f2 * delta + f2 ** 2 / v * np.sin(2.0 * phi)
    den = real ** 2 + imag ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(den == 0, 0.0, num / np.where(den == 0, 1.0, den))
    return _unwrap(out)
