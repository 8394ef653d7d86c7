"""Brute-force scattering amplitudes from the boundary-matching linear system.

The stationary single-excitation equations are, for each coupling point
``x_j`` with atomic amplitude ``a_j`` attached to it::

    -i v_g d/dx phi_R + f a_j delta(x - x_j) = E phi_R
     i v_g d/dx phi_L + f a_j delta(x - x_j) = E phi_L

Integrating across ``x_j`` gives the jump conditions::

    -i v_g [phi_R(x_j+) - phi_R(x_j-)] + f a_j = 0
     i v_g [phi_L(x_j+) - phi_L(x_j-)] + f a_j = 0

With the plane-wave ansatz ``phi_R = e^{ikx}{1, A, t}`` and
``phi_L = e^{-ikx}{r, B, 0}`` on the three regions ``x < 0``,
``0 < x < x0`` and ``x > x0`` these are four linear rows in ``A, B, t, r``.
The atomic equations close the system; the field at a coupling point is the
mean of the two one-sided limits (step function equal to 1/2 at 0)::

    phi_R(0)  = (1 + A)/2         phi_L(0)  = (r + B)/2
    phi_R(x0) = e^{i phi}(A + t)/2  phi_L(x0) = e^{-i phi} B/2

Spontaneous emission enters as complex level energies
``omega -> omega - i gamma``.

Giant atoms attach the same amplitude to both points; two small atoms
attach ``u1`` at ``x = 0`` and ``u2`` at ``x = x0``.  The three-level atom
adds ``(E - delta + i gamma_f) lambda_f = eta lambda_e`` and the drive term
``eta lambda_f`` in the ``lambda_e`` row.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .exceptions import ParameterError, SingularSystemError
from .params import SystemParams, check_energy

KINDS = ("two-level", "three-level", "two-small-atoms")

UNKNOWNS = {
    "two-level": ("A", "B", "t", "r", "u_e"),
    "three-level": ("A", "B", "t", "r", "lambda_e", "lambda_f"),
    "two-small-atoms": ("A", "B", "t", "r", "u_1", "u_2"),
}

CONDITION_WARN = 1e12
RESIDUAL_RTOL = 1e-12


@dataclass(frozen=True)
class MatchingSystem:
    kind: str
    matrix: np.ndarray
    rhs: np.ndarray
    unknowns: Tuple[str, ...]

    @property
    def size(self):
        return self.matrix.shape[-1]


def assemble(kind: str, params: SystemParams, E) -> MatchingSystem:
    """Build the matching system; parameter and energy arrays broadcast."""
    if kind not in KINDS:
        raise ParameterError(f"unknown system kind {kind!r}; expected one of {KINDS}")
    if (kind == "three-level") != params.is_three_level:
        raise ParameterError(f"parameters do not describe a {kind} system")
    E = check_energy(E)

    v = np.asarray(params.v_g, dtype=float)
    f = np.asarray(params.f, dtype=float)
    omega_e = np.asarray(params.omega_e, dtype=float)
    gamma_e = np.asarray(params.gamma_e, dtype=float)
    phi = E / v * np.asarray(params.x0, dtype=float)
    extra = [v, f, omega_e, gamma_e, phi]
    if kind == "three-level":
        delta = np.asarray(params.atom.omega_f + params.drive.omega_d, dtype=float)
        eta = np.asarray(params.drive.eta, dtype=float)
        gamma_f = np.asarray(params.atom.gamma_f, dtype=float)
        extra += [delta, eta, gamma_f]
    shape = np.broadcast_shapes(E.shape, *(a.shape for a in extra))

    n = len(UNKNOWNS[kind])
    M = np.zeros(shape + (n, n), dtype=complex)
    b = np.zeros(shape + (n,), dtype=complex)
    fwd = np.exp(1j * phi) * np.ones(shape)
    back = np.exp(-1j * phi) * np.ones(shape)
    f = f * np.ones(shape)
    v = v * np.ones(shape)
    detuning = E - omega_e + 1j * gamma_e

    A, B, t, r = 0, 1, 2, 3
    at_zero, at_x0 = (4, 4) if kind != "two-small-atoms" else (4, 5)

    # right-moving jump at 0 and x0
    M[..., 0, A] = -1j * v
    M[..., 0, at_zero] = f
    b[..., 0] = -1j * v
    M[..., 1, A] = 1j * v * fwd
    M[..., 1, t] = -1j * v * fwd
    M[..., 1, at_x0] = f
    # left-moving jump at 0 and x0
    M[..., 2, B] = 1j * v
    M[..., 2, r] = -1j * v
    M[..., 2, at_zero] = f
    M[..., 3, B] = -1j * v * back
    M[..., 3, at_x0] = f

    if kind == "two-small-atoms":
        # (E - omega_e) u1 = f [phi_R(0) + phi_L(0)]
        M[..., 4, A] = -f / 2
        M[..., 4, B] = -f / 2
        M[..., 4, r] = -f / 2
        M[..., 4, 4] = detuning
        b[..., 4] = f / 2
        # (E - omega_e) u2 = f [phi_R(x0) + phi_L(x0)]
        M[..., 5, A] = -f * fwd / 2
        M[..., 5, t] = -f * fwd / 2
        M[..., 5, B] = -f * back / 2
        M[..., 5, 5] = detuning
    else:
        # (E - omega_e) u = f N  (+ eta lambda_f)
        M[..., 4, A] = -f * (1 + fwd) / 2
        M[..., 4, B] = -f * (1 + back) / 2
        M[..., 4, t] = -f * fwd / 2
        M[..., 4, r] = -f / 2
        M[..., 4, 4] = detuning
        b[..., 4] = f / 2
        if kind == "three-level":
            M[..., 4, 5] = -eta
            M[..., 5, 4] = -eta
            M[..., 5, 5] = E - delta + 1j * gamma_f
    return MatchingSystem(kind, M, b, UNKNOWNS[kind])


def solve(ms: MatchingSystem) -> dict:
    """LU solve with partial pivoting; returns ``{label: value}``."""
    M, b = ms.matrix, ms.rhs
    # Scale columns to unit norm so the condition estimate is not dominated
    # by the mixed units of field and atomic amplitudes.
    scale = np.linalg.norm(M, axis=-2, keepdims=True)
    scale = np.where(scale == 0, 1.0, scale)
    Ms = M / scale
    cond = np.linalg.cond(Ms)
    worst = float(np.max(cond)) if cond.size else 0.0
    if not np.isfinite(worst) or worst > 1.0 / np.finfo(float).eps:
        raise SingularSystemError(
            f"{ms.kind} matching system is singular (condition ~ {worst:.3g})", worst)
    if worst > CONDITION_WARN:
        warnings.warn(f"{ms.kind} matching system is ill-conditioned "
                      f"(condition ~ {worst:.3g})", RuntimeWarning, stacklevel=2)
    try:
        y = np.linalg.solve(Ms, b[..., None])[..., 0]
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(str(exc), worst) from exc
    x = y / scale[..., 0, :]
    residual = np.linalg.norm(np.einsum("...ij,...j->...i", M, x) - b, axis=-1)
    bound = RESIDUAL_RTOL * np.linalg.norm(b, axis=-1)
    if np.any(residual > bound):
        raise SingularSystemError(
            f"{ms.kind} residual {float(np.max(residual)):.3g} exceeds tolerance", worst)
    out = {}
    for i, label in enumerate(ms.unknowns):
        value = x[..., i]
        out[label] = value[()] if value.ndim == 0 else value
    return out


def oracle_amplitudes(kind: str, params: SystemParams, E):
    """``(t, r)`` from the matching system.

    Two small atoms at the same point (``x0 = 0``) leave the atomic
    amplitudes underdetermined; only the symmetric combination couples, so
    that case is a single point with coupling ``f * sqrt(2)`` per atom pair.
    """
    if kind == "two-small-atoms":
        x0 = np.asarray(params.x0, dtype=float)
        coincident = x0 == 0
        if np.any(coincident):
            return _coincident_small_atoms(params, E, coincident)
    sol = solve(assemble(kind, params, E))
    return sol["t"], sol["r"]


def _coincident_small_atoms(params, E, coincident):
    from .two_level import two_level_kernel

    # Spread x0 = 0 by any positive length; those entries are replaced below.
    safe = params.with_x0(np.where(coincident, 1.0, params.x0))
    sol = solve(assemble("two-small-atoms", safe, E))
    # A giant atom at x0 = 0 couples with 2 f at one point; sqrt(2) f needs f / sqrt(2).
    t0, r0 = two_level_kernel(E, 0.0, np.asarray(params.f) / np.sqrt(2.0), params.v_g,
                              params.omega_e, params.gamma_e)
    return np.where(coincident, t0, sol["t"]), np.where(coincident, r0, sol["r"])
