"""Complete-reflection detunings, three-level valley energies and the
sinusoidal fit of the size-dependent frequency shift.

Both root problems are scanned for sign changes on a uniform grid and each
bracketed root is refined by bisection.  Roots closer together than the scan
step can merge; raise ``scan_points`` if that matters.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import IllConditionedFitError, NoConvergenceError, ParameterError
from .params import SystemParams, drive_detuning
from .three_level import dressed_frequencies

DEFAULT_SCAN_POINTS = 10_000
BISECT_RTOL = 1e-12
RESIDUAL_RTOL = 1e-9


@dataclass(frozen=True)
class RootSet:
    """Sorted roots with their residuals (both in rad/s)."""

    roots: List[Tuple[float, float]]
    bracket: Tuple[float, float]
    scan_points: int

    @property
    def values(self):
        return np.array([v for v, _ in self.roots])

    @property
    def residuals(self):
        return np.array([res for _, res in self.roots])

    def __len__(self):
        return len(self.roots)

    def nearest(self, target):
        """Root closest to ``target``; ``None`` for an empty set."""
        if not self.roots:
            return None
        values = self.values
        return float(values[np.argmin(np.abs(values - target))])


@dataclass(frozen=True)
class ShiftFit:
    S: float
    samples: List[Tuple[float, float]]
    rms_residual: float
    wavenumber: float = field(default=0.0)

    def predict(self, x0):
        return self.S * np.sin(self.wavenumber * np.asarray(x0))


def bisect(func, lo, hi, xtol, max_iter=200):
    """Vectorised bisection over independent brackets ``[lo, hi]``.

    ``func(lo)`` and ``func(hi)`` must differ in sign (or vanish) elementwise.
    The final bracket is closed with one false-position step.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    f_lo = func(lo)
    f_hi = func(hi)
    for _ in range(max_iter):
        if np.all(hi - lo <= xtol):
            break
        mid = 0.5 * (lo + hi)
        f_mid = func(mid)
        left = np.sign(f_mid) == np.sign(f_lo)
        lo = np.where(left, mid, lo)
        f_lo = np.where(left, f_mid, f_lo)
        hi = np.where(left, hi, mid)
        f_hi = np.where(left, f_hi, f_mid)
    else:
        raise NoConvergenceError("bisection did not reach the requested tolerance")
    span = f_hi - f_lo
    with np.errstate(divide="ignore", invalid="ignore"):
        step = np.where(span != 0, -f_lo / span, 0.5)
    return lo + np.clip(step, 0.0, 1.0) * (hi - lo)


def scan_roots(func, lo, hi, scan_points, xtol):
    """All sign-change roots of ``func`` on ``[lo, hi]``, ascending."""
    grid = np.linspace(lo, hi, int(scan_points))
    values = func(grid)
    exact = grid[values == 0]
    signs = np.sign(values)
    change = (signs[:-1] * signs[1:]) < 0
    found = bisect(func, grid[:-1][change], grid[1:][change], xtol) if np.any(change) else np.empty(0)
    roots = np.sort(np.concatenate([exact, found]))
    if roots.size > 1:
        keep = np.concatenate([[True], np.diff(roots) > xtol])
        roots = roots[keep]
    return roots


def _scalar_params(params, x0):
    x0 = params.x0 if x0 is None else x0
    if np.ndim(x0) or np.ndim(params.f) or np.ndim(params.omega_e) or np.ndim(params.v_g):
        raise ParameterError("root solvers take scalar parameters")
    if x0 < 0:
        raise ParameterError("x0 must be non-negative")
    return float(x0)


def reflection_residual(params: SystemParams, delta, x0=None):
    """``Delta - (2 f^2 / v_g) sin((omega_e + Delta) x0 / v_g)``."""
    x0 = params.x0 if x0 is None else x0
    v = params.v_g
    Gamma = 2.0 * params.f ** 2 / v
    return delta - Gamma * np.sin((params.omega_e + delta) * x0 / v)


def complete_reflection_detunings(params: SystemParams, x0=None,
                                  scan_points=DEFAULT_SCAN_POINTS) -> RootSet:
    """Detunings ``Delta_r`` at which the lossless two-level atom fully reflects.

    Solves ``Delta = (2 f^2/v_g) sin(k x0)`` with ``k = (omega_e + Delta)/v_g``
    over the band ``|Delta| <= 2 f^2 / v_g``, outside which no solution exists.
    """
    x0 = _scalar_params(params, x0)
    Gamma = 2.0 * params.f ** 2 / params.v_g
    if Gamma == 0:
        return RootSet([(0.0, 0.0)], (0.0, 0.0), int(scan_points))

    def residual(delta):
        return reflection_residual(params, delta, x0)

    roots = scan_roots(residual, -Gamma, Gamma, scan_points, BISECT_RTOL * params.omega_e)
    return RootSet([(float(d), float(abs(residual(d)))) for d in roots],
                   (-Gamma, Gamma), int(scan_points))


def valley_residual(params: SystemParams, E, branch, x0=None):
    """``E - E_branch(E)`` for the implicit complete-reflection condition.

    ``branch`` is +1 for the upper (``E+``) and -1 for the lower valley.
    """
    x0 = params.x0 if x0 is None else x0
    v = params.v_g
    delta2 = drive_detuning(params)
    shift = params.f ** 2 * np.sin(E * x0 / v) / v
    root = np.sqrt((delta2 + 2.0 * shift) ** 2 + 4.0 * params.drive.eta ** 2)
    return E - (params.omega_e + shift - delta2 / 2.0 + branch * root / 2.0)


def valley_energies(params: SystemParams, x0=None,
                    scan_points=DEFAULT_SCAN_POINTS) -> Tuple[RootSet, RootSet]:
    """Transmission-valley energies ``(E-, E+)`` of the driven three-level atom."""
    if not params.is_three_level:
        raise ParameterError("valley energies need three-level parameters")
    x0 = _scalar_params(params, x0)
    if not params.drive.eta > 0:
        raise ParameterError("valley energies need eta > 0")
    omega_plus, omega_minus = dressed_frequencies(params.atom, params.drive)
    half_width = 3.0 * params.f ** 2 / params.v_g
    xtol = BISECT_RTOL * params.omega_e

    out = []
    for branch, centre in ((-1, omega_minus), (+1, omega_plus)):
        if half_width == 0:
            out.append(RootSet([(float(centre), 0.0)], (float(centre), float(centre)),
                               int(scan_points)))
            continue

        def residual(E, branch=branch):
            return valley_residual(params, E, branch, x0)

        for widen in (1.0, 3.0):
            lo, hi = centre - widen * half_width, centre + widen * half_width
            roots = scan_roots(residual, lo, hi, scan_points, xtol)
            if roots.size:
                break
        else:
            raise NoConvergenceError(
                f"no {'+' if branch > 0 else '-'} valley in [{lo:.6g}, {hi:.6g}]")
        out.append(RootSet([(float(E), float(abs(residual(E)))) for E in roots],
                           (float(lo), float(hi)), int(scan_points)))
    return out[0], out[1]


def sine_amplitude_lstsq(x, y, wavenumber):
    """Closed-form least squares for ``y ~ S sin(wavenumber x)``.

    Returns ``(S, rms_residual)``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    s = np.sin(wavenumber * x)
    norm = np.dot(s, s)
    if norm <= s.size * 1e-20:
        raise IllConditionedFitError("all samples sit on nodes of the sine")
    S = float(np.dot(y, s) / norm)
    rms = float(np.sqrt(np.mean((y - S * s) ** 2)))
    return S, rms


def shift_period(params: SystemParams):
    """Period ``2 pi v_g / omega_e`` of the shift in ``x0``."""
    return 2.0 * np.pi * params.v_g / params.omega_e


def fit_shift_amplitude(params: SystemParams, x0_samples: Sequence[float],
                        scan_points=DEFAULT_SCAN_POINTS) -> ShiftFit:
    """Fit ``Delta_r(x0) ~ S sin(omega_e x0 / v_g)`` over the given sizes.

    Where several complete-reflection roots exist the one closest to
    ``(2 f^2 / v_g) sin(omega_e x0 / v_g)`` is used.
    """
    x0_samples = np.asarray(x0_samples, dtype=float)
    if x0_samples.size < 8:
        raise ParameterError("need at least 8 x0 samples")
    period = shift_period(params)
    if np.ptp(x0_samples) < period * (1.0 - 1e-9):
        raise ParameterError("x0 samples must span at least one period 2 pi v_g / omega_e")
    wavenumber = params.omega_e / params.v_g
    Gamma = 2.0 * params.f ** 2 / params.v_g
    samples = []
    for x0 in x0_samples:
        roots = complete_reflection_detunings(params, x0, scan_points)
        chosen = roots.nearest(Gamma * np.sin(wavenumber * x0))
        if chosen is None:
            raise NoConvergenceError(f"no complete-reflection detuning at x0 = {x0}")
        samples.append((float(x0), chosen))
    xs, ys = zip(*samples)
    S, rms = sine_amplitude_lstsq(xs, ys, wavenumber)
    return ShiftFit(S=S, samples=samples, rms_residual=rms, wavenumber=wavenumber)


def one_period_samples(params: SystemParams, n=64):
    """``n`` sizes evenly covering ``[0, 2 pi v_g / omega_e]``."""
    return np.linspace(0.0, shift_period(params), n)
