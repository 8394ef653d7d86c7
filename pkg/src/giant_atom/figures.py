"""Figure and table parameter sets, the dressed-coupling table and the
random-draw cross-check between closed forms and the matching system."""
from __future__ import annotations

import numpy as np

from .oracle import oracle_amplitudes
from .params import DEFAULT_OMEGA_E, SystemParams, drive_detuning
from .small_atoms import T3
from .three_level import dressed_pair, three_level_kernel
from .two_level import two_level_kernel

# (label, omega_d / omega_e, x0 [m], |G-|/f, |G+|/f) as tabulated.
TABLE_I = (
    ("A", 0.30, 1.48, 1.2069, 0.1783),
    ("B", 0.30, 2.43, 0.2574, 1.1892),
    ("C", 0.33, 3.98, 1.4813, 1.2469),
    ("D", 0.27, 3.98, 0.7944, 1.0316),
)
# Drive detuning column of the table, Delta2 / omega_e.
TABLE_I_DELTA2 = {"A": 0.0, "B": 0.0, "C": -0.03, "D": 0.03}


def table1_params(label, omega_e=DEFAULT_OMEGA_E, **overrides):
    row = {r[0]: r for r in TABLE_I}[label]
    kwargs = dict(omega_e=omega_e, x0=row[2], omega_d=row[1] * omega_e)
    kwargs.update(overrides)
    return SystemParams.three_level(**kwargs)


def table1():
    """Dressed couplings at ``k = omega_pm / v_g`` next to the tabulated values."""
    rows = []
    for label, _, x0, tab_minus, tab_plus in TABLE_I:
        params = table1_params(label)
        pair = dressed_pair(params)
        delta2 = drive_detuning(params) / params.omega_e
        g_minus = pair.G_minus_abs / params.f
        g_plus = pair.G_plus_abs / params.f
        rows.append({
            "line": label,
            "Delta2_over_omega_e": float(delta2),
            "x0": x0,
            "G_minus_over_f": float(g_minus),
            "G_plus_over_f": float(g_plus),
            "tabulated_G_minus_over_f": tab_minus,
            "tabulated_G_plus_over_f": tab_plus,
            "rel_dev_minus": float(g_minus / tab_minus - 1.0),
            "rel_dev_plus": float(g_plus / tab_plus - 1.0),
        })
    return rows


def random_draws(rng, n, kind, dissipative=False, omega_e=DEFAULT_OMEGA_E):
    """``(params, E)`` with array-valued parameters for ``n`` random draws.

    Ranges: g in [0.01, 0.1], x0 in [0, 10] m, Delta in [-0.02, 0.02] omega_e,
    eta in [0, 0.1] omega_e, omega_d in [0.25, 0.35] omega_e and, when
    dissipative, gamma_e and gamma_f in [0, 2e-3] omega_e.
    """
    g = rng.uniform(0.01, 0.1, n)
    x0 = rng.uniform(0.0, 10.0, n)
    E = omega_e * (1.0 + rng.uniform(-0.02, 0.02, n))
    gamma_e = omega_e * rng.uniform(0.0, 2e-3, n) if dissipative else 0.0
    if kind == "three-level":
        eta = omega_e * rng.uniform(0.0, 0.1, n)
        omega_d = omega_e * rng.uniform(0.25, 0.35, n)
        gamma_f = omega_e * rng.uniform(0.0, 2e-3, n) if dissipative else 0.0
        params = SystemParams.three_level(omega_e=omega_e, g=g, x0=x0, eta=eta,
                                          omega_d=omega_d, gamma_e=gamma_e, gamma_f=gamma_f)
    else:
        params = SystemParams.two_level(omega_e=omega_e, g=g, x0=x0, gamma_e=gamma_e)
    return params, E


def closed_form(kind, params, E):
    """Closed-form ``(t, r)``; ``r`` is ``None`` for two small atoms (rate only)."""
    if kind == "two-level":
        return two_level_kernel(E, params.x0, params.f, params.v_g, params.omega_e,
                                params.gamma_e)
    if kind == "three-level":
        delta = params.atom.omega_f + params.drive.omega_d
        return three_level_kernel(E, params.x0, params.f, params.v_g, params.omega_e,
                                  delta, params.drive.eta, params.gamma_e, params.gamma_f)
    return None, None


def oracle_check(draws=1000, seed=0):
    """Maximum closed-form vs oracle deviations for every kind.

    Two small atoms have only a lossless closed-form rate, compared as
    ``| |t|^2 - T3 |``.
    """
    rng = np.random.default_rng(seed)
    report = {}
    for kind in ("two-level", "three-level", "two-small-atoms"):
        for dissipative in (False, True):
            if kind == "two-small-atoms" and dissipative:
                continue
            params, E = random_draws(rng, draws, kind, dissipative)
            t_o, r_o = oracle_amplitudes(kind, params, E)
            key = f"{kind}{'-dissipative' if dissipative else ''}"
            if kind == "two-small-atoms":
                report[key] = {"rate": float(np.max(np.abs(np.abs(t_o) ** 2 - T3(params, E))))}
            else:
                t_c, r_c = closed_form(kind, params, E)
                report[key] = {"t": float(np.max(np.abs(t_c - t_o))),
                               "r": float(np.max(np.abs(r_c - r_o)))}
            if not dissipative:
                report[key]["unitarity"] = float(
                    np.max(np.abs(np.abs(t_o) ** 2 + np.abs(r_o) ** 2 - 1.0)))
    return report
