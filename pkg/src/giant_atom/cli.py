"""Command-line front end.

Subcommands: ``spectrum``, ``resonance``, ``dressed``, ``table1`` and
``oracle-check``.  Exit codes: 0 ok, 1 I/O error, 2 invalid input,
3 solver failure (no convergence, singular system, oracle mismatch).

Frequencies other than ``omega_e`` are read as multiples of ``omega_e`` when
bare (``--omega-d 0.3``) or with the ``we`` suffix (``0.3we``); absolute
values in rad/s take the ``rad`` suffix (``9e8rad``).  Sweeps are written
``lo:hi:points``.  A config file holds flat ``key=value`` lines with ``#``
comments; command-line flags override it.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .exceptions import (
    NoConvergenceError,
    ParameterError,
    SingularSystemError,
)
from .figures import oracle_check, table1
from .params import DEFAULT_G, DEFAULT_OMEGA_E, DEFAULT_V_G, SystemParams, drive_detuning
from .resonance import (
    DEFAULT_SCAN_POINTS,
    complete_reflection_detunings,
    fit_shift_amplitude,
    one_period_samples,
    shift_period,
)
from .spectrum import (
    Axis,
    SweepSpec,
    compute_spectrum,
    rows_to_csv,
    rows_to_json,
    stamp,
    to_csv,
    to_json,
)
from .three_level import dressed_pair

ORACLE_TOL = 1e-10

DEFAULT_DELTA = {
    "two-level": "-0.02:0.02:2001",
    "two-small-atoms": "-0.02:0.02:2001",
    "three-level": "-0.15:0.15:2001",
}
DEFAULT_X0 = "1.0"
# Line A of the dressed-coupling table.
DEFAULT_X0_THREE_LEVEL = "1.48"

CONFIG_KEYS = {
    "omega_e", "v_g", "g", "f", "x0", "omega_f", "eta", "omega_d", "gamma_e",
    "gamma_f", "delta", "energy", "dissipative", "g_sweep", "scan_points",
    "draws", "output", "format", "seed", "kind",
}
ALIASES = {"we": "omega_e", "vg": "v_g", "wf": "omega_f", "wd": "omega_d"}


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


# -- value parsing --------------------------------------------------------------

def parse_float(text, name):
    try:
        return float(text)
    except (TypeError, ValueError):
        raise ParameterError(f"{name}: cannot parse {text!r} as a number") from None


def parse_frequency(text, omega_e, name="frequency"):
    """``0.3``/``0.3we`` -> 0.3 omega_e; ``9e8rad`` -> 9e8 rad/s."""
    text = str(text).strip()
    if text.endswith("we"):
        return parse_float(text[:-2], name) * omega_e
    if text.endswith("rad"):
        return parse_float(text[:-3], name)
    return parse_float(text, name) * omega_e


def parse_absolute(text, name):
    text = str(text).strip()
    if text.endswith("rad"):
        text = text[:-3]
    return parse_float(text, name)


def is_sweep(text):
    return ":" in str(text)


def parse_sweep(text, convert, name):
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ParameterError(f"{name}: sweep must be lo:hi:points, got {text!r}")
    try:
        points = int(parts[2])
    except ValueError:
        raise ParameterError(f"{name}: point count must be an integer") from None
    return convert(parts[0]), convert(parts[1]), points


def parse_bool(text):
    if isinstance(text, bool):
        return text
    value = str(text).strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ParameterError(f"cannot parse {text!r} as a boolean")


def read_config(path):
    """Flat ``key=value`` file; unknown keys are errors."""
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}", 1) from exc
    out = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        key = ALIASES.get(key, key)
        if not sep:
            raise ParameterError(f"{path}:{lineno}: expected key=value")
        if key not in CONFIG_KEYS:
            raise ParameterError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value.strip()
    return out


# -- parser -------------------------------------------------------------------

def _add_common(parser, default):
    parser.add_argument("--config", default=default, help="key=value config file")
    parser.add_argument("--output", default=default, help="output path (default stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default=default)
    parser.add_argument("--seed", default=default, help="RNG seed for oracle-check")


def _add_physics(parser):
    s = argparse.SUPPRESS
    parser.add_argument("--omega-e", "--we", dest="omega_e", default=s,
                        help="transition frequency in rad/s (default 3e9)")
    parser.add_argument("--v-g", "--vg", dest="v_g", default=s, help="group velocity, m/s")
    parser.add_argument("--g", dest="g", default=s, help="coupling ratio f/sqrt(v_g omega_e)")
    parser.add_argument("--f", dest="f", default=s, help="raw coupling (overrides --g)")
    parser.add_argument("--omega-f", "--wf", dest="omega_f", default=s)
    parser.add_argument("--eta", dest="eta", default=s)
    parser.add_argument("--omega-d", "--wd", dest="omega_d", default=s)
    parser.add_argument("--gamma-e", dest="gamma_e", default=s)
    parser.add_argument("--gamma-f", dest="gamma_f", default=s)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="giant-atom",
        description="Single-photon scattering spectra of giant atoms in a waveguide.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_common(parser, None)
    sub = parser.add_subparsers(dest="command", required=True)
    s = argparse.SUPPRESS

    p = sub.add_parser("spectrum", help="transmission/reflection sweep")
    p.add_argument("kind", choices=("two-level", "three-level", "two-small-atoms"))
    p.add_argument("--delta", default=s, help="detuning sweep lo:hi:points (units of omega_e)")
    p.add_argument("--energy", default=s, help="photon-energy sweep lo:hi:points")
    p.add_argument("--x0", default=s, help="size in m, scalar or lo:hi:points")
    p.add_argument("--dissipative", action="store_const", const="true", default=s)
    _add_physics(p)
    _add_common(p, s)

    p = sub.add_parser("resonance", help="complete-reflection detunings and shift fit")
    p.add_argument("--x0", default=s, help="size sweep lo:hi:points or a single value "
                                            "(default one period, 64 points)")
    p.add_argument("--g-sweep", dest="g_sweep", default=s,
                   help="fit S for each coupling ratio in lo:hi:points")
    p.add_argument("--scan-points", dest="scan_points", default=s)
    _add_physics(p)
    _add_common(p, s)

    p = sub.add_parser("dressed", help="dressed frequencies, mixing angle, couplings")
    p.add_argument("--x0", default=s)
    _add_physics(p)
    _add_common(p, s)

    p = sub.add_parser("table1", help="dressed couplings for the four tabulated lines")
    _add_common(p, s)

    p = sub.add_parser("oracle-check", help="closed forms vs matching-system oracle")
    p.add_argument("--draws", default=s, help="random draws per system kind (default 1000)")
    _add_common(p, s)
    return parser


def gather_settings(args):
    """Merge config file entries with explicit flags (flags win)."""
    settings = {}
    if getattr(args, "config", None):
        settings.update(read_config(args.config))
    for key, value in vars(args).items():
        if key in ("config", "command") or value is None:
            continue
        settings[key] = value
    return settings


def _default_x0(three_level):
    return DEFAULT_X0_THREE_LEVEL if three_level else DEFAULT_X0


def build_params(settings, three_level):
    omega_e = parse_absolute(settings.get("omega_e", DEFAULT_OMEGA_E), "omega_e")
    v_g = parse_absolute(settings.get("v_g", DEFAULT_V_G), "v_g")
    g = parse_float(settings.get("g", DEFAULT_G), "g")
    f = parse_float(settings["f"], "f") if "f" in settings else None
    x0 = settings.get("x0", _default_x0(three_level))
    x0 = 0.0 if is_sweep(x0) else parse_float(x0, "x0")
    freq = lambda key: (parse_frequency(settings[key], omega_e, key)  # noqa: E731
                        if key in settings else None)
    gamma_e = freq("gamma_e") or 0.0
    if three_level:
        return SystemParams.three_level(omega_e=omega_e, v_g=v_g, g=g, f=f, x0=x0,
                                        omega_f=freq("omega_f"), eta=freq("eta"),
                                        omega_d=freq("omega_d"), gamma_e=gamma_e,
                                        gamma_f=freq("gamma_f") or 0.0)
    for key in ("omega_f", "eta", "omega_d", "gamma_f"):
        if key in settings:
            raise ParameterError(f"{key} only applies to the three-level atom")
    return SystemParams.two_level(omega_e=omega_e, v_g=v_g, g=g, f=f, x0=x0,
                                  gamma_e=gamma_e)


def emit(text, settings):
    path = settings.get("output")
    if not path:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", 1) from exc


def _format(settings):
    fmt = settings.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ParameterError("format must be csv or json")
    return fmt


def _render(settings, metadata, columns):
    if _format(settings) == "json":
        return rows_to_json(metadata, columns)
    return rows_to_csv(metadata, columns)


# -- commands -----------------------------------------------------------------

def cmd_spectrum(settings):
    kind = settings.get("kind")
    params = build_params(settings, kind == "three-level")
    omega_e = params.omega_e
    to_freq = lambda text: parse_frequency(text, omega_e)  # noqa: E731
    axes = []
    x0 = settings.get("x0", _default_x0(kind == "three-level"))
    if is_sweep(x0):
        axes.append(Axis("x0", *parse_sweep(x0, lambda t: parse_float(t, "x0"), "x0")))
    if "delta" in settings and "energy" in settings:
        raise ParameterError("give either --delta or --energy, not both")
    if "energy" in settings:
        axes.append(Axis("E", *parse_sweep(settings["energy"], to_freq, "energy")))
    else:
        delta = settings.get("delta", DEFAULT_DELTA[kind])
        axes.append(Axis("Delta", *parse_sweep(delta, to_freq, "delta")))
    spec = SweepSpec(kind=kind, axis1=axes[0], axis2=axes[1] if len(axes) > 1 else None,
                     fixed=params, dissipative=parse_bool(settings.get("dissipative", False)),
                     output_path=settings.get("output"), format=_format(settings))
    grid = compute_spectrum(spec)
    emit(to_json(grid) if spec.format == "json" else to_csv(grid), settings)
    return 0


def _scan_points(settings):
    n = int(parse_float(settings.get("scan_points", DEFAULT_SCAN_POINTS), "scan_points"))
    if n < 2:
        raise ParameterError("scan_points must be at least 2")
    return n


def cmd_resonance(settings):
    params = build_params(settings, three_level=False)
    scan = _scan_points(settings)
    Gamma = 2.0 * params.f ** 2 / params.v_g
    meta = {"command": "resonance"}
    meta.update(params.as_dict())
    meta.pop("x0")
    meta["Gamma"] = Gamma
    meta["scan_points"] = scan

    if "g_sweep" in settings:
        lo, hi, n = parse_sweep(settings["g_sweep"], lambda t: parse_float(t, "g"), "g_sweep")
        if n < 2 or not lo < hi:
            raise ParameterError("g_sweep needs lo < hi and at least 2 points")
        gs = np.linspace(lo, hi, n)
        samples = one_period_samples(params)
        f_values = gs * np.sqrt(params.v_g * params.omega_e)
        S = np.array([fit_shift_amplitude(params.with_f(f), samples, scan).S for f in f_values])
        Gammas = 2.0 * f_values ** 2 / params.v_g
        f2 = f_values ** 2
        coeff = float(np.dot(S, f2) / np.dot(f2, f2))
        meta.pop("g")
        meta.pop("f")
        meta.pop("Gamma")
        meta.update(quadratic_coefficient=coeff, expected_coefficient=2.0 / params.v_g,
                    x0_samples=len(samples))
        columns = {"g": gs, "f": f_values, "S": S, "Gamma": Gammas, "S_over_Gamma": S / Gammas}
        emit(_render(settings, stamp(meta), columns), settings)
        return 0

    x0_text = settings.get("x0")
    if x0_text is None:
        x0s = one_period_samples(params)
    elif is_sweep(x0_text):
        lo, hi, n = parse_sweep(x0_text, lambda t: parse_float(t, "x0"), "x0")
        Axis("x0", lo, hi, n)
        x0s = np.linspace(lo, hi, n)
    else:
        x0s = np.array([parse_float(x0_text, "x0")])
    if np.any(x0s < 0):
        raise ParameterError("x0 must be non-negative")

    wavenumber = params.omega_e / params.v_g
    fit = None
    if x0s.size >= 8 and np.ptp(x0s) >= shift_period(params) * (1 - 1e-9):
        fit = fit_shift_amplitude(params, x0s, scan)
    amplitude = fit.S if fit is not None else Gamma
    delta_r, residual, counts = [], [], []
    for x0 in x0s:
        roots = complete_reflection_detunings(params, x0, scan)
        chosen = roots.nearest(amplitude * np.sin(wavenumber * x0))
        counts.append(len(roots))
        if chosen is None:
            delta_r.append(None)
            residual.append(None)
        else:
            delta_r.append(chosen)
            residual.append(dict(roots.roots)[chosen])
    meta["S"] = fit.S if fit is not None else None
    meta["fit_rms"] = fit.rms_residual if fit is not None else None
    columns = {"x0": x0s, "Delta_r": delta_r, "residual": residual,
               "n_roots": np.array(counts)}
    emit(_render(settings, stamp(meta), columns), settings)
    return 0


def cmd_dressed(settings):
    params = build_params(settings, three_level=True)
    pair = dressed_pair(params)
    doc = {
        "omega_plus": float(pair.omega_plus),
        "omega_minus": float(pair.omega_minus),
        "theta": float(pair.theta),
        "G_plus_abs": float(pair.G_plus_abs),
        "G_minus_abs": float(pair.G_minus_abs),
        "G_plus_over_f": float(pair.G_plus_abs / params.f) if params.f else None,
        "G_minus_over_f": float(pair.G_minus_abs / params.f) if params.f else None,
        "Delta2": float(drive_detuning(params)),
        "parameters": params.as_dict(),
    }
    emit(json.dumps(doc, indent=1) + "\n", settings)
    return 0


def cmd_table1(settings):
    rows = table1()
    columns = {key: [row[key] for row in rows] for key in rows[0]}
    meta = stamp({"command": "table1", "k_convention": "omega_pm/v_g"})
    emit(_render(settings, meta, columns), settings)
    return 0


def cmd_oracle_check(settings):
    draws = int(parse_float(settings.get("draws", 1000), "draws"))
    seed = int(parse_float(settings.get("seed", 0), "seed"))
    if draws < 1:
        raise ParameterError("draws must be positive")
    report = oracle_check(draws, seed)
    cases, metrics, values = [], [], []
    for case, entry in report.items():
        for metric, value in entry.items():
            cases.append(case)
            metrics.append(metric)
            values.append(value)
    passed = all(v <= ORACLE_TOL for v in values)
    meta = stamp({"command": "oracle-check", "draws": draws, "seed": seed,
                  "tolerance": ORACLE_TOL, "passed": passed})
    emit(_render(settings, meta, {"case": cases, "metric": metrics, "max_deviation": values}),
         settings)
    if not passed:
        raise CliError("closed forms and oracle disagree beyond tolerance", 3)
    return 0


COMMANDS = {
    "spectrum": cmd_spectrum,
    "resonance": cmd_resonance,
    "dressed": cmd_dressed,
    "table1": cmd_table1,
    "oracle-check": cmd_oracle_check,
}


VALUE_FLAGS = ("--delta", "--energy", "--x0", "--g-sweep")


def join_negative_values(argv):
    """``--delta -0.02:0.02:2001`` -> ``--delta=-0.02:0.02:2001``.

    argparse otherwise reads a leading minus as the start of another option.
    """
    out = []
    i = 0
    while i < len(argv):
        token = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if token in VALUE_FLAGS and nxt is not None and nxt.startswith("-") and ":" in nxt:
            out.append(f"{token}={nxt}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(join_negative_values(argv))
    try:
        settings = gather_settings(args)
        return COMMANDS[args.command](settings)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NoConvergenceError, SingularSystemError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
