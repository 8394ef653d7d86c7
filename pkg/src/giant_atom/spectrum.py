"""Rectangular spectrum sweeps and their CSV / JSON serialization.

CSV layout::

    # key=value key=value ...        (metadata, single line)
    col1,col2,...                    (column header)
    v1,v2,...                        (rows, axis order: axis1 outer)

Only the metadata line carries a timestamp, so identical sweeps produce
identical data sections byte for byte.
"""
from __future__ import annotations

import datetime as _dt
import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import __version__
from .exceptions import ParameterError
from .oracle import oracle_amplitudes
from .params import SystemParams
from .small_atoms import T3
from .three_level import three_level_kernel
from .two_level import two_level_kernel

KINDS = ("two-level", "three-level", "two-small-atoms")
AXIS_NAMES = ("Delta", "x0", "E")
VALUE_COLUMNS = ("T", "R", "t_re", "t_im", "r_re", "r_im")


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    points: int

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ParameterError(f"unknown axis {self.name!r}; expected one of {AXIS_NAMES}")
        if int(self.points) != self.points or self.points < 2:
            raise ParameterError(f"axis {self.name} needs at least 2 points")
        if not self.lo < self.hi:
            raise ParameterError(f"axis {self.name} needs lo < hi")

    @property
    def values(self):
        return np.linspace(self.lo, self.hi, int(self.points))

    def describe(self):
        return f"{self.lo!r}:{self.hi!r}:{int(self.points)}"


@dataclass(frozen=True)
class SweepSpec:
    kind: str
    axis1: Axis
    fixed: SystemParams
    axis2: Optional[Axis] = None
    dissipative: bool = False
    output_path: Optional[str] = None
    format: str = "csv"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParameterError(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if (self.kind == "three-level") != self.fixed.is_three_level:
            raise ParameterError(f"parameters do not describe a {self.kind} system")
        if self.format not in ("csv", "json"):
            raise ParameterError("format must be csv or json")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise ParameterError("axis names must be distinct")
        if {"Delta", "E"} <= set(names):
            raise ParameterError("Delta and E describe the same axis")
        if "x0" not in names and np.ndim(self.fixed.x0):
            raise ParameterError("fixed x0 must be a scalar")

    @property
    def axes(self):
        return [a for a in (self.axis1, self.axis2) if a is not None]


@dataclass
class SpectrumGrid:
    axes: List[Tuple[str, np.ndarray]]
    columns: Dict[str, np.ndarray]
    metadata: Dict[str, object] = field(default_factory=dict)

    @property
    def column_names(self):
        return list(self.columns)

    def __len__(self):
        return len(next(iter(self.columns.values())))


def amplitudes(kind, params: SystemParams, E, dissipative=False):
    """``(t, r, T)`` for any system kind; arrays broadcast.

    Without ``dissipative`` all loss rates are ignored.
    """
    if not dissipative:
        params = params.lossless()
    v, f, x0, omega_e = params.v_g, params.f, params.x0, params.omega_e
    if kind == "two-level":
        t, r = two_level_kernel(E, x0, f, v, omega_e, params.gamma_e)
        return t, r, np.abs(t) ** 2
    if kind == "three-level":
        delta = params.atom.omega_f + params.drive.omega_d
        t, r = three_level_kernel(E, x0, f, v, omega_e, delta, params.drive.eta,
                                  params.gamma_e, params.gamma_f)
        return t, r, np.abs(t) ** 2
    if kind == "two-small-atoms":
        t, r = oracle_amplitudes("two-small-atoms", params, E)
        T = T3(params, E) if params.is_lossless else np.abs(t) ** 2
        return t, r, np.broadcast_to(T, np.shape(t))
    raise ParameterError(f"unknown kind {kind!r}")


def compute_spectrum(spec: SweepSpec) -> SpectrumGrid:
    """Evaluate every grid point of ``spec`` (vectorised, deterministic order)."""
    axes = spec.axes
    mesh = np.meshgrid(*[a.values for a in axes], indexing="ij")
    coords = {a.name: m.ravel() for a, m in zip(axes, mesh)}
    params = spec.fixed
    omega_e = params.omega_e
    if "E" in coords:
        E = coords["E"]
    elif "Delta" in coords:
        E = omega_e + coords["Delta"]
    else:
        raise ParameterError("sweep needs a Delta or E axis")
    if np.any(E <= 0):
        raise ParameterError("sweep reaches non-positive photon energies")
    if "x0" in coords:
        if np.any(coords["x0"] < 0):
            raise ParameterError("x0 must be non-negative")
        params = params.with_x0(coords["x0"])
    t, r, T = amplitudes(spec.kind, params, E, spec.dissipative)

    columns = {}
    for a in axes:
        columns[a.name] = coords[a.name]
    if "E" not in columns:
        columns["E"] = E
    if "Delta" not in columns:
        columns["Delta"] = E - omega_e
    columns.update(T=np.asarray(T, dtype=float), R=np.abs(r) ** 2,
                   t_re=t.real, t_im=t.imag, r_re=r.real, r_im=r.imag)
    for name, col in columns.items():
        if not np.all(np.isfinite(col)):
            raise ParameterError(f"non-finite values in column {name}")

    meta = {"command": "spectrum", "kind": spec.kind, "dissipative": spec.dissipative}
    meta.update({f"axis_{a.name}": a.describe() for a in axes})
    meta.update(spec.fixed.as_dict())
    meta["kind"] = spec.kind
    if "x0" in coords:
        meta.pop("x0", None)
    return SpectrumGrid([(a.name, a.values) for a in axes], columns, stamp(meta))


def stamp(meta):
    meta = dict(meta)
    meta["version"] = __version__
    meta["timestamp"] = _dt.datetime.now(_dt.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    return meta


# -- serialization ------------------------------------------------------------

def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def format_metadata(meta):
    parts = []
    for key, value in meta.items():
        text = _fmt(value)
        if any(c.isspace() for c in text):
            raise ValueError(f"metadata value for {key!r} contains whitespace")
        parts.append(f"{key}={text}")
    return "# " + " ".join(parts)


def to_csv(grid: SpectrumGrid) -> str:
    return rows_to_csv(grid.metadata, grid.columns)


def _column_text(col):
    if isinstance(col, np.ndarray) and col.dtype.kind == "f":
        return list(map(repr, col.tolist()))
    return [_fmt(v) for v in col]


def rows_to_csv(metadata, columns) -> str:
    """Metadata line, header and rows; ``None`` entries become empty fields.

    Floats are written with their shortest round-trip representation.
    """
    names = list(columns)
    texts = [_column_text(columns[name]) for name in names]
    lines = [format_metadata(metadata), ",".join(names)]
    lines.extend(",".join(row) for row in zip(*texts))
    return "\n".join(lines) + "\n"


def _jsonable(value):
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    return value


def rows_to_json(metadata, columns) -> str:
    names = list(columns)
    n = len(columns[names[0]]) if names else 0
    rows = [[_jsonable(columns[name][i]) for name in names] for i in range(n)]
    doc = {"metadata": {k: _jsonable(v) for k, v in metadata.items()},
           "columns": names, "rows": rows}
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def to_json(grid: SpectrumGrid) -> str:
    return rows_to_json(grid.metadata, grid.columns)


def _parse_meta_value(text):
    if text == "true":
        return True
    if text == "false":
        return False
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def _parse_column(fields):
    try:
        return np.array([float(v) if v else np.nan for v in fields])
    except ValueError:
        return list(fields)


def parse_csv(text: str):
    """Inverse of :func:`rows_to_csv`; returns ``(metadata, columns)``.

    Empty numeric fields read back as ``nan``; non-numeric columns stay strings.
    """
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# "):
        raise ValueError("missing metadata line")
    meta = {}
    for item in lines[0][2:].split():
        key, _, value = item.partition("=")
        meta[key] = _parse_meta_value(value)
    names = lines[1].split(",")
    rows = [line.split(",") for line in lines[2:] if line]
    if any(len(row) != len(names) for row in rows):
        raise ValueError("row length does not match header")
    fields = list(zip(*rows)) if rows else [()] * len(names)
    return meta, {name: _parse_column(col) for name, col in zip(names, fields)}


def data_section(text: str) -> str:
    """Everything after the metadata line of a CSV output."""
    return text.split("\n", 1)[1] if "\n" in text else ""
