"""Grid-based spectrum analysis: valley (or peak) positions and widths."""
from __future__ import annotations

import numpy as np


def local_minima(y):
    """Indices of interior local minima of a sampled curve."""
    y = np.asarray(y, dtype=float)
    inner = (y[1:-1] < y[:-2]) & (y[1:-1] <= y[2:])
    return np.flatnonzero(inner) + 1


def find_valleys(x, y, count=2):
    """The ``count`` deepest local minima, returned in ascending ``x`` order."""
    idx = local_minima(y)
    if idx.size < count:
        raise ValueError(f"found {idx.size} local minima, expected {count}")
    deepest = idx[np.argsort(np.asarray(y)[idx], kind="stable")[:count]]
    return np.sort(deepest)


def find_peaks(x, y, count=2):
    return find_valleys(x, -np.asarray(y, dtype=float), count)


def _crossing(x, y, level, start, step):
    i = start
    while 0 <= i + step < len(y):
        j = i + step
        if y[j] >= level:
            # linear interpolation between i and j
            frac = (level - y[i]) / (y[j] - y[i])
            return x[i] + frac * (x[j] - x[i])
        i = j
    return np.nan


def valley_width(x, y, index, baseline=1.0):
    """Full width of the valley at ``index`` at half depth.

    The level is ``(y[index] + baseline) / 2``; crossings are linearly
    interpolated.  Returns ``nan`` if the curve never climbs back to the level
    on one side within the grid.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    level = 0.5 * (y[index] + baseline)
    left = _crossing(x, y, level, index, -1)
    right = _crossing(x, y, level, index, +1)
    return right - left


def peak_width(x, y, index, baseline=0.0):
    """Full width of the peak at ``index`` at half height above ``baseline``."""
    return valley_width(x, -np.asarray(y, dtype=float), index, baseline=-baseline)
