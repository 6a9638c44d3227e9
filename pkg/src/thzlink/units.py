"""dB/linear conversions, physical constants and sweep grids.

All model functions take SI base units (Hz, m, W). Functions here accept
scalars or array-likes and return numpy values of the same shape.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact


def as_positive(name: str, value) -> np.ndarray:
    """Return ``value`` as a float array, raising if any element is not finite and > 0."""
    arr = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError(f"{name} must be finite and strictly positive, got {value!r}")
    return arr


def as_nonnegative(name: str, value) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise DomainError(f"{name} must be finite and non-negative, got {value!r}")
    return arr


def _out(arr):
    # 0-d arrays become numpy scalars so callers get plain float-like values
    return arr[()] if isinstance(arr, np.ndarray) and arr.ndim == 0 else arr


def db_from_linear(x):
    """Power ratio to dB."""
    return _out(10.0 * np.log10(as_positive("ratio", x)))


def linear_from_db(db):
    return _out(10.0 ** (np.asarray(db, dtype=float) / 10.0))


def dbm_from_watts(p_w):
    """Power in watts to dBm (re 1 mW)."""
    return _out(10.0 * np.log10(as_positive("power", p_w) / 1e-3))


def watts_from_dbm(p_dbm):
    return _out(1e-3 * 10.0 ** (np.asarray(p_dbm, dtype=float) / 10.0))


def wavelength(f_hz):
    return _out(SPEED_OF_LIGHT / as_positive("frequency", f_hz))


def log_space_grid(start: float, stop: float, n: int) -> np.ndarray:
    """``n`` geometrically spaced points from ``start`` to ``stop`` inclusive.

    The endpoints are reproduced exactly, interior points up to rounding.
    """
    if not (np.isfinite(start) and np.isfinite(stop)) or not 0 < start < stop:
        raise DomainError(f"log grid needs 0 < start < stop, got ({start}, {stop})")
    if int(n) != n or n < 2:
        raise DomainError(f"log grid needs at least 2 points, got {n}")
    grid = np.geomspace(start, stop, int(n))
    grid[0], grid[-1] = start, stop
    return grid


def check_grid(name: str, values) -> np.ndarray:
    """Validate a sweep axis: non-empty, finite, strictly increasing."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError(f"{name} must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(arr)) or np.any(np.diff(arr) <= 0):
        raise DomainError(f"{name} must be finite and strictly increasing")
    return arr
