"""End-to-end path-loss models for mmWave and THz carriers.

Three models are dispatched by :func:`pathloss`:

``FreeSpace``
    spherical spreading only.
``UrbanCanyonLos``
    3GPP TR 38.901 UMi street-canyon line-of-sight, below-breakpoint
    formula at every distance, no shadow fading.
``Thz``
    spreading plus molecular absorption exp(-k(f) d), with k(f) linearly
    interpolated from an :class:`AbsorptionTable`.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import TextIO

import numpy as np

from .errors import AbsorptionTableError, InterpolationError, ModelValidityError
from .propagation import fspl
from .units import _out, as_positive

CSV_HEADER = ("frequency_ghz", "k_per_m")
DB_PER_NEPER_POWER = 10.0 * np.log10(np.e)  # 4.3429 dB per unit of k*d

UMI_F_MIN_HZ = 0.5e9
UMI_F_MAX_HZ = 100e9
UMI_D_MIN_M = 1.0


@dataclass(frozen=True, eq=False)
class AbsorptionTable:
    """Molecular absorption coefficient samples k(f) in 1/m.

    Frequencies are stored in GHz, the unit of the file format, so that
    reading and writing a table is lossless; ``frequencies_hz`` is derived.

    ``comments`` holds the ``#`` header lines of the source file (without the
    leading ``#``) so that a table can be written back unchanged.
    """

    frequencies_ghz: np.ndarray
    k_per_m: np.ndarray
    comments: tuple[str, ...] = field(default=())

    def __post_init__(self):
        f = np.array(self.frequencies_ghz, dtype=float)
        k = np.array(self.k_per_m, dtype=float)
        if f.ndim != 1 or f.shape != k.shape or f.size < 2:
            raise AbsorptionTableError("absorption table needs at least 2 (frequency, k) samples")
        if not np.all(np.isfinite(f)) or not np.all(np.isfinite(k)) or np.any(f <= 0):
            raise AbsorptionTableError("absorption table entries must be finite, frequencies > 0")
        if np.any(np.diff(f) <= 0):
            raise AbsorptionTableError("absorption table frequencies must be strictly increasing")
        if np.any(k < 0):
            raise AbsorptionTableError("absorption coefficients must be non-negative")
        f_hz = f * 1e9
        for arr in (f, f_hz, k):
            arr.flags.writeable = False
        object.__setattr__(self, "frequencies_ghz", f)
        object.__setattr__(self, "frequencies_hz", f_hz)
        object.__setattr__(self, "k_per_m", k)
        object.__setattr__(self, "comments", tuple(self.comments))

    @property
    def span_hz(self) -> tuple[float, float]:
        return float(self.frequencies_hz[0]), float(self.frequencies_hz[-1])

    def __len__(self):
        return self.frequencies_hz.size

    def __eq__(self, other):
        if not isinstance(other, AbsorptionTable):
            return NotImplemented
        return (np.array_equal(self.frequencies_ghz, other.frequencies_ghz)
                and np.array_equal(self.k_per_m, other.k_per_m)
                and self.comments == other.comments)

    __hash__ = None

    def coefficient(self, f_hz):
        """Piecewise-linear k(f); raises outside the tabulated span."""
        f = as_positive("frequency", f_hz)
        lo, hi = self.span_hz
        if np.any(f < lo) or np.any(f > hi):
            raise InterpolationError(
                f"frequency outside absorption table span [{lo / 1e9:g}, {hi / 1e9:g}] GHz")
        return _out(np.interp(f, self.frequencies_hz, self.k_per_m))


def load_absorption_table(source: TextIO | str | Path) -> AbsorptionTable:
    """Parse an absorption CSV (``frequency_ghz,k_per_m``).

    ``source`` is an open text stream or a path. Leading ``#`` lines are kept
    as comments. Errors name the 1-based line of the offending row.
    """
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8", newline="") as fh:
            return load_absorption_table(fh)

    comments: list[str] = []
    freqs_ghz: list[float] = []
    ks: list[float] = []
    header_seen = False
    for lineno, raw in enumerate(source, start=1):
        line = raw.rstrip("\r\n")
        if not header_seen:
            if line.startswith("#"):
                comments.append(line[1:])
                continue
            if tuple(c.strip() for c in line.split(",")) != CSV_HEADER:
                raise AbsorptionTableError(
                    f"expected header 'frequency_ghz,k_per_m' at line {lineno}, got {line!r}")
            header_seen = True
            continue
        if not line.strip():
            continue
        cells = next(csv.reader([line]))
        if len(cells) != 2:
            raise AbsorptionTableError(f"expected 2 fields at line {lineno}, got {len(cells)}")
        try:
            f_ghz, k = float(cells[0]), float(cells[1])
        except ValueError:
            raise AbsorptionTableError(f"non-numeric value at line {lineno}: {line!r}") from None
        if not (np.isfinite(f_ghz) and np.isfinite(k)) or f_ghz <= 0:
            raise AbsorptionTableError(f"invalid frequency or coefficient at line {lineno}")
        if k < 0:
            raise AbsorptionTableError(f"negative absorption coefficient at line {lineno}")
        if freqs_ghz and f_ghz <= freqs_ghz[-1]:
            raise AbsorptionTableError(f"non-monotone frequency at line {lineno}")
        freqs_ghz.append(f_ghz)
        ks.append(k)
    if not header_seen:
        raise AbsorptionTableError("missing header 'frequency_ghz,k_per_m'")
    if len(freqs_ghz) < 2:
        raise AbsorptionTableError("absorption table needs at least 2 samples")
    return AbsorptionTable(np.array(freqs_ghz), np.array(ks), tuple(comments))


def dump_absorption_table(table: AbsorptionTable, stream: TextIO) -> None:
    """Write ``table`` in the canonical form read by :func:`load_absorption_table`.

    Values use the shortest repr that round-trips, with LF line endings.
    """
    for line in table.comments:
        stream.write(f"#{line}\n")
    stream.write(",".join(CSV_HEADER) + "\n")
    for f_ghz, k in zip(table.frequencies_ghz, table.k_per_m):
        stream.write(f"{float(f_ghz)!r},{float(k)!r}\n")


def absorption_table_to_text(table: AbsorptionTable) -> str:
    buf = io.StringIO()
    dump_absorption_table(table, buf)
    return buf.getvalue()


@lru_cache(maxsize=1)
def default_absorption_table() -> AbsorptionTable:
    """The bundled 100 GHz - 2 THz standard-atmosphere table."""
    ref = resources.files("thzlink") / "data" / "absorption_default.csv"
    with ref.open("r", encoding="utf-8", newline="") as fh:
        return load_absorption_table(fh)


# ---------------------------------------------------------------------------
# Models

@dataclass(frozen=True)
class FreeSpace:
    pass


@dataclass(frozen=True)
class UrbanCanyonLos:
    pass


@dataclass(frozen=True)
class Thz:
    """Spreading plus absorption; ``absorption=None`` means k = 0."""

    absorption: AbsorptionTable | None = None


PathLossModel = FreeSpace | UrbanCanyonLos | Thz


def umi_los_pathloss(f_hz, d_m):
    """TR 38.901 UMi street-canyon LOS: 32.4 + 21 log10(d) + 20 log10(f_GHz).

    Distances below the recommendation's 10 m floor are accepted.
    """
    f = as_positive("frequency", f_hz)
    d = as_positive("distance", d_m)
    if np.any(f < UMI_F_MIN_HZ) or np.any(f > UMI_F_MAX_HZ):
        raise ModelValidityError("UMi model is valid between 0.5 GHz and 100 GHz")
    if np.any(d < UMI_D_MIN_M):
        raise ModelValidityError("UMi model needs distances of at least 1 m")
    return _out(32.4 + 21.0 * np.log10(d) + 20.0 * np.log10(f / 1e9))


def thz_pathloss(f_hz, d_m, absorption: AbsorptionTable | None = None):
    spreading = np.asarray(fspl(f_hz, d_m))
    if absorption is None:
        return _out(spreading)
    k = np.asarray(absorption.coefficient(f_hz))
    return _out(spreading + DB_PER_NEPER_POWER * k * np.asarray(d_m, dtype=float))


def pathloss(model: PathLossModel, f_hz, d_m):
    match model:
        case FreeSpace():
            return fspl(f_hz, d_m)
        case UrbanCanyonLos():
            return umi_los_pathloss(f_hz, d_m)
        case Thz(absorption=table):
            return thz_pathloss(f_hz, d_m, table)
    raise TypeError(f"unknown path-loss model {model!r}")
