"""Periodic grid on [-L, L) with spectral derivatives and quadrature.

The box is the computational stand-in for the real line: profiles of
interest decay exponentially, so with L large enough the periodic
truncation error sits below the solver tolerances.  Every operation here
is a pure function of its inputs; field values are frozen after
construction, so instances can be shared freely between threads.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import GridMismatchError, ValidationError


@dataclass(frozen=True, eq=False)
class Grid1D:
    """Uniform periodic grid with n samples on [-L, L)."""

    half_length: float
    n: int
    dx: float = field(init=False)
    x: np.ndarray = field(init=False, repr=False)
    wavenumbers: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        L, n = self.half_length, self.n
        dx = 2.0 * L / n
        x = -L + dx * np.arange(n)
        # pi*j/L for j in standard FFT ordering (Nyquist stored as -n/2)
        k = 2.0 * np.pi * np.fft.fftfreq(n, d=dx)
        for arr in (x, k):
            arr.flags.writeable = False
        object.__setattr__(self, "dx", dx)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "wavenumbers", k)

    def __eq__(self, other):
        if not isinstance(other, Grid1D):
            return NotImplemented
        return self.half_length == other.half_length and self.n == other.n

    def __hash__(self):
        return hash((self.half_length, self.n))


def make_grid(L: float, n: int) -> Grid1D:
    """Build a grid, rejecting odd or tiny sample counts and L <= 0."""
    if not np.isfinite(L) or L <= 0:
        raise ValidationError(f"half_length must be positive, got {L}")
    if n % 2 != 0 or n < 8:
        raise ValidationError(f"sample count must be even and >= 8, got {n}")
    return Grid1D(float(L), int(n))


@dataclass(frozen=True, eq=False)
class RealField:
    """Real samples of a function on a Grid1D."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.shape != (self.grid.n,):
            raise ValidationError(
                f"expected {self.grid.n} samples, got shape {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise ValidationError("field contains non-finite samples")
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True, eq=False)
class ComplexField:
    """Complex samples of a function on a Grid1D."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != (self.grid.n,):
            raise ValidationError(
                f"expected {self.grid.n} samples, got shape {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise ValidationError("field contains non-finite samples")
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)


Field = RealField | ComplexField


def same_grid(*fields: Field) -> Grid1D:
    g = fields[0].grid
    for f in fields[1:]:
        if f.grid != g:
            raise GridMismatchError("fields live on different grids")
    return g


def sample(grid: Grid1D, fn, kind: str = "real") -> Field:
    vals = fn(grid.x)
    if kind == "real":
        return RealField(grid, np.asarray(vals, dtype=np.float64))
    return ComplexField(grid, np.asarray(vals, dtype=np.complex128))


def zero_field(grid: Grid1D, kind: str = "real") -> Field:
    if kind == "real":
        return RealField(grid, np.zeros(grid.n))
    return ComplexField(grid, np.zeros(grid.n, dtype=np.complex128))


def deriv_values(values: np.ndarray, grid: Grid1D, order: int = 1) -> np.ndarray:
    """Spectral derivative of a raw sample array.

    Mode j is multiplied by (i k_j)^order; the Nyquist mode is zeroed for
    odd orders so real input stays real.
    """
    if order < 1:
        raise ValidationError(f"derivative order must be >= 1, got {order}")
    mult = (1j * grid.wavenumbers) ** order
    if order % 2 == 1:
        mult = mult.copy()
        mult[grid.n // 2] = 0.0
    out = np.fft.ifft(np.fft.fft(values) * mult)
    if np.isrealobj(values):
        return out.real
    return out


def deriv(f: Field, order: int = 1) -> Field:
    """Spectral derivative of a field, same type as the input."""
    vals = deriv_values(f.values, f.grid, order)
    if isinstance(f, RealField):
        return RealField(f.grid, vals)
    return ComplexField(f.grid, vals)


def integrate(f: Field):
    """Quadrature of the field over the box: dx * sum(values).

    The rectangle rule coincides with the trapezoid rule on the periodic
    grid and is spectrally accurate for fields that decay at the ends.
    """
    total = f.grid.dx * np.sum(f.values)
    if isinstance(f, RealField):
        return float(total)
    return complex(total)


def integrate_values(values: np.ndarray, grid: Grid1D) -> float:
    return float(grid.dx * np.sum(values))


def norm_l2(f: Field) -> float:
    """Quadrature L2 norm sqrt(int |f|^2 dx)."""
    return float(np.sqrt(f.grid.dx * np.sum(np.abs(f.values) ** 2)))


def inner_l2(a: Field, b: Field) -> float:
    """Real L2 pairing Re int a conj(b) dx."""
    g = same_grid(a, b)
    return float(np.real(g.dx * np.sum(a.values * np.conj(b.values))))


def shift_values(values: np.ndarray, grid: Grid1D, y: float) -> np.ndarray:
    """Translate samples so the output is f(x + y), using spectral phases."""
    phase = np.exp(1j * grid.wavenumbers * y)
    out = np.fft.ifft(np.fft.fft(values) * phase)
    if np.isrealobj(values):
        return out.real
    return out


def boundary_leak(values: np.ndarray) -> float:
    """Boundary magnitude relative to the peak, as a truncation diagnostic."""
    peak = float(np.max(np.abs(values)))
    if peak == 0.0:
        return 0.0
    edge = max(abs(values[0]), abs(values[-1]))
    return float(edge / peak)


# --- serialization: little-endian float64 binary plus a JSON header -------

def save_field(f: Field, basepath: str) -> None:
    """Write <basepath>.bin (raw little-endian samples) and <basepath>.json."""
    kind = "real" if isinstance(f, RealField) else "complex"
    dtype = "<f8" if kind == "real" else "<c16"
    raw = np.ascontiguousarray(f.values.astype(dtype)).tobytes()
    header = {"L": f.grid.half_length, "n": f.grid.n, "kind": kind}
    _atomic_write(basepath + ".bin", raw)
    _atomic_write(basepath + ".json",
                  (json.dumps(header, sort_keys=True) + "\n").encode())


def load_field(basepath: str) -> Field:
    with open(basepath + ".json", "rb") as fh:
        header = json.loads(fh.read())
    grid = make_grid(header["L"], header["n"])
    with open(basepath + ".bin", "rb") as fh:
        raw = fh.read()
    if header["kind"] == "real":
        vals = np.frombuffer(raw, dtype="<f8")
        return RealField(grid, vals.astype(np.float64))
    vals = np.frombuffer(raw, dtype="<c16")
    return ComplexField(grid, vals.astype(np.complex128))


def _atomic_write(path: str, data: bytes) -> None:
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)
