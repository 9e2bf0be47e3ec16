"""Sampled complex-valued functions on uniform grids over [-L, L]^{2n}.

Axis convention: each complex coordinate z_j = x_j + i y_j contributes the
axis pair (x_j, y_j); sample axes are ordered (x_1, y_1, ..., x_n, y_n) and
stored row-major.  Nodes are the half-open lattice x_i = -L + i h with
h = 2L / steps, which makes the trapezoid and rectangle rules coincide for
integrands that decay below roundoff at the boundary.

Binary format: magic 'TWGF', version, n, steps, dtype flag, extent as
little-endian fields, then the raw little-endian complex payload.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .quadrature import grid_axis

_MAGIC = b"TWGF"
_VERSION = 1


class GridDataError(ValueError):
    """Raised for non-finite samples or malformed payloads."""


class GridDomainError(ValueError):
    """Raised when an evaluation point leaves the safe region of the grid."""


@dataclass
class GridFunction:
    """Complex samples of a function of n complex variables (n = 1 or 2)."""

    n: int
    extent: float
    steps: int
    samples: np.ndarray
    meta: str = ""

    def __post_init__(self):
        if self.n not in (1, 2):
            raise ValueError("grid functions support n = 1 or 2")
        if self.steps % 2 or self.steps <= 0:
            raise ValueError("steps per axis must be a positive even integer")
        expect = (self.steps,) * (2 * self.n)
        self.samples = np.ascontiguousarray(self.samples, dtype=np.complex128)
        if self.samples.shape != expect:
            raise ValueError(f"samples must have shape {expect}, got {self.samples.shape}")
        if not np.all(np.isfinite(self.samples)):
            raise GridDataError("grid samples contain non-finite values")

    @property
    def h(self) -> float:
        return 2.0 * self.extent / self.steps

    def axis(self) -> np.ndarray:
        return grid_axis(self.extent, self.steps)

    @staticmethod
    def from_callable(f: Callable[[np.ndarray], np.ndarray], n: int, extent: float,
                      steps: int, meta: str = "sampled") -> "GridFunction":
        ax = grid_axis(extent, steps)
        grids = np.meshgrid(*([ax] * (2 * n)), indexing="ij")
        z = np.stack([grids[2 * j] + 1j * grids[2 * j + 1] for j in range(n)], axis=-1)
        return GridFunction(n, extent, steps, np.asarray(f(z), dtype=complex), meta)

    def points(self) -> np.ndarray:
        ax = self.axis()
        grids = np.meshgrid(*([ax] * (2 * self.n)), indexing="ij")
        return np.stack([grids[2 * j] + 1j * grids[2 * j + 1] for j in range(self.n)], axis=-1)

    def interp(self, z: np.ndarray) -> np.ndarray:
        """Multilinear interpolation at complex points (..., n); 0 outside."""
        z = np.asarray(z, dtype=complex)
        coords = []
        for j in range(self.n):
            coords.append(z[..., j].real)
            coords.append(z[..., j].imag)
        idx_f = [(c + self.extent) / self.h for c in coords]
        out = np.zeros(z.shape[:-1], dtype=complex)
        lo = [np.floor(f).astype(np.int64) for f in idx_f]
        frac = [f - l for f, l in zip(idx_f, lo)]
        ndim = 2 * self.n
        for corner in range(1 << ndim):
            w = np.ones(z.shape[:-1])
            ix = []
            valid = np.ones(z.shape[:-1], dtype=bool)
            for d in range(ndim):
                bit = (corner >> d) & 1
                i = lo[d] + bit
                w = w * (frac[d] if bit else (1.0 - frac[d]))
                valid &= (i >= 0) & (i < self.steps)
                ix.append(np.clip(i, 0, self.steps - 1))
            vals = self.samples[tuple(ix)]
            out += np.where(valid, w * vals, 0.0)
        return out

    # -- serialization --------------------------------------------------

    def save(self, path: str, dtype: str = "complex128") -> None:
        flag = {"complex64": 8, "complex128": 16}[dtype]
        header = _MAGIC + struct.pack("<IIIId", _VERSION, self.n, self.steps, flag,
                                      self.extent)
        payload = self.samples.astype({"complex64": "<c8", "complex128": "<c16"}[dtype]).tobytes()
        with open(path, "wb") as fh:
            fh.write(header)
            meta = self.meta.encode()
            fh.write(struct.pack("<I", len(meta)))
            fh.write(meta)
            fh.write(payload)

    @staticmethod
    def load(path: str) -> "GridFunction":
        with open(path, "rb") as fh:
            magic = fh.read(4)
            if magic != _MAGIC:
                raise GridDataError("bad magic in grid file")
            version, n, steps, flag, extent = struct.unpack("<IIIId", fh.read(24))
            if version != _VERSION:
                raise GridDataError(f"unsupported version {version}")
            (meta_len,) = struct.unpack("<I", fh.read(4))
            meta = fh.read(meta_len).decode()
            dtype = {8: "<c8", 16: "<c16"}[flag]
            count = steps ** (2 * n)
            data = np.frombuffer(fh.read(), dtype=dtype, count=count)
            samples = data.astype(np.complex128).reshape((steps,) * (2 * n))
        return GridFunction(n, extent, steps, samples, meta)


def require_inside(points: np.ndarray, extent: float, n: int) -> None:
    """Reject evaluation points outside [-L/2, L/2]^{2n}."""
    pts = np.asarray(points, dtype=complex)
    for j in range(n):
        if (np.max(np.abs(pts[..., j].real), initial=0.0) > extent / 2 + 1e-12
                or np.max(np.abs(pts[..., j].imag), initial=0.0) > extent / 2 + 1e-12):
            raise GridDomainError(
                f"evaluation points must lie inside [-L/2, L/2]^(2n) with L={extent}")
