from csv import writer
from pathlib import Path
from struct import Struct
from typing import BinaryIO

import numpy as np

from .grid import Grid
from .spectrum import Spectrum

# dim, N
HEADER = Struct("<II")
DTYPE = np.dtype("<c16")


def _ascending(coeffs: np.ndarray) -> np.ndarray:
    # storage (FFT) order -> ascending wave vectors from -N/2 on every axis
    return np.fft.fftshift(coeffs)


def _storage(coeffs: np.ndarray) -> np.ndarray:
    return np.fft.ifftshift(coeffs)


def spectrum_to_bytes(spectrum: Spectrum) -> bytes:
    header = HEADER.pack(spectrum.grid.dim, spectrum.grid.n_per_axis)
    body = np.ascontiguousarray(_ascending(spectrum.coeffs), dtype=DTYPE).tobytes(order="C")

    return header + body


def read_spectrum_from(stream: BinaryIO, real_valued: bool = False) -> Spectrum:
    dim, n = HEADER.unpack(stream.read(HEADER.size))
    grid = Grid.cube(dim, n)
    body = stream.read(grid.size * DTYPE.itemsize)

    if len(body) != grid.size * DTYPE.itemsize:
        raise ValueError(f"Truncated spectrum blob: expected {grid.size} coefficients")

    coeffs = np.frombuffer(body, dtype=DTYPE).reshape(grid.shape)

    return Spectrum(grid=grid, coeffs=_storage(coeffs), real_valued=real_valued)


def write_spectrum(spectrum: Spectrum, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(spectrum_to_bytes(spectrum))

    return path


def read_spectrum(path: Path, real_valued: bool = False) -> Spectrum:
    with path.open("rb") as stream:
        return read_spectrum_from(stream, real_valued)


def dump_spectrum_csv(spectrum: Spectrum, path: Path) -> Path:
    grid = spectrum.grid
    labels = [f"k{axis + 1}" for axis in grid.axes]
    ascending = _ascending(spectrum.coeffs)
    half = grid.nyquist

    path.parent.mkdir(parents=True, exist_ok=True)

    with path.open("w", newline="", encoding="utf-8") as file:
        csv = writer(file)
        csv.writerow([*labels, "re", "im"])

        for index in np.ndindex(*grid.shape):
            value = ascending[index]
            csv.writerow([*(i - half for i in index), repr(float(value.real)), repr(float(value.imag))])

    return path
