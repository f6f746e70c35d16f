from math import (
    pi,
    sqrt,
)

import numpy as np
from numpy.typing import NDArray

from zakharov.lib.errors import (
    InvalidCutoff,
    NegativePowerOnNonzeroMean,
)

from .grid import Grid
from .spectrum import Spectrum

ZERO_MODE_TOLERANCE = 1e-12


def schrodinger_symbol(grid: Grid, t: float) -> NDArray[np.complex128]:
    # e^{itΔ}
    return np.exp(-1j * t * grid.k_squared())


def wave_symbol(grid: Grid, t: float) -> NDArray[np.complex128]:
    # e^{it|∇|}
    return np.exp(1j * t * grid.k_norm())


def gradient_symbol(grid: Grid, alpha: float) -> NDArray[np.float64]:
    """|k|^α with the zero mode mapped to 0 for every α."""
    norm = grid.k_norm()
    symbol = np.zeros(grid.shape, dtype=np.float64)
    np.power(norm, alpha, out=symbol, where=norm > 0)

    return symbol


def sobolev_weight(grid: Grid, s: float) -> NDArray[np.float64]:
    return grid.bracket() ** s


def schrodinger_propagator(spectrum: Spectrum, t: float) -> Spectrum:
    return spectrum.replace(schrodinger_symbol(spectrum.grid, t) * spectrum.coeffs)


def wave_propagator(spectrum: Spectrum, t: float) -> Spectrum:
    return spectrum.replace(wave_symbol(spectrum.grid, t) * spectrum.coeffs)


def fractional_gradient(spectrum: Spectrum, alpha: float) -> Spectrum:
    if alpha < 0 and abs(spectrum.zero_mode) > ZERO_MODE_TOLERANCE:
        raise NegativePowerOnNonzeroMean(
            f"|∇|^{alpha} requires a vanishing zero mode, got |c_0| = {abs(spectrum.zero_mode):.3e}"
        )

    return spectrum.replace(gradient_symbol(spectrum.grid, alpha) * spectrum.coeffs, spectrum.real_valued)


def validate_cutoff(theta: float, c: float) -> None:
    if not 0 < c < 2 * pi:
        raise InvalidCutoff(f"Cutoff constant c must lie in (0, 2π), got {c}")

    if not theta > 0:
        raise InvalidCutoff(f"Cutoff scale θ must be positive, got {theta}")


def cutoff_mask(grid: Grid, theta: float, c: float) -> NDArray[np.bool_]:
    """Modes with θ^{1/2} k_j in the half-open cube [-(c/d)^{1/2}, (c/d)^{1/2}) on every axis."""
    validate_cutoff(theta, c)

    bound = sqrt(c / grid.dim)
    scaled = sqrt(theta) * grid.wave_numbers()
    axis_mask = (scaled >= -bound) & (scaled < bound)
    mask = np.ones(grid.shape, dtype=np.bool_)

    for axis in grid.axes:
        shape = [1] * grid.dim
        shape[axis] = grid.n_per_axis
        mask = mask & axis_mask.reshape(shape)

    return mask


def filter_is_redundant(grid: Grid, theta: float, c: float) -> bool:
    return bool(cutoff_mask(grid, theta, c).all())


def filter_cutoff(spectrum: Spectrum, theta: float, c: float) -> Spectrum:
    mask = cutoff_mask(spectrum.grid, theta, c)

    return spectrum.replace(np.where(mask, spectrum.coeffs, 0))


def sobolev_norm(spectrum: Spectrum, s: float) -> float:
    # coefficient convention: no (2π)^{d/2} volume factor
    weighted = sobolev_weight(spectrum.grid, 2 * s) * np.abs(spectrum.coeffs) ** 2

    return float(np.sqrt(np.sum(weighted)))
