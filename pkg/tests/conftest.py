from collections.abc import Callable

import numpy as np
import pytest

from zakharov.lib.spectral import (
    Grid,
    Spectrum,
)
from zakharov.lib.state import (
    WaveData,
    ZState,
)

type SpectrumFactory = Callable[..., Spectrum]


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def random_spectrum(rng: np.random.Generator) -> SpectrumFactory:
    """Complex coefficients damped by <k>^{-decay}; `real_valued` symmetrizes, `zero_mean` clears c_0."""

    def factory(grid: Grid, decay: float = 1.0, real_valued: bool = False, zero_mean: bool = False) -> Spectrum:
        draws = rng.uniform(-1, 1, grid.shape) + 1j * rng.uniform(-1, 1, grid.shape)
        coeffs = grid.bracket() ** -decay * draws

        if zero_mean:
            coeffs[(0,) * grid.dim] = 0

        spectrum = Spectrum(grid=grid, coeffs=coeffs)

        return spectrum.real_part() if real_valued else spectrum

    return factory


@pytest.fixture
def random_state(random_spectrum: SpectrumFactory) -> Callable[..., ZState]:
    def factory(grid: Grid, decay: float = 2.0) -> ZState:
        data = WaveData(
            z0=random_spectrum(grid, decay, real_valued=True),
            z1=random_spectrum(grid, decay - 1, real_valued=True, zero_mean=True),
        )

        return ZState.from_data(random_spectrum(grid, decay), data)

    return factory


def smooth_state(grid: Grid) -> ZState:
    """Trigonometric polynomial data resolved far below the cutoff."""
    E0 = Spectrum.modes(grid, {(1,) * grid.dim: 0.5, (0,) * grid.dim: 0.3, (-2,) * grid.dim: 0.2j})
    z0 = Spectrum.modes(grid, {(1,) * grid.dim: 0.25, (-1,) * grid.dim: 0.25}, real_valued=True)
    z1 = Spectrum.modes(grid, {(2,) * grid.dim: 0.1j, (-2,) * grid.dim: -0.1j}, real_valued=True)

    return ZState.from_data(E0, WaveData(z0=z0, z1=z1))
