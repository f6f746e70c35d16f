from pathlib import Path
from typing import Self

import numpy as np
from loguru import logger
from numpy.typing import NDArray
from pydantic import (
    Field,
    PositiveFloat,
    model_validator,
)

from zakharov.lib.errors import DegenerateDraw
from zakharov.lib.spectral import (
    Grid,
    Spectrum,
    dump_spectrum_csv,
    read_spectrum,
    resample,
    sobolev_norm,
    write_spectrum,
)
from zakharov.lib.state import WaveData
from zakharov.schemas import FrozenSchema

DEGENERATE_NORM = 1e-300


def regularity_floor(dim: int) -> float:
    # s0 = max(0, d/2 - 1)
    return max(0.0, dim / 2 - 1)


def parameters(dim: int, s1: float) -> tuple[float, float]:
    s0 = regularity_floor(dim)

    return s0, s0 + s1


class RoughDataSpec(FrozenSchema):
    grid: Grid
    s2: PositiveFloat
    seed: int = Field(ge=0, lt=2**64)

    @model_validator(mode="after")
    def validate_model(self) -> Self:
        s0 = regularity_floor(self.grid.dim)

        if not self.s2 > s0:
            raise ValueError(f"Regularity s2 = {self.s2} must exceed s0 = {s0} in dimension {self.grid.dim}")

        return self


def generator(seed: int) -> np.random.Generator:
    # Philox4x64-10 keyed directly by the seed, counter starting at zero
    return np.random.Generator(np.random.Philox(key=seed))


def _draw(rng: np.random.Generator, grid: Grid) -> NDArray[np.float64]:
    # row-major over ascending wave vectors, then moved to storage order
    return np.fft.ifftshift(rng.uniform(-1.0, 1.0, grid.shape))


def _normalized(spectrum: Spectrum, s: float, name: str) -> Spectrum:
    norm = sobolev_norm(spectrum, s)

    if norm < DEGENERATE_NORM:
        raise DegenerateDraw(f"Pre-normalization H^{s} norm of {name} is {norm:.3e}")

    return spectrum.replace(spectrum.coeffs / norm, spectrum.real_valued)


def random_rough_fields(spec: RoughDataSpec) -> tuple[Spectrum, WaveData]:
    grid, s2 = spec.grid, spec.s2
    half_dim = grid.dim / 2
    bracket = grid.bracket()
    rng = generator(spec.seed)

    f, g, h = _draw(rng, grid), _draw(rng, grid), _draw(rng, grid)
    h[(0,) * grid.dim] = 0.0

    E0 = Spectrum(grid=grid, coeffs=bracket ** (-s2 - half_dim - 0.5) * f)
    z0 = Spectrum(grid=grid, coeffs=bracket ** (-s2 - half_dim) * g).real_part()
    z1 = Spectrum(grid=grid, coeffs=bracket ** (-s2 - half_dim + 1) * h).real_part()

    E0 = _normalized(E0, s2 + 0.5, "E0")
    data = WaveData(z0=_normalized(z0, s2, "z0"), z1=_normalized(z1, s2 - 1, "z1"))

    logger.debug("Generated rough data", dim=grid.dim, n=grid.n_per_axis, s2=s2, seed=spec.seed)

    return E0, data


def restrict_data(E0: Spectrum, data: WaveData, grid: Grid) -> tuple[Spectrum, WaveData]:
    return resample(E0, grid), WaveData(z0=resample(data.z0, grid), z1=resample(data.z1, grid))


def write_data(directory: Path, E0: Spectrum, data: WaveData, csv: bool = False) -> list[Path]:
    fields = dict(E0=E0, z0=data.z0, z1=data.z1)
    paths = [write_spectrum(spectrum, directory / f"{name}.spec") for name, spectrum in fields.items()]

    if csv:
        paths += [dump_spectrum_csv(spectrum, directory / f"{name}.csv") for name, spectrum in fields.items()]

    return paths


def read_data(directory: Path) -> tuple[Spectrum, WaveData]:
    E0 = read_spectrum(directory / "E0.spec")
    z0 = read_spectrum(directory / "z0.spec", real_valued=True)
    z1 = read_spectrum(directory / "z1.spec", real_valued=True)

    return E0, WaveData(z0=z0, z1=z1)
