from typing import Self

from pydantic import model_validator

from zakharov.lib.errors import GridMismatch
from zakharov.lib.spectral import (
    Grid,
    Spectrum,
    fractional_gradient,
    gradient_symbol,
)
from zakharov.lib.spectral.spectrum import conjugate_coefficients
from zakharov.schemas import FrozenSchema

ZERO_MEAN_TOLERANCE = 1e-12


class WaveData(FrozenSchema):
    """Real wave component z and its time derivative z_t (z_0 and z_1 at t = 0)."""

    z0: Spectrum
    z1: Spectrum

    @model_validator(mode="after")
    def validate_model(self) -> Self:
        if self.z0.grid != self.z1.grid:
            raise GridMismatch("z0 and z1 must share one grid")

        if not (self.z0.real_valued and self.z1.real_valued):
            raise ValueError("z0 and z1 must be flagged real-valued")

        if abs(self.z1.zero_mode) > ZERO_MEAN_TOLERANCE:
            raise ValueError(f"z1 must have zero mean, got zero mode {self.z1.zero_mode:.3e}")

        return self

    @property
    def grid(self) -> Grid:
        return self.z0.grid

    @classmethod
    def zeros(cls, grid: Grid) -> Self:
        return cls(z0=Spectrum.zeros(grid), z1=Spectrum.zeros(grid))


class ZState(FrozenSchema):
    E: Spectrum
    u: Spectrum

    @model_validator(mode="after")
    def validate_model(self) -> Self:
        if self.E.grid != self.u.grid:
            raise GridMismatch("E and u must share one grid")

        return self

    @property
    def grid(self) -> Grid:
        return self.E.grid

    @classmethod
    def zeros(cls, grid: Grid) -> Self:
        return cls(E=Spectrum.zeros(grid), u=Spectrum.zeros(grid))

    @classmethod
    def from_data(cls, E0: Spectrum, data: WaveData) -> Self:
        return cls(E=E0, u=encode_u(data))

    def decode(self) -> WaveData:
        return decode_u(self.u)


def encode_u(data: WaveData) -> Spectrum:
    # u = z - i|∇|^{-1} z_t
    return data.z0 - 1j * fractional_gradient(data.z1, -1)


def decode_u(u: Spectrum) -> WaveData:
    # z = (u + conj u)/2, z_t = (i|∇|/2)(u - conj u); an imaginary zero mode of u is dropped
    conjugate = conjugate_coefficients(u.coeffs)
    z = 0.5 * (u.coeffs + conjugate)
    z_t = 0.5j * gradient_symbol(u.grid, 1) * (u.coeffs - conjugate)

    return WaveData(
        z0=u.replace(z, real_valued=True),
        z1=u.replace(z_t, real_valued=True),
    )
