from numbers import Number
from typing import (
    Annotated,
    Any,
    Self,
)

import numpy as np
from numpy.typing import NDArray
from pydantic import (
    InstanceOf,
    PlainValidator,
    model_validator,
)
from scipy import fft

from zakharov.lib.errors import GridMismatch
from zakharov.schemas import FrozenSchema
from zakharov.schemas.environment import Environment

from .grid import Grid

REAL_TOLERANCE = 1e-12


def as_complex_array(value: Any) -> NDArray[np.complex128]:
    if isinstance(value, np.ndarray) and value.dtype == np.complex128 and not value.flags.writeable:
        return value

    array = np.array(value, dtype=np.complex128, copy=True, order="C")
    array.flags.writeable = False

    return array


type ComplexArray = Annotated[
    InstanceOf[np.ndarray],
    PlainValidator(as_complex_array),
]


def reflect(coeffs: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """Return c_{-k} at position k; the Nyquist index -N/2 maps to itself."""
    axes = tuple(range(coeffs.ndim))

    return np.roll(np.flip(coeffs, axis=axes), 1, axis=axes)


def conjugate_coefficients(coeffs: NDArray[np.complex128]) -> NDArray[np.complex128]:
    return np.conj(reflect(coeffs))


class Spectrum(FrozenSchema):
    """Fourier coefficients c_k of f(x) = Σ_k c_k e^{i<k,x>}, stored in FFT order."""

    grid: Grid
    coeffs: ComplexArray
    real_valued: bool = False

    @model_validator(mode="after")
    def validate_model(self) -> Self:
        if self.coeffs.shape != self.grid.shape:
            raise ValueError(f"Coefficient shape {self.coeffs.shape} does not match grid shape {self.grid.shape}")

        if self.real_valued and not is_real_symmetric(self.coeffs):
            raise ValueError("Spectrum flagged real-valued violates c_{-k} = conj(c_k)")

        return self

    @classmethod
    def zeros(cls, grid: Grid) -> Self:
        return cls(grid=grid, coeffs=np.zeros(grid.shape, dtype=np.complex128), real_valued=True)

    @classmethod
    def modes(cls, grid: Grid, values: dict[tuple[int, ...], complex], real_valued: bool = False) -> Self:
        coeffs = np.zeros(grid.shape, dtype=np.complex128)

        for k, value in values.items():
            coeffs[grid.index_of(k)] = value

        return cls(grid=grid, coeffs=coeffs, real_valued=real_valued)

    def replace(self, coeffs: NDArray[np.complex128], real_valued: bool = False) -> Self:
        return type(self)(grid=self.grid, coeffs=coeffs, real_valued=real_valued)

    @property
    def zero_mode(self) -> complex:
        return complex(self.coeffs[(0,) * self.grid.dim])

    def coefficient(self, k: tuple[int, ...]) -> complex:
        return complex(self.coeffs[self.grid.index_of(k)])

    def conjugate(self) -> Self:
        return self.replace(conjugate_coefficients(self.coeffs), self.real_valued)

    def real_part(self) -> Self:
        """Spectrum of Re f, symmetrized so that the real-valued flag holds exactly."""
        return self.replace(0.5 * (self.coeffs + conjugate_coefficients(self.coeffs)), True)

    def is_real_valued(self, tolerance: float = REAL_TOLERANCE) -> bool:
        return is_real_symmetric(self.coeffs, tolerance)

    def l2_squared(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def _check_grid(self, other: "Spectrum") -> None:
        if other.grid != self.grid:
            raise GridMismatch(f"Spectra live on different grids: {self.grid} and {other.grid}")

    def __add__(self, other: "Spectrum") -> Self:
        self._check_grid(other)

        return self.replace(self.coeffs + other.coeffs, self.real_valued and other.real_valued)

    def __sub__(self, other: "Spectrum") -> Self:
        self._check_grid(other)

        return self.replace(self.coeffs - other.coeffs, self.real_valued and other.real_valued)

    def __mul__(self, scalar: Number) -> Self:
        value = complex(scalar)  # type: ignore[arg-type]

        return self.replace(value * self.coeffs, self.real_valued and value.imag == 0)

    __rmul__ = __mul__

    def __neg__(self) -> Self:
        return self.replace(-self.coeffs, self.real_valued)


class Field(FrozenSchema):
    grid: Grid
    values: ComplexArray

    @model_validator(mode="after")
    def validate_model(self) -> Self:
        if self.values.shape != self.grid.shape:
            raise ValueError(f"Value shape {self.values.shape} does not match grid shape {self.grid.shape}")

        return self

    @classmethod
    def sample(cls, grid: Grid, function: Any) -> Self:
        return cls(grid=grid, values=function(*grid.points()))


def is_real_symmetric(coeffs: NDArray[np.complex128], tolerance: float = REAL_TOLERANCE) -> bool:
    scale = max(1.0, float(np.max(np.abs(coeffs), initial=0.0)))

    return bool(np.max(np.abs(coeffs - conjugate_coefficients(coeffs)), initial=0.0) <= tolerance * scale)


def to_grid(coeffs: NDArray[np.complex128]) -> NDArray[np.complex128]:
    return fft.ifftn(coeffs, norm="forward", workers=Environment.load().fft_workers)


def to_coefficients(values: NDArray[np.complex128]) -> NDArray[np.complex128]:
    return fft.fftn(values, norm="forward", workers=Environment.load().fft_workers)


def forward_dft(field: Field) -> Spectrum:
    # c_k = N^{-d} Σ_l u(x_l) e^{-i<k,x_l>}
    return Spectrum(grid=field.grid, coeffs=to_coefficients(field.values))


def inverse_dft(spectrum: Spectrum) -> Field:
    return Field(grid=spectrum.grid, values=to_grid(spectrum.coeffs))


def _common_indices(source: Grid, target: Grid) -> tuple[NDArray[np.int64], NDArray[np.int64]]:
    half = min(source.nyquist, target.nyquist)
    k = np.arange(-half, half)

    return k % source.n_per_axis, k % target.n_per_axis


def resample(spectrum: Spectrum, grid: Grid) -> Spectrum:
    """Zero-pad onto a finer grid or truncate onto a coarser one, keeping the shared modes.

    Padding copies coefficients verbatim, so a nonzero coarse Nyquist row leaves the padded spectrum unflagged.
    Truncation of a real-valued spectrum is symmetrized at the new Nyquist row.
    """
    if grid.dim != spectrum.grid.dim:
        raise GridMismatch(f"Cannot resample a {spectrum.grid.dim}-dimensional spectrum onto {grid}")

    if grid == spectrum.grid:
        return spectrum

    source, target = _common_indices(spectrum.grid, grid)
    coeffs = np.zeros(grid.shape, dtype=np.complex128)
    coeffs[np.ix_(*([target] * grid.dim))] = spectrum.coeffs[np.ix_(*([source] * grid.dim))]

    if grid.n_per_axis > spectrum.grid.n_per_axis:
        return Spectrum(grid=grid, coeffs=coeffs, real_valued=spectrum.real_valued and is_real_symmetric(coeffs))

    result = Spectrum(grid=grid, coeffs=coeffs)

    return result.real_part() if spectrum.real_valued else result
