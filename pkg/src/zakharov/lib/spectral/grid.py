from functools import cache
from math import pi
from typing import (
    Literal,
    Self,
)

import numpy as np
from numpy.typing import NDArray
from pydantic import (
    PositiveInt,
    field_validator,
)

from zakharov.schemas import FrozenSchema

type Dimension = Literal[1, 2, 3]


@cache
def _wave_numbers(n: int) -> NDArray[np.int64]:
    # storage order: 0, 1, ..., N/2-1, -N/2, ..., -1
    numbers = np.rint(np.fft.fftfreq(n, d=1.0 / n)).astype(np.int64)
    numbers.flags.writeable = False

    return numbers


@cache
def _symbols(dim: int, n: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    axes = np.meshgrid(*([_wave_numbers(n).astype(np.float64)] * dim), indexing="ij")
    squared = sum((axis**2 for axis in axes), start=np.zeros((n,) * dim))
    norm = np.sqrt(squared)

    squared.flags.writeable = False
    norm.flags.writeable = False

    return squared, norm


class Grid(FrozenSchema):
    dim: Dimension
    n_per_axis: PositiveInt

    @field_validator("n_per_axis")
    @classmethod
    def validate_n_per_axis(cls, value: int) -> int:
        if value < 2 or value % 2:
            raise ValueError(f"Points per axis must be even and at least 2, got {value}")

        return value

    @classmethod
    def cube(cls, dim: int, n: int) -> Self:
        return cls.model_validate(dict(dim=dim, n_per_axis=n))

    @property
    def spacing(self) -> float:
        return 2 * pi / self.n_per_axis

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n_per_axis,) * self.dim

    @property
    def size(self) -> int:
        return self.n_per_axis**self.dim

    @property
    def axes(self) -> tuple[int, ...]:
        return tuple(range(self.dim))

    @property
    def nyquist(self) -> int:
        return self.n_per_axis // 2

    def embeds_in(self, other: "Grid") -> bool:
        return self.dim == other.dim and self.n_per_axis <= other.n_per_axis

    def wave_numbers(self) -> NDArray[np.int64]:
        return _wave_numbers(self.n_per_axis)

    def wave_vectors(self) -> tuple[NDArray[np.int64], ...]:
        return tuple(np.meshgrid(*([self.wave_numbers()] * self.dim), indexing="ij"))

    def k_squared(self) -> NDArray[np.float64]:
        return _symbols(self.dim, self.n_per_axis)[0]

    def k_norm(self) -> NDArray[np.float64]:
        return _symbols(self.dim, self.n_per_axis)[1]

    def bracket(self) -> NDArray[np.float64]:
        return np.sqrt(1.0 + self.k_squared())

    def points(self) -> tuple[NDArray[np.float64], ...]:
        coordinates = self.spacing * np.arange(self.n_per_axis)

        return tuple(np.meshgrid(*([coordinates] * self.dim), indexing="ij"))

    def index_of(self, k: tuple[int, ...]) -> tuple[int, ...]:
        if len(k) != self.dim:
            raise ValueError(f"Wave vector {k} does not match dimension {self.dim}")

        for component in k:
            if not -self.nyquist <= component < self.nyquist:
                raise ValueError(f"Wave vector {k} lies outside [-{self.nyquist}, {self.nyquist - 1}]")

        return tuple(component % self.n_per_axis for component in k)
