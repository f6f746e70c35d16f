from enum import StrEnum
from math import pi
from typing import Self

from pydantic import (
    Field,
    PositiveFloat,
    computed_field,
)

from zakharov.lib.spectral import Grid
from zakharov.schemas import FrozenSchema

DEFAULT_C = 1.0


class Variant(StrEnum):
    FILTERED = "filtered"
    UNFILTERED = "unfiltered"


def theta_law(tau: float, grid: Grid, c: float) -> float:
    # θ = max{τ, c d^{-1} N^{-2}}
    return max(tau, c / grid.dim / grid.n_per_axis**2)


def cfl_number(tau: float, grid: Grid) -> float:
    return grid.dim * grid.n_per_axis**2 * tau


class SchemeParams(FrozenSchema):
    tau: PositiveFloat
    grid: Grid
    c: float = Field(default=DEFAULT_C, gt=0, lt=2 * pi)
    variant: Variant = Variant.FILTERED

    @classmethod
    def create(
        cls,
        tau: float,
        grid: Grid,
        c: float = DEFAULT_C,
        variant: Variant | str = Variant.FILTERED,
    ) -> Self:
        return cls.model_validate(dict(tau=tau, grid=grid, c=c, variant=variant))

    @computed_field
    @property
    def theta(self) -> float:
        return theta_law(self.tau, self.grid, self.c)

    @computed_field
    @property
    def cfl_satisfied(self) -> bool:
        # d N² τ <= c
        return cfl_number(self.tau, self.grid) <= self.c

    def with_variant(self, variant: Variant) -> Self:
        return self.model_copy(update=dict(variant=variant))
