from math import (
    isclose,
    pi,
)
from pathlib import Path
from re import fullmatch
from typing import (
    Annotated,
    Any,
    Literal,
    Self,
)

from pydantic import (
    AliasChoices,
    BeforeValidator,
    Field,
    NonNegativeInt,
    PositiveFloat,
    PositiveInt,
    model_validator,
)

from zakharov.lib.bourgain import Estimate
from zakharov.lib.harness.fitting import (
    coupled_resolution,
    coupling_constant,
)
from zakharov.lib.integrator import Variant

from . import HardSchema

POWER = r"\s*2\s*\^\s*([+-]?\d+)\s*"


def parse_number(token: str | float) -> float:
    if not isinstance(token, str):
        return float(token)

    if match := fullmatch(POWER, token):
        return 2.0 ** int(match.group(1))

    return float(token)


def parse_numbers(value: Any) -> Any:
    """`0.5,1,2`, `2^-8` and inclusive dyadic ranges `2^-8..2^-12` into a list of floats."""
    if isinstance(value, (int, float)):
        return [float(value)]

    if isinstance(value, str):
        value = [token for token in value.split(",") if token.strip()]

    if not isinstance(value, list | tuple):
        return value

    numbers: list[float] = []

    for token in value:
        if isinstance(token, str) and ".." in token:
            first, last = token.split("..", 1)
            start, stop = fullmatch(POWER, first), fullmatch(POWER, last)

            if start is None or stop is None:
                raise ValueError(f"Ranges must be dyadic like 2^-8..2^-12, got {token!r}")

            lower, upper = int(start.group(1)), int(stop.group(1))
            step = 1 if upper >= lower else -1
            numbers += [2.0**exponent for exponent in range(lower, upper + step, step)]
        else:
            numbers.append(parse_number(token))

    return numbers


def parse_scalar(value: Any) -> Any:
    return parse_number(value) if isinstance(value, str) else value


def parse_integer(value: Any) -> Any:
    return int(value) if isinstance(value, str) else value


type NumberList = Annotated[list[float], BeforeValidator(parse_numbers), Field(min_length=1)]
type Step = Annotated[PositiveFloat, BeforeValidator(parse_scalar)]
type Dimension = Annotated[Literal[1, 2, 3], BeforeValidator(parse_integer)]
type Cutoff = Annotated[float, BeforeValidator(parse_scalar), Field(gt=0, lt=2 * pi)]
type Seed = Annotated[int, Field(ge=0, lt=2**64)]


def _final_time() -> Any:
    return AliasChoices("t_final", "T", "t")


def _is_even(value: int) -> bool:
    return value >= 2 and value % 2 == 0


class ConvergenceConfig(HardSchema):
    dim: Dimension = 1
    s1_list: NumberList = Field(default=[0.5, 1.0, 2.0], validation_alias=AliasChoices("s1_list", "s1"))
    tau_list: NumberList = Field(
        default=[2.0**-exponent for exponent in range(8, 13)],
        validation_alias=AliasChoices("tau_list", "tau"),
    )
    kappa: PositiveFloat | None = None
    n_ref: PositiveInt = 2**10
    tau_ref: Step = 2.0**-18
    n_fixed: PositiveInt | None = None
    seed: Seed = 42
    c: Cutoff = 1.0
    variant: Variant = Variant.FILTERED
    t_final: Step = Field(default=1.0, validation_alias=_final_time())
    out: Path = Path("results")

    @model_validator(mode="after")
    def validate_model(self) -> Self:
        if any(tau <= 0 for tau in self.tau_list):
            raise ValueError("Time steps must be positive")

        if any(s1 <= 0 for s1 in self.s1_list):
            raise ValueError("Regularity offsets s1 must be positive")

        if self.tau_ref > min(self.tau_list) / 16 and not isclose(self.tau_ref, min(self.tau_list) / 16):
            raise ValueError(f"Reference step {self.tau_ref} exceeds min(tau)/16 = {min(self.tau_list) / 16}")

        if not _is_even(self.n_ref):
            raise ValueError(f"Reference resolution must be even, got {self.n_ref}")

        if self.n_fixed is not None and not _is_even(self.n_fixed):
            raise ValueError(f"Fixed resolution must be even, got {self.n_fixed}")

        kappa = self.kappa or coupling_constant(self.dim)
        finest = self.n_fixed or max(coupled_resolution(tau, kappa) for tau in self.tau_list)

        if self.n_ref < finest:
            raise ValueError(f"Reference resolution {self.n_ref} is below the finest run resolution {finest}")

        return self

    def resolution(self, tau: float) -> int:
        return self.n_fixed or coupled_resolution(tau, self.kappa or coupling_constant(self.dim))


class ConservationConfig(HardSchema):
    dim: Dimension = 1
    n: PositiveInt = 2**8
    tau: Step = 2.0**-16
    s2: PositiveFloat = 0.5
    t_final: Step = Field(default=100.0, validation_alias=_final_time())
    seed: Seed = 7
    c: Cutoff = 1.0
    stride: PositiveInt = 1
    checkpoint_every: NonNegativeInt = 0
    out: Path = Path("results")

    @model_validator(mode="after")
    def validate_model(self) -> Self:
        if not _is_even(self.n):
            raise ValueError(f"Resolution must be even, got {self.n}")

        return self


class SimulationConfig(ConservationConfig):
    variant: Variant = Variant.FILTERED
    t_final: Step = Field(default=1.0, validation_alias=_final_time())


class DataConfig(HardSchema):
    dim: Dimension = 1
    n: PositiveInt = 2**8
    s2: PositiveFloat = 0.5
    seed: Seed = 42
    csv: bool = False
    out: Path = Path("data")

    @model_validator(mode="after")
    def validate_model(self) -> Self:
        if not _is_even(self.n):
            raise ValueError(f"Resolution must be even, got {self.n}")

        return self


class BourgainCheckConfig(HardSchema):
    dim: Dimension = 1
    n: PositiveInt = 16
    m: PositiveInt = 16
    tau: Step = 2.0**-6
    s1: PositiveFloat = 0.5
    b: float = 0.45
    b0: float = 0.55
    trials: PositiveInt = 50
    levels: Annotated[int, Field(ge=1, le=4)] = 2
    decay: float = 1.0
    estimates: list[Estimate] = Field(default=list(Estimate))
    seed: Seed = 42
    c: Cutoff = 1.0
    out: Path = Path("results")

    @model_validator(mode="before")
    @classmethod
    def split_estimates(cls, data: Any) -> Any:
        if isinstance(data, dict) and isinstance(estimates := data.get("estimates"), str):
            data = data | dict(estimates=[token.strip() for token in estimates.split(",") if token.strip()])

        return data

    @model_validator(mode="after")
    def validate_model(self) -> Self:
        if not _is_even(self.n):
            raise ValueError(f"Resolution must be even, got {self.n}")

        if not self.b0 > 0.5:
            raise ValueError(f"Embedding exponent b0 must exceed 1/2, got {self.b0}")

        return self
