from enum import StrEnum
from math import (
    pi,
    sqrt,
)
from typing import (
    Self,
    overload,
)

import numpy as np
from numpy.typing import NDArray
from pydantic import (
    Field,
    PositiveFloat,
    model_validator,
)
from scipy import fft

from zakharov.lib.errors import (
    GridMismatch,
    InvalidExponents,
    ZeroSequence,
)
from zakharov.lib.spectral import (
    Grid,
    Spectrum,
    cutoff_mask,
    sobolev_norm,
    sobolev_weight,
)
from zakharov.lib.spectral.spectrum import (
    conjugate_coefficients,
    to_coefficients,
    to_grid,
)
from zakharov.schemas import FrozenSchema
from zakharov.schemas.environment import Environment

ZERO_DENOMINATOR = 1e-300


class BourgainFlavor(StrEnum):
    # X_1: <d_τ(σ + |k|²)>, X_2: <d_τ(σ - |k|)>
    SCHRODINGER = "schrodinger"
    WAVE = "wave"


class Estimate(StrEnum):
    M1 = "M1"
    M3 = "M3"
    M4 = "M4"
    M2 = "M2"
    M5 = "M5"


class TimeSeq(FrozenSchema):
    """Finite sequence v_0, ..., v_{M-1} with step τ, extended M-periodically in time."""

    tau: PositiveFloat
    entries: list[Spectrum] = Field(min_length=1)

    @model_validator(mode="after")
    def validate_model(self) -> Self:
        grid = self.entries[0].grid

        if any(entry.grid != grid for entry in self.entries):
            raise GridMismatch("All entries of a time sequence must share one grid")

        return self

    @classmethod
    def from_array(cls, grid: Grid, tau: float, coeffs: NDArray[np.complex128]) -> Self:
        return cls(tau=tau, entries=[Spectrum(grid=grid, coeffs=entry) for entry in coeffs])

    @property
    def grid(self) -> Grid:
        return self.entries[0].grid

    @property
    def length(self) -> int:
        return len(self.entries)

    def stack(self) -> NDArray[np.complex128]:
        return np.stack([entry.coeffs for entry in self.entries])

    def scaled(self, factor: complex) -> Self:
        return type(self)(tau=self.tau, entries=[factor * entry for entry in self.entries])


@overload
def d_tau_symbol(sigma: float, tau: float) -> complex: ...


@overload
def d_tau_symbol(sigma: NDArray[np.float64], tau: float) -> NDArray[np.complex128]: ...


def d_tau_symbol(sigma: float | NDArray[np.float64], tau: float) -> complex | NDArray[np.complex128]:
    # (e^{iτσ} - 1)/τ, 2π/τ-periodic
    if not tau > 0:
        raise ValueError(f"Time step must be positive, got {tau}")

    value = (np.exp(1j * tau * np.asarray(sigma)) - 1) / tau

    return complex(value) if np.ndim(value) == 0 else value


def _bracket(value: NDArray[np.complex128]) -> NDArray[np.float64]:
    return np.sqrt(1.0 + np.abs(value) ** 2)


def _frequencies(length: int, tau: float) -> NDArray[np.float64]:
    # σ_j = 2πj/(Mτ)
    return 2 * pi * np.fft.fftfreq(length, d=tau)


def _time_axis(length: int, dim: int) -> NDArray[np.float64]:
    return np.arange(length, dtype=np.float64).reshape((length,) + (1,) * dim)


def _dispersion(grid: Grid, flavor: BourgainFlavor) -> NDArray[np.float64]:
    # symbol φ(k) with e^{-inτA} = e^{inτφ(k)}: Δ -> |k|², |∇| -> -|k|
    match flavor:
        case BourgainFlavor.SCHRODINGER:
            return grid.k_squared()

        case BourgainFlavor.WAVE:
            return -grid.k_norm()


def _time_transform(coeffs: NDArray[np.complex128], tau: float) -> NDArray[np.complex128]:
    # τ Σ_n v̂_n e^{-inτσ_j}
    return tau * fft.fft(coeffs, axis=0, workers=Environment.load().fft_workers)


def _weighted_norm(
    transform: NDArray[np.complex128],
    symbol: NDArray[np.complex128],
    grid: Grid,
    tau: float,
    s: float,
    b: float,
) -> float:
    length = transform.shape[0]
    weights = sobolev_weight(grid, 2 * s)[np.newaxis] * _bracket(symbol) ** (2 * b)
    # (1/2π) Σ_j Δσ with Δσ = 2π/(Mτ)
    total = float(np.sum(weights * np.abs(transform) ** 2)) / (length * tau)

    return sqrt(total)


def operator_form_norm(seq: TimeSeq, s: float, b: float, flavor: BourgainFlavor) -> float:
    """‖<D_τ>^b e^{-inτA} v_n‖_{l²_τ H^s} through the time transform of the gauge-removed sequence."""
    grid, length = seq.grid, seq.length
    phase = np.exp(1j * seq.tau * _time_axis(length, grid.dim) * _dispersion(grid, flavor)[np.newaxis])
    transform = _time_transform(phase * seq.stack(), seq.tau)
    sigma = _frequencies(length, seq.tau).reshape((length,) + (1,) * grid.dim)

    return _weighted_norm(transform, d_tau_symbol(sigma, seq.tau), grid, seq.tau, s, b)


def transform_form_norm(seq: TimeSeq, s: float, b: float, flavor: BourgainFlavor) -> float:
    """‖<k>^s <d_τ(σ ± symbol)>^b ṽ(σ, k)‖ evaluated on the periodic σ grid without gauge removal."""
    grid, length = seq.grid, seq.length
    transform = _time_transform(seq.stack(), seq.tau)
    sigma = _frequencies(length, seq.tau).reshape((length,) + (1,) * grid.dim)
    shifted = sigma + _dispersion(grid, flavor)[np.newaxis]

    return _weighted_norm(transform, d_tau_symbol(shifted, seq.tau), grid, seq.tau, s, b)


def discrete_bourgain_norm(seq: TimeSeq, s: float, b: float, flavor: BourgainFlavor) -> float:
    return operator_form_norm(seq, s, b, flavor)


def norm_equivalence_ratio(seq: TimeSeq, s: float, b: float, flavor: BourgainFlavor) -> float:
    operator = operator_form_norm(seq, s, b, flavor)

    return transform_form_norm(seq, s, b, flavor) / operator if operator > 0 else 0.0


def embedding_ratio(seq: TimeSeq, s: float, b: float, flavor: BourgainFlavor) -> float:
    # l^∞_τ H^s against X^{s,b}, b > 1/2
    if not b > 0.5:
        raise InvalidExponents(f"The embedding needs b > 1/2, got {b}")

    denominator = discrete_bourgain_norm(seq, s, b, flavor)

    if denominator < ZERO_DENOMINATOR:
        raise ZeroSequence("The sequence vanishes identically")

    return max(sobolev_norm(entry, s) for entry in seq.entries) / denominator


def admissible_b_window(s0: float, s2: float) -> tuple[float, float]:
    return max(3 / 8, 0.5 - 0.5 * (s2 - s0)), 0.5


class MultilinearParams(FrozenSchema):
    s0: float = Field(ge=0)
    s2: float
    b: float
    theta: PositiveFloat
    c: float = Field(default=1.0, gt=0, lt=2 * pi)

    def check_window(self) -> None:
        if not self.s2 > self.s0:
            raise InvalidExponents(f"Need s2 > s0, got s2 = {self.s2}, s0 = {self.s0}")

        lower, upper = admissible_b_window(self.s0, self.s2)

        if not lower < self.b < upper:
            raise InvalidExponents(f"b = {self.b} lies outside the admissible window ({lower}, {upper})")


class _Norm(FrozenSchema):
    flavor: BourgainFlavor
    s: float


class _Layout(FrozenSchema):
    lhs: _Norm
    conjugates: tuple[tuple[bool, bool], tuple[bool, bool]]
    v: _Norm
    w: _Norm


def _layout(estimate: Estimate, s0: float, s2: float) -> _Layout:
    X1, X2 = BourgainFlavor.SCHRODINGER, BourgainFlavor.WAVE
    # (v w, conj(v) w) for the Schrödinger products, (v conj(w), conj(v) w) for the wave products
    schrodinger_pairs = ((False, False), (True, False))
    wave_pairs = ((False, True), (True, False))

    match estimate:
        case Estimate.M1:
            return _Layout(
                lhs=_Norm(flavor=X1, s=s2 + 0.5),
                conjugates=schrodinger_pairs,
                v=_Norm(flavor=X2, s=s2),
                w=_Norm(flavor=X1, s=s2 + 0.5),
            )

        case Estimate.M3:
            return _Layout(
                lhs=_Norm(flavor=X1, s=s0 + 0.5),
                conjugates=schrodinger_pairs,
                v=_Norm(flavor=X2, s=s0),
                w=_Norm(flavor=X1, s=s2 + 0.5),
            )

        case Estimate.M4:
            return _Layout(
                lhs=_Norm(flavor=X1, s=s0 + 0.5),
                conjugates=schrodinger_pairs,
                v=_Norm(flavor=X2, s=s2),
                w=_Norm(flavor=X1, s=s0 + 0.5),
            )

        case Estimate.M2:
            return _Layout(
                lhs=_Norm(flavor=X2, s=s2 + 1),
                conjugates=wave_pairs,
                v=_Norm(flavor=X1, s=s2 + 0.5),
                w=_Norm(flavor=X1, s=s2 + 0.5),
            )

        case Estimate.M5:
            return _Layout(
                lhs=_Norm(flavor=X2, s=s0 + 1),
                conjugates=wave_pairs,
                v=_Norm(flavor=X1, s=s2 + 0.5),
                w=_Norm(flavor=X1, s=s0 + 0.5),
            )


def projected_product(
    v: TimeSeq,
    w: TimeSeq,
    theta: float,
    c: float,
    conjugate_v: bool = False,
    conjugate_w: bool = False,
) -> TimeSeq:
    """Stepwise grid product Π_θ v_n · Π_θ w_n (either factor optionally conjugated before projection)."""
    grid = v.grid
    mask = cutoff_mask(grid, theta, c)

    def projected_values(spectrum: Spectrum, conjugate: bool) -> NDArray[np.complex128]:
        coeffs = conjugate_coefficients(spectrum.coeffs) if conjugate else spectrum.coeffs

        return to_grid(mask * coeffs)

    products = [
        to_coefficients(projected_values(left, conjugate_v) * projected_values(right, conjugate_w))
        for left, right in zip(v.entries, w.entries, strict=True)
    ]

    return TimeSeq.from_array(grid, v.tau, np.stack(products))


def multilinear_ratio(v: TimeSeq, w: TimeSeq, estimate: Estimate | str, params: MultilinearParams) -> float:
    if v.grid != w.grid or v.length != w.length or v.tau != w.tau:
        raise GridMismatch("Both sequences need the same grid, length and time step")

    params.check_window()

    if params.theta < v.tau:
        raise InvalidExponents(f"Need θ >= τ, got θ = {params.theta}, τ = {v.tau}")

    layout = _layout(Estimate(estimate), params.s0, params.s2)
    b = params.b

    rhs = discrete_bourgain_norm(v, layout.v.s, b, layout.v.flavor) * discrete_bourgain_norm(
        w, layout.w.s, b, layout.w.flavor
    )

    if rhs < ZERO_DENOMINATOR:
        return 0.0

    lhs = sum(
        discrete_bourgain_norm(
            projected_product(v, w, params.theta, params.c, conjugate_v, conjugate_w),
            layout.lhs.s,
            -b,
            layout.lhs.flavor,
        )
        for conjugate_v, conjugate_w in layout.conjugates
    )

    return lhs / rhs


def random_sequence(
    rng: np.random.Generator,
    grid: Grid,
    length: int,
    tau: float,
    decay: float = 1.0,
) -> TimeSeq:
    shape = (length,) + grid.shape
    draws = rng.uniform(-1.0, 1.0, shape) + 1j * rng.uniform(-1.0, 1.0, shape)

    return TimeSeq.from_array(grid, tau, sobolev_weight(grid, -decay)[np.newaxis] * draws)
