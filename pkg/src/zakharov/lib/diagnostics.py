from math import (
    inf,
    pi,
)

import numpy as np
from pydantic import (
    NonNegativeFloat,
    NonNegativeInt,
    computed_field,
)

from zakharov.lib.errors import GridMismatch
from zakharov.lib.spectral import (
    Spectrum,
    fractional_gradient,
    resample,
    sobolev_norm,
)
from zakharov.lib.spectral.spectrum import to_grid
from zakharov.lib.state import (
    WaveData,
    ZState,
)
from zakharov.schemas import FrozenSchema


class ErrorTriple(FrozenSchema):
    e_E: NonNegativeFloat
    e_z: NonNegativeFloat
    e_zt: NonNegativeFloat

    @computed_field
    @property
    def total(self) -> float:
        return self.e_E + self.e_z + self.e_zt


class ConservationRow(FrozenSchema):
    step: NonNegativeInt
    time: NonNegativeFloat
    mass: float
    mass_rel_drift: float
    energy: float
    energy_rel_drift: float


def _volume(spectrum: Spectrum) -> float:
    return (2 * pi) ** spectrum.grid.dim


def mass(E: Spectrum) -> float:
    # ∫|E|² = (2π)^d Σ|c_k|²
    return _volume(E) * E.l2_squared()


def energy(E: Spectrum, data: WaveData) -> float:
    """Discrete Hamiltonian: spectral quadratic terms, grid quadrature for the cubic coupling z|E|²."""
    if E.grid != data.grid:
        raise GridMismatch(f"E lives on {E.grid} but the wave data on {data.grid}")

    volume = _volume(E)
    grid = E.grid

    kinetic = volume * float(np.sum(grid.k_squared() * np.abs(E.coeffs) ** 2))
    coupling_density = to_grid(data.z0.coeffs).real * np.abs(to_grid(E.coeffs)) ** 2
    coupling = grid.spacing**grid.dim * float(np.sum(coupling_density))
    wave_kinetic = 0.5 * volume * fractional_gradient(data.z1, -1).l2_squared()
    potential = 0.5 * volume * data.z0.l2_squared()

    return kinetic + coupling + wave_kinetic + potential


def state_energy(state: ZState) -> float:
    return energy(state.E, state.decode())


def error_triple(numerical: ZState, reference: ZState, s0: float) -> ErrorTriple:
    """H^{s0+1/2} x H^{s0} x H^{s0-1} distance, compared on the finer of the two grids."""
    coarse, fine = numerical.grid, reference.grid

    if not (coarse.embeds_in(fine) or fine.embeds_in(coarse)):
        raise GridMismatch(f"Neither {coarse} nor {fine} embeds in the other")

    target = fine if coarse.embeds_in(fine) else coarse
    numerical_data, reference_data = numerical.decode(), reference.decode()

    def difference(left: Spectrum, right: Spectrum) -> Spectrum:
        return resample(left, target) - resample(right, target)

    return ErrorTriple(
        e_E=sobolev_norm(difference(numerical.E, reference.E), s0 + 0.5),
        e_z=sobolev_norm(difference(numerical_data.z0, reference_data.z0), s0),
        e_zt=sobolev_norm(difference(numerical_data.z1, reference_data.z1), s0 - 1),
    )


def relative_drift(value: float, initial: float) -> float:
    if initial == 0:
        return 0.0 if value == 0 else inf

    return (value - initial) / abs(initial)


def conservation_row(step: int, time: float, state: ZState, mass0: float, energy0: float) -> ConservationRow:
    current_mass = mass(state.E)
    current_energy = state_energy(state)

    return ConservationRow(
        step=step,
        time=time,
        mass=current_mass,
        mass_rel_drift=relative_drift(current_mass, mass0),
        energy=current_energy,
        energy_rel_drift=relative_drift(current_energy, energy0),
    )
