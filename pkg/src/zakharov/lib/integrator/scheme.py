from collections.abc import Callable

import numpy as np
from loguru import logger
from numpy.typing import NDArray

from zakharov.lib.errors import (
    ConfigInvalid,
    NonFiniteState,
)
from zakharov.lib.spectral import (
    cutoff_mask,
    gradient_symbol,
    schrodinger_symbol,
    wave_symbol,
)
from zakharov.lib.spectral.spectrum import (
    conjugate_coefficients,
    to_coefficients,
    to_grid,
)
from zakharov.lib.state import ZState

from .params import (
    SchemeParams,
    Variant,
)

type Coefficients = NDArray[np.complex128]
type Observer = Callable[[int, ZState], None]


class Scheme:
    params: SchemeParams

    def __init__(self, params: SchemeParams):
        grid = params.grid

        self.params = params
        self.schrodinger = schrodinger_symbol(grid, params.tau)
        self.wave = wave_symbol(grid, params.tau)
        self.gradient = gradient_symbol(grid, 1)
        self.mask = cutoff_mask(grid, params.theta, params.c)

    @property
    def filter_redundant(self) -> bool:
        return bool(self.mask.all())

    def step(self, E: Coefficients, u: Coefficients) -> tuple[Coefficients, Coefficients]:
        match self.params.variant:
            case Variant.FILTERED:
                return self.filtered(E, u)

            case Variant.UNFILTERED:
                return self.unfiltered(E, u)

    def unfiltered(self, E: Coefficients, u: Coefficients) -> tuple[Coefficients, Coefficients]:
        tau = self.params.tau

        E_grid = to_grid(E)
        # u + conj u is real on the grid; the imaginary residue is round-off
        coupling = to_grid(u + conjugate_coefficients(u)).real
        E_next = self.schrodinger * to_coefficients(np.exp(-0.5j * tau * coupling) * E_grid)

        density = to_coefficients(E_grid * np.conj(E_grid))
        u_next = self.wave * (u + 1j * tau * self.gradient * density)

        return E_next, u_next

    def filtered(self, E: Coefficients, u: Coefficients) -> tuple[Coefficients, Coefficients]:
        tau, mask = self.params.tau, self.mask

        projected_E = mask * E
        projected_E_bar = mask * conjugate_coefficients(E)
        projected_u = mask * u
        projected_u_bar = mask * conjugate_coefficients(u)

        E_grid = to_grid(projected_E)
        coupling = to_grid(projected_u + projected_u_bar).real
        E_next = self.schrodinger * (mask * to_coefficients(np.exp(-0.5j * tau * coupling) * E_grid))

        density = mask * to_coefficients(E_grid * to_grid(projected_E_bar))
        u_next = self.wave * (1j * tau * self.gradient * density + projected_u)

        return E_next, u_next


def _apply(state: ZState, params: SchemeParams, variant: Variant) -> ZState:
    if params.variant != variant:
        raise ConfigInvalid(f"Step map for the {variant} scheme called with {params.variant} parameters")

    if state.grid != params.grid:
        raise ConfigInvalid(f"State grid {state.grid} differs from scheme grid {params.grid}")

    E, u = Scheme(params).step(state.E.coeffs, state.u.coeffs)

    return ZState(E=state.E.replace(E), u=state.u.replace(u))


def lie_step_unfiltered(state: ZState, params: SchemeParams) -> ZState:
    return _apply(state, params, Variant.UNFILTERED)


def lie_step_filtered(state: ZState, params: SchemeParams) -> ZState:
    return _apply(state, params, Variant.FILTERED)


def _finite(E: Coefficients, u: Coefficients) -> bool:
    return bool(np.isfinite(E).all() and np.isfinite(u).all())


def _snapshot(template: ZState, E: Coefficients, u: Coefficients) -> ZState:
    return ZState(E=template.E.replace(E), u=template.u.replace(u))


def evolve(
    state: ZState,
    params: SchemeParams,
    n_steps: int,
    observer: Observer | None = None,
    every: int = 1,
) -> ZState:
    """Apply the selected step map n_steps times; the observer sees step 0, every m-th step and the last one."""
    if n_steps < 0:
        raise ConfigInvalid(f"Number of steps must be non-negative, got {n_steps}")

    if every < 1:
        raise ConfigInvalid(f"Observer stride must be positive, got {every}")

    if state.grid != params.grid:
        raise ConfigInvalid(f"State grid {state.grid} differs from scheme grid {params.grid}")

    scheme = Scheme(params)

    if not params.cfl_satisfied:
        logger.debug(
            "CFL condition violated",
            variant=params.variant,
            tau=params.tau,
            n=params.grid.n_per_axis,
            filter_redundant=scheme.filter_redundant,
        )

    if observer is not None:
        observer(0, state)

    E, u = state.E.coeffs, state.u.coeffs

    for step in range(1, n_steps + 1):
        E, u = scheme.step(E, u)

        if not _finite(E, u):
            logger.error("Non-finite state", step=step, variant=params.variant, tau=params.tau)

            raise NonFiniteState(step)

        if observer is not None and (step % every == 0 or step == n_steps):
            observer(step, _snapshot(state, E, u))

    return _snapshot(state, E, u) if n_steps else state
