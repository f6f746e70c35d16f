import numpy as np
from numpy.typing import NDArray

from zakharov.lib.errors import (
    ConfigInvalid,
    NonFiniteState,
)
from zakharov.lib.spectral import gradient_symbol
from zakharov.lib.spectral.spectrum import (
    conjugate_coefficients,
    to_coefficients,
    to_grid,
)
from zakharov.lib.state import ZState

type Coefficients = NDArray[np.complex128]


class FirstOrderSystem:
    """Pseudo-spectral right-hand side of iE_t = -ΔE + ½(u + ū)E, iu_t = -|∇|u - |∇|(EĒ)."""

    def __init__(self, state: ZState):
        self.k_squared = state.grid.k_squared()
        self.gradient = gradient_symbol(state.grid, 1)

    def __call__(self, E: Coefficients, u: Coefficients) -> tuple[Coefficients, Coefficients]:
        E_grid = to_grid(E)
        coupling = to_grid(u + conjugate_coefficients(u)).real

        dE = -1j * self.k_squared * E - 0.5j * to_coefficients(coupling * E_grid)
        du = 1j * self.gradient * (u + to_coefficients(np.abs(E_grid) ** 2))

        return dE, du


def rk4_reference(state: ZState, t: float, dt: float) -> ZState:
    """Classical RK4 on the first-order system; only meaningful for smooth, well-resolved data."""
    if dt <= 0 or t < 0:
        raise ConfigInvalid(f"RK4 needs dt > 0 and t >= 0, got dt={dt}, t={t}")

    n_steps = round(t / dt)

    if abs(n_steps * dt - t) > 1e-12 * max(1.0, t):
        raise ConfigInvalid(f"RK4 step {dt} does not divide t={t}")

    rhs = FirstOrderSystem(state)
    E, u = state.E.coeffs, state.u.coeffs

    for step in range(1, n_steps + 1):
        k1 = rhs(E, u)
        k2 = rhs(E + 0.5 * dt * k1[0], u + 0.5 * dt * k1[1])
        k3 = rhs(E + 0.5 * dt * k2[0], u + 0.5 * dt * k2[1])
        k4 = rhs(E + dt * k3[0], u + dt * k3[1])

        E = E + dt / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        u = u + dt / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])

        if not (np.isfinite(E).all() and np.isfinite(u).all()):
            raise NonFiniteState(step)

    return ZState(E=state.E.replace(E), u=state.u.replace(u))
