import numpy as np

from zakharov.lib.spectral import (
    Spectrum,
    fractional_gradient,
    schrodinger_propagator,
    wave_propagator,
)
from zakharov.lib.spectral.spectrum import (
    to_coefficients,
    to_grid,
)


def linear_subflow(F0: Spectrum, v0: Spectrum, t: float) -> tuple[Spectrum, Spectrum]:
    # F_t = iΔF, v_t = i|∇|v
    return schrodinger_propagator(F0, t), wave_propagator(v0, t)


def nonlinear_subflow(G0: Spectrum, w0: Spectrum, t: float) -> tuple[Spectrum, Spectrum]:
    # G_t = -(i/2)(w + conj w)G, w_t = i|∇|(G conj G); Re w and |G| stay constant
    G_grid = to_grid(G0.coeffs)
    real_w = to_grid(w0.coeffs).real
    G = G0.replace(to_coefficients(np.exp(-1j * t * real_w) * G_grid))

    density = G0.replace(to_coefficients(np.abs(G_grid) ** 2))
    w = w0 + 1j * t * fractional_gradient(density, 1)

    return G, w
