from .grid import Grid
from .operators import (
    cutoff_mask,
    filter_cutoff,
    filter_is_redundant,
    fractional_gradient,
    gradient_symbol,
    schrodinger_propagator,
    schrodinger_symbol,
    sobolev_norm,
    sobolev_weight,
    wave_propagator,
    wave_symbol,
)
from .serialization import (
    dump_spectrum_csv,
    read_spectrum,
    write_spectrum,
)
from .spectrum import (
    Field,
    Spectrum,
    forward_dft,
    inverse_dft,
    resample,
)

__all__ = [
    "Field",
    "Grid",
    "Spectrum",
    "cutoff_mask",
    "dump_spectrum_csv",
    "filter_cutoff",
    "filter_is_redundant",
    "forward_dft",
    "fractional_gradient",
    "gradient_symbol",
    "inverse_dft",
    "read_spectrum",
    "resample",
    "schrodinger_propagator",
    "schrodinger_symbol",
    "sobolev_norm",
    "sobolev_weight",
    "wave_propagator",
    "wave_symbol",
    "write_spectrum",
]
