from pathlib import Path
from struct import Struct

from pydantic import NonNegativeInt

from zakharov.lib.spectral.serialization import (
    read_spectrum_from,
    spectrum_to_bytes,
)
from zakharov.lib.state import ZState
from zakharov.schemas import FrozenSchema

from .params import (
    SchemeParams,
    Variant,
)

MAGIC = b"ZSCK"
VERSION = 1
# magic, version, step, tau, c, variant
HEADER = Struct("<4sIQddB7x")
VARIANT_CODES = {Variant.FILTERED: 0, Variant.UNFILTERED: 1}


class Checkpoint(FrozenSchema):
    state: ZState
    params: SchemeParams
    step: NonNegativeInt

    @property
    def time(self) -> float:
        return self.step * self.params.tau


def save_checkpoint(path: Path, state: ZState, params: SchemeParams, step: int) -> Path:
    header = HEADER.pack(MAGIC, VERSION, step, params.tau, params.c, VARIANT_CODES[params.variant])

    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(header + spectrum_to_bytes(state.E) + spectrum_to_bytes(state.u))

    return path


def load_checkpoint(path: Path) -> Checkpoint:
    with path.open("rb") as stream:
        magic, version, step, tau, c, code = HEADER.unpack(stream.read(HEADER.size))

        if magic != MAGIC:
            raise ValueError(f"{path} is not a state checkpoint")

        if version != VERSION:
            raise ValueError(f"Unsupported checkpoint version {version}")

        E = read_spectrum_from(stream)
        u = read_spectrum_from(stream)

    variant = next(variant for variant, value in VARIANT_CODES.items() if value == code)
    state = ZState(E=E, u=u)

    return Checkpoint(state=state, params=SchemeParams.create(tau, state.grid, c, variant), step=step)
