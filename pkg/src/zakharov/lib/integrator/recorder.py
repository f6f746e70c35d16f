from csv import DictWriter
from pathlib import Path
from types import TracebackType
from typing import (
    Self,
    TextIO,
)

from loguru import logger

from zakharov.lib.diagnostics import (
    ConservationRow,
    conservation_row,
    mass,
    state_energy,
)
from zakharov.lib.state import ZState

from .checkpoint import save_checkpoint
from .params import SchemeParams

FIELDNAMES = list(ConservationRow.model_fields)


class TrajectoryRecorder:
    rows: list[ConservationRow]

    def __init__(
        self,
        params: SchemeParams,
        *,
        path: Path | None = None,
        flush_interval: int = 100,
        checkpoint_directory: Path | None = None,
        checkpoint_every: int = 0,
    ):
        self.rows = []
        self.params = params
        self.path = path
        self.flush_interval = max(1, flush_interval)
        self.checkpoint_directory = checkpoint_directory
        self.checkpoint_every = checkpoint_every

        self._file: TextIO | None = None
        self._writer: DictWriter[str] | None = None
        self._pending = 0
        self._mass0 = 0.0
        self._energy0 = 0.0

    def __enter__(self) -> Self:
        if self.path is not None:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self._file = self.path.open("w", newline="", encoding="utf-8")
            self._writer = DictWriter(self._file, fieldnames=FIELDNAMES)
            self._writer.writeheader()

        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc_value: BaseException | None,
        traceback: TracebackType | None,
    ) -> None:
        if self._file is not None:
            self._file.close()
            self._file = None
            self._writer = None

    def __call__(self, step: int, state: ZState) -> None:
        if step == 0:
            self._mass0 = mass(state.E)
            self._energy0 = state_energy(state)

        row = conservation_row(step, step * self.params.tau, state, self._mass0, self._energy0)
        self.rows.append(row)

        if self._writer is not None and self._file is not None:
            self._writer.writerow(row.model_dump())
            self._pending += 1

            if self._pending >= self.flush_interval:
                self._file.flush()
                self._pending = 0

        if self.checkpoint_directory is not None and self.checkpoint_every and step % self.checkpoint_every == 0:
            path = save_checkpoint(self.checkpoint_directory / f"state_{step:09d}.zsck", state, self.params, step)
            logger.debug("Saved checkpoint", step=step, path=str(path))
