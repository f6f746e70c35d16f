from pathlib import Path
from time import perf_counter

from loguru import logger
from pydantic import (
    NonNegativeFloat,
    NonNegativeInt,
)
from scipy.stats import linregress

from zakharov.lib.diagnostics import ConservationRow
from zakharov.lib.initial_data import (
    RoughDataSpec,
    random_rough_fields,
    write_data,
)
from zakharov.lib.integrator import (
    SchemeParams,
    TrajectoryRecorder,
    Variant,
    evolve,
    save_checkpoint,
)
from zakharov.lib.spectral import Grid
from zakharov.lib.state import ZState
from zakharov.schemas import FrozenSchema
from zakharov.schemas.study import (
    ConservationConfig,
    DataConfig,
    SimulationConfig,
)

from .convergence import step_count
from .output import render_plot


class ConservationSummary(FrozenSchema):
    steps: NonNegativeInt
    final_time: NonNegativeFloat
    max_mass_drift: NonNegativeFloat
    max_energy_drift: NonNegativeFloat
    energy_trend_slope: float
    energy_trend_stderr: NonNegativeFloat
    cfl_satisfied: bool

    @property
    def trend_negligible(self) -> bool:
        return abs(self.energy_trend_slope) <= 2 * self.energy_trend_stderr


def summarize(rows: list[ConservationRow], cfl_satisfied: bool = True) -> ConservationSummary:
    times = [row.time for row in rows]
    drifts = [row.energy_rel_drift for row in rows]

    if len(rows) >= 3:
        trend = linregress(times, drifts)
        slope, stderr = float(trend.slope), float(trend.stderr)
    else:
        slope, stderr = 0.0, 0.0

    return ConservationSummary(
        steps=rows[-1].step if rows else 0,
        final_time=rows[-1].time if rows else 0.0,
        max_mass_drift=max((abs(row.mass_rel_drift) for row in rows), default=0.0),
        max_energy_drift=max((abs(drift) for drift in drifts), default=0.0),
        energy_trend_slope=slope,
        energy_trend_stderr=stderr,
        cfl_satisfied=cfl_satisfied,
    )


def _initial_state(config: ConservationConfig, grid: Grid) -> ZState:
    E0, data = random_rough_fields(RoughDataSpec(grid=grid, s2=config.s2, seed=config.seed))

    return ZState.from_data(E0, data)


def _recorded_run(
    config: ConservationConfig,
    params: SchemeParams,
    state: ZState,
    log: Path,
) -> tuple[ZState, list[ConservationRow]]:
    steps = step_count(config.t_final, config.tau)
    checkpoints = config.out / "checkpoints" if config.checkpoint_every else None
    started = perf_counter()

    with TrajectoryRecorder(
        params,
        path=log,
        checkpoint_directory=checkpoints,
        checkpoint_every=config.checkpoint_every,
    ) as recorder:
        final = evolve(state, params, steps, observer=recorder, every=config.stride)

    logger.info("Finished run", steps=steps, variant=params.variant, seconds=perf_counter() - started)

    return final, recorder.rows


def conservation_study(config: ConservationConfig, initial: ZState | None = None) -> ConservationSummary:
    grid = Grid.cube(config.dim, config.n)
    params = SchemeParams.create(config.tau, grid, config.c, Variant.FILTERED)

    if not params.cfl_satisfied:
        logger.warning("CFL condition violated, the projector will remove mass", tau=config.tau, n=config.n)

    state = initial if initial is not None else _initial_state(config, grid)
    log = config.out / "conserve.csv"
    _, rows = _recorded_run(config, params, state, log)
    summary = summarize(rows, params.cfl_satisfied)

    render_plot(
        "fig_conservation",
        config.out / "fig_conservation.plot",
        log=log.name,
        output="fig_conservation.png",
        dim=config.dim,
        n=config.n,
        tau=config.tau,
        s2=config.s2,
    )

    logger.info(
        "Conservation summary",
        max_mass_drift=summary.max_mass_drift,
        max_energy_drift=summary.max_energy_drift,
        trend=summary.energy_trend_slope,
    )

    return summary


def simulate(config: SimulationConfig) -> tuple[ZState, ConservationSummary]:
    grid = Grid.cube(config.dim, config.n)
    params = SchemeParams.create(config.tau, grid, config.c, config.variant)
    final, rows = _recorded_run(config, params, _initial_state(config, grid), config.out / "simulate.csv")
    save_checkpoint(config.out / "final.zsck", final, params, rows[-1].step)

    return final, summarize(rows, params.cfl_satisfied)


def generate_data(config: DataConfig) -> list[Path]:
    grid = Grid.cube(config.dim, config.n)
    E0, data = random_rough_fields(RoughDataSpec(grid=grid, s2=config.s2, seed=config.seed))

    return write_data(config.out, E0, data, csv=config.csv)
