from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from loguru import logger
from pydantic import (
    NonNegativeFloat,
    NonNegativeInt,
    PositiveFloat,
    PositiveInt,
)

from zakharov.lib.bourgain import (
    BourgainFlavor,
    Estimate,
    MultilinearParams,
    embedding_ratio,
    multilinear_ratio,
    norm_equivalence_ratio,
    random_sequence,
)
from zakharov.lib.initial_data import parameters
from zakharov.lib.integrator.params import theta_law
from zakharov.lib.spectral import Grid
from zakharov.schemas import FrozenSchema
from zakharov.schemas.environment import Environment
from zakharov.schemas.study import BourgainCheckConfig

from .output import (
    render_plot,
    write_csv,
)

EMBEDDING = "embedding"
EQUIVALENCE = "equivalence"
TRIAL_COLUMNS = ["trial", "estimate_id", "M", "N", "tau", "ratio"]
SUMMARY_COLUMNS = ["estimate_id", "M", "N", "tau", "max_ratio"]


class RatioTrial(FrozenSchema):
    trial: NonNegativeInt
    estimate_id: str
    M: PositiveInt
    N: PositiveInt
    tau: PositiveFloat
    ratio: NonNegativeFloat


class RatioSummary(FrozenSchema):
    estimate_id: str
    M: PositiveInt
    N: PositiveInt
    tau: PositiveFloat
    max_ratio: NonNegativeFloat


class Resolution(FrozenSchema):
    grid: Grid
    length: PositiveInt
    tau: PositiveFloat


def _trial_generators(seed: int, trials: int) -> list[np.random.Generator]:
    return [np.random.Generator(np.random.Philox(child)) for child in np.random.SeedSequence(seed).spawn(trials)]


def _trial(
    index: int,
    rng: np.random.Generator,
    resolution: Resolution,
    params: MultilinearParams,
    estimates: Sequence[Estimate],
    decay: float,
    b0: float | None,
) -> list[RatioTrial]:
    grid, length, tau = resolution.grid, resolution.length, resolution.tau
    v = random_sequence(rng, grid, length, tau, decay)
    w = random_sequence(rng, grid, length, tau, decay)

    def record(estimate_id: str, ratio: float) -> RatioTrial:
        return RatioTrial(trial=index, estimate_id=estimate_id, M=length, N=grid.n_per_axis, tau=tau, ratio=ratio)

    rows = [record(estimate, multilinear_ratio(v, w, estimate, params)) for estimate in estimates]

    if b0 is not None:
        s = params.s2 + 0.5
        rows.append(record(EMBEDDING, embedding_ratio(w, s, b0, BourgainFlavor.SCHRODINGER)))
        rows.append(record(EQUIVALENCE, norm_equivalence_ratio(w, s, params.b, BourgainFlavor.SCHRODINGER)))

    return rows


def ratio_sweep(
    resolution: Resolution,
    params: MultilinearParams,
    estimates: Sequence[Estimate],
    trials: int,
    seed: int,
    decay: float = 1.0,
    b0: float | None = None,
) -> list[RatioTrial]:
    """Random (v, w) pairs, one independent Philox stream per trial; rows come back in trial order."""
    generators = _trial_generators(seed, trials)

    with ThreadPoolExecutor(max_workers=Environment.load().threads) as executor:
        batches = executor.map(
            lambda index: _trial(index, generators[index], resolution, params, estimates, decay, b0),
            range(trials),
        )

        return [row for batch in batches for row in batch]


def summarize(rows: Sequence[RatioTrial]) -> list[RatioSummary]:
    maxima: dict[tuple[str, int, int, float], float] = dict()

    for row in rows:
        key = (row.estimate_id, row.M, row.N, row.tau)
        maxima[key] = max(maxima.get(key, 0.0), row.ratio)

    return [
        RatioSummary(estimate_id=estimate_id, M=length, N=n, tau=tau, max_ratio=ratio)
        for (estimate_id, length, n, tau), ratio in maxima.items()
    ]


def resolutions(config: BourgainCheckConfig) -> list[Resolution]:
    # (M, N) doubled and τ halved per level
    return [
        Resolution(
            grid=Grid.cube(config.dim, config.n * 2**level),
            length=config.m * 2**level,
            tau=config.tau / 2**level,
        )
        for level in range(config.levels)
    ]


def bourgain_check(config: BourgainCheckConfig) -> tuple[list[RatioTrial], list[RatioSummary]]:
    s0, s2 = parameters(config.dim, config.s1)
    rows: list[RatioTrial] = []

    for resolution in resolutions(config):
        theta = theta_law(resolution.tau, resolution.grid, config.c)
        params = MultilinearParams(s0=s0, s2=s2, b=config.b, theta=theta, c=config.c)
        params.check_window()
        rows += ratio_sweep(
            resolution,
            params,
            config.estimates,
            config.trials,
            config.seed,
            config.decay,
            config.b0,
        )

        logger.info("Finished sweep", n=resolution.grid.n_per_axis, m=resolution.length, tau=resolution.tau)

    summary = summarize(rows)

    write_csv(config.out / "bourgain.csv", rows, TRIAL_COLUMNS)
    write_csv(config.out / "bourgain_summary.csv", summary, SUMMARY_COLUMNS)
    render_plot(
        "fig_bourgain",
        config.out / "fig_bourgain.plot",
        summary="bourgain_summary.csv",
        output="fig_bourgain.png",
        trials=config.trials,
        dim=config.dim,
        b=config.b,
        estimates=[str(estimate) for estimate in config.estimates] + [EMBEDDING],
    )

    return rows, summary


def growth_factors(summary: Sequence[RatioSummary]) -> dict[str, float]:
    factors: dict[str, float] = dict()

    for estimate_id in dict.fromkeys(row.estimate_id for row in summary):
        curve = sorted((row for row in summary if row.estimate_id == estimate_id), key=lambda row: row.N)
        first, last = curve[0].max_ratio, curve[-1].max_ratio
        factors[estimate_id] = last / first if first > 0 else 0.0

    return factors
