from concurrent.futures import (
    Executor,
    ThreadPoolExecutor,
)
from time import perf_counter
from typing import Self

from loguru import logger
from pydantic import (
    NonNegativeFloat,
    PositiveFloat,
    PositiveInt,
    model_validator,
)

from zakharov.lib.diagnostics import error_triple
from zakharov.lib.errors import (
    ConfigInvalid,
    NonFiniteState,
    ReferenceUnresolved,
)
from zakharov.lib.initial_data import (
    RoughDataSpec,
    parameters,
    random_rough_fields,
    restrict_data,
)
from zakharov.lib.integrator import (
    SchemeParams,
    Variant,
    evolve,
)
from zakharov.lib.spectral import (
    Grid,
    Spectrum,
)
from zakharov.lib.state import (
    WaveData,
    ZState,
)
from zakharov.schemas import FrozenSchema
from zakharov.schemas.environment import Environment
from zakharov.schemas.study import ConvergenceConfig

from .fitting import (
    OrderFit,
    fit_order,
    pairwise_orders,
)

RECORD_COLUMNS = ["s1", "tau", "N", "e_E", "e_z", "e_zt", "total", "wall_time_s"]
ORDER_COLUMNS = ["s1", "slope", "intercept", "r2"]
PAIRWISE_COLUMNS = ["s1", "tau", "order"]


class ConvergenceRecord(FrozenSchema):
    s1: PositiveFloat
    tau: PositiveFloat
    N: PositiveInt
    e_E: NonNegativeFloat
    e_z: NonNegativeFloat
    e_zt: NonNegativeFloat
    total: NonNegativeFloat
    wall_time_s: NonNegativeFloat

    @model_validator(mode="after")
    def validate_model(self) -> Self:
        if abs(self.total - (self.e_E + self.e_z + self.e_zt)) > 1e-12 * max(1.0, self.total):
            raise ValueError(f"Total {self.total} differs from the sum of the error components")

        return self


class PairwiseOrder(FrozenSchema):
    s1: PositiveFloat
    tau: PositiveFloat
    order: float


class ConvergenceResult(FrozenSchema):
    records: list[ConvergenceRecord]
    fits: dict[float, OrderFit]
    pairwise: list[PairwiseOrder]

    def order_rows(self) -> list[dict[str, float]]:
        return [
            dict(s1=s1, slope=fit.slope, intercept=fit.intercept, r2=fit.r2) for s1, fit in self.fits.items()
        ]


def step_count(t_final: float, tau: float) -> int:
    steps = round(t_final / tau)

    if steps < 1 or abs(steps * tau - t_final) > 1e-12 * t_final:
        raise ConfigInvalid(f"Final time {t_final} is not an integer multiple of the time step {tau}")

    return steps


def _reference(config: ConvergenceConfig, s1: float) -> tuple[Spectrum, WaveData, ZState]:
    _, s2 = parameters(config.dim, s1)
    grid = Grid.cube(config.dim, config.n_ref)
    E0, data = random_rough_fields(RoughDataSpec(grid=grid, s2=s2, seed=config.seed))
    params = SchemeParams.create(config.tau_ref, grid, config.c, Variant.FILTERED)
    started = perf_counter()

    try:
        reference = evolve(ZState.from_data(E0, data), params, step_count(config.t_final, config.tau_ref))
    except NonFiniteState as error:
        raise ReferenceUnresolved(f"Reference run for s1 = {s1} blew up at step {error.step}") from error

    logger.info("Finished reference", s1=s1, n=config.n_ref, tau=config.tau_ref, seconds=perf_counter() - started)

    return E0, data, reference


def _trajectory(
    config: ConvergenceConfig,
    s1: float,
    tau: float,
    initial: tuple[Spectrum, WaveData],
    reference: ZState,
) -> ConvergenceRecord:
    s0, _ = parameters(config.dim, s1)
    n = config.resolution(tau)
    grid = Grid.cube(config.dim, n)
    E0, data = restrict_data(*initial, grid)
    params = SchemeParams.create(tau, grid, config.c, config.variant)
    started = perf_counter()

    final = evolve(ZState.from_data(E0, data), params, step_count(config.t_final, tau))
    elapsed = perf_counter() - started
    triple = error_triple(final, reference, s0)

    logger.info("Finished trajectory", s1=s1, tau=tau, n=n, total=triple.total, seconds=elapsed)

    return ConvergenceRecord(
        s1=s1,
        tau=tau,
        N=n,
        e_E=triple.e_E,
        e_z=triple.e_z,
        e_zt=triple.e_zt,
        total=triple.total,
        wall_time_s=elapsed,
    )


def _fits(
    config: ConvergenceConfig,
    records: list[ConvergenceRecord],
) -> tuple[dict[float, OrderFit], list[PairwiseOrder]]:
    fits: dict[float, OrderFit] = dict()
    pairwise: list[PairwiseOrder] = []

    for s1 in config.s1_list:
        curve = [record for record in records if record.s1 == s1]
        taus, totals = [record.tau for record in curve], [record.total for record in curve]
        fits[s1] = fit = fit_order(taus, totals)

        if fit.degenerate:
            logger.warning("Degenerate order fit", s1=s1, points=len(curve))
        else:
            logger.info("Fitted order", s1=s1, slope=fit.slope, r2=fit.r2)

        pairwise += [
            PairwiseOrder(s1=s1, tau=tau, order=order) for tau, order in zip(taus[1:], pairwise_orders(taus, totals))
        ]

    return fits, pairwise


def convergence_study(config: ConvergenceConfig, executor: Executor | None = None) -> ConvergenceResult:
    """Reference runs first, then every (s1, τ) trajectory against its reference; results keyed by config order."""
    step_count(config.t_final, config.tau_ref)

    for tau in config.tau_list:
        step_count(config.t_final, tau)

    logger.info(
        "Starting convergence study",
        dim=config.dim,
        s1=config.s1_list,
        tau=config.tau_list,
        variant=config.variant,
        seed=config.seed,
    )

    owned = executor is None
    pool = executor or ThreadPoolExecutor(max_workers=Environment.load().threads)

    try:
        references = {s1: pool.submit(_reference, config, s1) for s1 in config.s1_list}
        resolved = {s1: future.result() for s1, future in references.items()}

        trajectories = {
            (s1, tau): pool.submit(_trajectory, config, s1, tau, resolved[s1][:2], resolved[s1][2])
            for s1 in config.s1_list
            for tau in config.tau_list
        }
        records = [trajectories[(s1, tau)].result() for s1 in config.s1_list for tau in config.tau_list]
    finally:
        if owned:
            pool.shutdown(cancel_futures=True)

    fits, pairwise = _fits(config, records)

    return ConvergenceResult(records=records, fits=fits, pairwise=pairwise)
