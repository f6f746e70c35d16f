from collections.abc import Sequence
from pathlib import Path
from typing import Annotated

from typer import (
    Option,
    Typer,
)

from .schema import typer as schema_typer

typer = Typer(no_args_is_help=True, pretty_exceptions_enable=False)

typer.add_typer(schema_typer)

ConfigFile = Annotated[Path | None, Option("--config", exists=True, dir_okay=False)]
Dim = Annotated[int | None, Option("--dim")]
Text = Annotated[str | None, Option()]
Count = Annotated[int | None, Option()]
Real = Annotated[float | None, Option()]
Directory = Annotated[Path | None, Option("--out", file_okay=False)]

FORMAT = "<green>{time:YYYY-MM-DD HH:mm:ss}</green> <level>{level: <8}</level> {message} <dim>{extra}</dim>"
SINKS: list[int] = []


@typer.command()
def converge(
    config: ConfigFile = None,
    dim: Dim = None,
    s1: Annotated[str | None, Option(help="Regularity offsets, e.g. 0.5,1,2")] = None,
    tau: Annotated[str | None, Option(help="Time steps, e.g. 2^-8..2^-12")] = None,
    t_final: Annotated[str | None, Option("--T", "--t-final")] = None,
    kappa: Real = None,
    n_ref: Count = None,
    tau_ref: Text = None,
    n_fixed: Count = None,
    seed: Count = None,
    c: Text = None,
    variant: Text = None,
    out: Directory = None,
) -> None:
    from zakharov.lib.harness.convergence import (
        ORDER_COLUMNS,
        PAIRWISE_COLUMNS,
        RECORD_COLUMNS,
        convergence_study,
    )
    from zakharov.lib.harness.output import (
        print_table,
        render_plot,
        write_csv,
    )
    from zakharov.schemas.config_file import merge_sources
    from zakharov.schemas.study import ConvergenceConfig

    study = merge_sources(
        ConvergenceConfig,
        config,
        dim=dim,
        s1_list=s1,
        tau_list=tau,
        t_final=t_final,
        kappa=kappa,
        n_ref=n_ref,
        tau_ref=tau_ref,
        n_fixed=n_fixed,
        seed=seed,
        c=c,
        variant=variant,
        out=out,
    )
    result = convergence_study(study)

    write_csv(study.out / "records.csv", result.records, RECORD_COLUMNS)
    write_csv(study.out / "orders.csv", result.order_rows(), ORDER_COLUMNS)
    write_csv(study.out / "pairwise.csv", result.pairwise, PAIRWISE_COLUMNS)
    render_plot(
        "fig_convergence",
        study.out / "fig_convergence.plot",
        records="records.csv",
        output="fig_convergence.png",
        dim=study.dim,
        t_final=study.t_final,
        variant=study.variant,
        curves=[dict(s1=s1, slope=fit.slope) for s1, fit in result.fits.items()],
        anchor=max(record.total for record in result.records) or 1.0,
    )

    print_table(
        "Fitted orders",
        ["s1", "slope", "r2", "stderr", "degenerate"],
        [(s1, fit.slope, fit.r2, fit.stderr, fit.degenerate) for s1, fit in result.fits.items()],
    )


@typer.command()
def conserve(
    config: ConfigFile = None,
    dim: Dim = None,
    n: Count = None,
    tau: Text = None,
    s2: Real = None,
    t_final: Annotated[str | None, Option("--T", "--t-final")] = None,
    seed: Count = None,
    c: Text = None,
    stride: Count = None,
    checkpoint_every: Count = None,
    out: Directory = None,
) -> None:
    from zakharov.lib.harness.conservation import conservation_study
    from zakharov.lib.harness.output import print_table
    from zakharov.schemas.config_file import merge_sources
    from zakharov.schemas.study import ConservationConfig

    study = merge_sources(
        ConservationConfig,
        config,
        dim=dim,
        n=n,
        tau=tau,
        s2=s2,
        t_final=t_final,
        seed=seed,
        c=c,
        stride=stride,
        checkpoint_every=checkpoint_every,
        out=out,
    )
    summary = conservation_study(study)

    print_table(
        "Conservation",
        ["steps", "max mass drift", "max energy drift", "energy trend", "trend stderr", "CFL"],
        [
            (
                summary.steps,
                summary.max_mass_drift,
                summary.max_energy_drift,
                summary.energy_trend_slope,
                summary.energy_trend_stderr,
                summary.cfl_satisfied,
            )
        ],
    )


@typer.command()
def simulate(
    config: ConfigFile = None,
    dim: Dim = None,
    n: Count = None,
    tau: Text = None,
    s2: Real = None,
    t_final: Annotated[str | None, Option("--T", "--t-final")] = None,
    seed: Count = None,
    c: Text = None,
    variant: Text = None,
    stride: Count = None,
    checkpoint_every: Count = None,
    out: Directory = None,
) -> None:
    from zakharov.lib.harness.conservation import simulate as run
    from zakharov.lib.harness.output import print_table
    from zakharov.schemas.config_file import merge_sources
    from zakharov.schemas.study import SimulationConfig

    study = merge_sources(
        SimulationConfig,
        config,
        dim=dim,
        n=n,
        tau=tau,
        s2=s2,
        t_final=t_final,
        seed=seed,
        c=c,
        variant=variant,
        stride=stride,
        checkpoint_every=checkpoint_every,
        out=out,
    )
    _, summary = run(study)

    print_table(
        "Simulation",
        ["steps", "time", "max mass drift", "max energy drift"],
        [(summary.steps, summary.final_time, summary.max_mass_drift, summary.max_energy_drift)],
    )


@typer.command("bourgain-check")
def bourgain_check(
    config: ConfigFile = None,
    dim: Dim = None,
    n: Count = None,
    m: Count = None,
    tau: Text = None,
    s1: Real = None,
    b: Real = None,
    b0: Real = None,
    trials: Count = None,
    levels: Count = None,
    decay: Real = None,
    estimates: Annotated[str | None, Option(help="Comma separated subset of M1,M3,M4,M2,M5")] = None,
    seed: Count = None,
    c: Text = None,
    out: Directory = None,
) -> None:
    from zakharov.lib.harness.bourgain_check import (
        bourgain_check as run,
        growth_factors,
    )
    from zakharov.lib.harness.output import print_table
    from zakharov.schemas.config_file import merge_sources
    from zakharov.schemas.study import BourgainCheckConfig

    study = merge_sources(
        BourgainCheckConfig,
        config,
        dim=dim,
        n=n,
        m=m,
        tau=tau,
        s1=s1,
        b=b,
        b0=b0,
        trials=trials,
        levels=levels,
        decay=decay,
        estimates=estimates,
        seed=seed,
        c=c,
        out=out,
    )
    _, summary = run(study)
    factors = growth_factors(summary)

    print_table(
        "Max ratios",
        ["estimate", "M", "N", "tau", "max ratio", "growth"],
        [(row.estimate_id, row.M, row.N, row.tau, row.max_ratio, factors[row.estimate_id]) for row in summary],
    )


@typer.command("gen-data")
def gen_data(
    config: ConfigFile = None,
    dim: Dim = None,
    n: Count = None,
    s2: Real = None,
    seed: Count = None,
    csv: Annotated[bool | None, Option("--csv/--no-csv")] = None,
    out: Directory = None,
) -> None:
    from loguru import logger

    from zakharov.lib.harness.conservation import generate_data
    from zakharov.schemas.config_file import merge_sources
    from zakharov.schemas.study import DataConfig

    paths = generate_data(merge_sources(DataConfig, config, dim=dim, n=n, s2=s2, seed=seed, csv=csv, out=out))

    for path in paths:
        logger.info("Wrote spectrum", path=str(path))


@typer.callback()
def _(
    env_file: Annotated[Path | None, Option(exists=True, dir_okay=False)] = None,
    verbose: Annotated[bool, Option("-v", "--verbose")] = False,
    log_file: Annotated[Path | None, Option(dir_okay=False)] = None,
) -> None:
    from sys import stderr

    from dotenv import load_dotenv
    from loguru import logger

    load_dotenv(env_file)

    level = "DEBUG" if verbose else "INFO"

    logger.remove()
    SINKS.append(
        logger.add(
            sink=stderr,
            level=level,
            format=FORMAT,
            diagnose=False,
            enqueue=True,
        )
    )

    if log_file is not None:
        SINKS.append(
            logger.add(
                sink=log_file,
                level=level,
                rotation="00:00",
                retention=180,
                serialize=True,
                diagnose=False,
                enqueue=True,
            )
        )


def cli_main(argv: Sequence[str] | None = None) -> int:
    from loguru import logger
    from pydantic import ValidationError

    from zakharov.lib.errors import (
        ConfigurationError,
        NumericalFailure,
    )

    try:
        typer(args=list(argv) if argv is not None else None, prog_name="zakharov", standalone_mode=True)
    except SystemExit as signal:
        # usage errors exit with 2 after printing the usage text
        return signal.code if isinstance(signal.code, int) else int(signal.code is not None)
    except (ConfigurationError, ValidationError) as error:
        logger.error("Invalid configuration: {}", error)

        return 2
    except NumericalFailure as error:
        logger.error("Numerical failure: {}", error)

        return 3
    finally:
        while SINKS:
            logger.remove(SINKS.pop())

    return 0


def run() -> None:
    from sys import exit

    exit(cli_main())


if __name__ == "__main__":
    run()
