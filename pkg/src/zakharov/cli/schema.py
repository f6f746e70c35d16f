from typer import Typer

typer = Typer(name="schema")


@typer.command()
def generate(indent: int | None = None):
    from json import dump
    from sys import stdout

    from zakharov.schemas.study import (
        BourgainCheckConfig,
        ConservationConfig,
        ConvergenceConfig,
        DataConfig,
        SimulationConfig,
    )

    models = [ConvergenceConfig, ConservationConfig, SimulationConfig, BourgainCheckConfig, DataConfig]

    dump(
        {model.__name__: model.model_json_schema(mode="validation") for model in models},
        stdout,
        indent=indent,
        separators=(",", ":"),
    )
