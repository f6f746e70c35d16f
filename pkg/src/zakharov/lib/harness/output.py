from collections.abc import (
    Iterable,
    Mapping,
    Sequence,
)
from csv import DictWriter
from pathlib import Path
from typing import Any

from jinja2 import (
    Environment,
    FileSystemLoader,
    StrictUndefined,
)
from loguru import logger
from pydantic import BaseModel
from rich.console import Console
from rich.table import Table

FLOAT_FORMAT = "{:.17g}"
TEMPLATES = Path(__file__).parents[2] / "templates"


def _cell(value: Any) -> Any:
    return FLOAT_FORMAT.format(value) if isinstance(value, float) else value


def write_csv(
    path: Path,
    rows: Iterable[BaseModel | Mapping[str, Any]],
    fieldnames: Sequence[str],
) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)

    with path.open("w", newline="", encoding="utf-8") as file:
        writer = DictWriter(file, fieldnames=list(fieldnames), extrasaction="ignore", lineterminator="\n")
        writer.writeheader()

        for row in rows:
            record = row.model_dump() if isinstance(row, BaseModel) else row
            writer.writerow({key: _cell(value) for key, value in record.items()})

    logger.info("Wrote table", path=str(path))

    return path


def _environment() -> Environment:
    return Environment(
        loader=FileSystemLoader(TEMPLATES),
        trim_blocks=True,
        lstrip_blocks=True,
        undefined=StrictUndefined,
        keep_trailing_newline=True,
        autoescape=False,
    )


def render_plot(name: str, path: Path, **context: Any) -> Path:
    text = _environment().get_template(f"{name}.plot.j2").render(**context)

    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")

    logger.info("Wrote plot script", path=str(path))

    return path


def print_table(title: str, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    table = Table(title=title)

    for column in columns:
        table.add_column(column, justify="right")

    for row in rows:
        table.add_row(*(f"{value:.6g}" if isinstance(value, float) else str(value) for value in row))

    Console().print(table)
