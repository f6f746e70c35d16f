from pathlib import Path
from typing import Any

from pydantic import (
    AliasChoices,
    BaseModel,
)
from yaml import (
    YAMLError,
    safe_load,
)

from zakharov.lib.errors import ConfigInvalid


def _key(name: str) -> str:
    return name.strip().lstrip("-").replace("-", "_")


def _read_flat(text: str, path: Path) -> dict[str, Any]:
    result: dict[str, Any] = dict()

    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()

        if not content:
            continue

        key, separator, value = content.partition("=")

        if not separator or not key.strip():
            raise ConfigInvalid(f"{path}:{number}: expected 'key = value', got {line.strip()!r}")

        result[_key(key)] = value.strip()

    return result


def read_config_file(path: Path) -> dict[str, Any]:
    """Flat `key = value` text with `#` comments, or a YAML mapping for .yaml/.yml files."""
    text = path.read_text(encoding="utf-8")

    if path.suffix.lower() not in {".yaml", ".yml"}:
        return _read_flat(text, path)

    try:
        document = safe_load(text)
    except YAMLError as error:
        raise ConfigInvalid(f"{path}: {error}") from error

    if document is None:
        return dict()

    if not isinstance(document, dict):
        raise ConfigInvalid(f"{path}: expected a mapping at the top level")

    return {_key(str(key)): value for key, value in document.items()}


def canonical_keys(model: type[BaseModel], values: dict[str, Any]) -> dict[str, Any]:
    aliases: dict[str, str] = dict()

    for name, field in model.model_fields.items():
        if isinstance(field.validation_alias, AliasChoices):
            aliases |= {str(choice): name for choice in field.validation_alias.choices}

    return {aliases.get(key, key): value for key, value in values.items()}


def merge_sources[T: BaseModel](model: type[T], config: Path | None, **overrides: Any) -> T:
    values = canonical_keys(model, read_config_file(config)) if config is not None else dict()
    values |= canonical_keys(model, {key: value for key, value in overrides.items() if value is not None})

    return model.model_validate(values, by_name=True)
