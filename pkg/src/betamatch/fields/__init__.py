"""Field specification files for every slope used in the examples and tests."""

import json
import os
from importlib import resources

from ..numberfield import NumberField, field_from_json, load_field

NAMES = (
    "golden", "silver", "two_plus_sqrt2", "k5_plus3", "k3_minus2",
    "tribonacci", "tetrabonacci", "plastic", "salem4", "lehmer",
)

_cache: dict = {}


def bundled_field(name: str) -> NumberField:
    name = name[:-5] if name.endswith(".json") else name
    if name not in NAMES:
        raise KeyError(f"no bundled field named {name!r}; choose from {', '.join(NAMES)}")
    if name not in _cache:
        text = resources.files(__name__).joinpath(name + ".json").read_text()
        _cache[name] = field_from_json(json.loads(text))
    return _cache[name]


def resolve_field(name: str) -> NumberField:
    """A path to a JSON file, or the name of a bundled field (with or without .json)."""
    if os.path.exists(name):
        return load_field(name)
    return bundled_field(os.path.basename(name))
