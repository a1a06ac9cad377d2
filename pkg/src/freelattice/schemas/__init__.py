"""The published JSON schema for command results, plus its validator.

The schema file ships inside the package at
freelattice/schemas/command_result.schema.json so external tools can fetch
it from an installed tree; validate_result applies it to a decoded
document.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import jsonschema

SCHEMA_FILENAME = "command_result.schema.json"


@lru_cache(maxsize=1)
def load_schema() -> dict:
    text = (
        resources.files(__package__).joinpath(SCHEMA_FILENAME).read_text("utf-8")
    )
    return json.loads(text)


@lru_cache(maxsize=1)
def _validator() -> jsonschema.Validator:
    schema = load_schema()
    cls = jsonschema.validators.validator_for(schema)
    cls.check_schema(schema)
    return cls(schema)


def validate_result(doc) -> None:
    """Raises jsonschema.ValidationError when doc is not a CommandResult."""
    _validator().validate(doc)
