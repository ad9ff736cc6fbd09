# tests/unit/test_validator.py

import json
from pathlib import Path

import pytest

from indoor_training.validation.validator import SchemaValidator
from indoor_training.utils.exceptions import ValidationError as LabValidationError

# Three levels up from tests/unit → project root, then into src/indoor_training/validation/schemas
SCHEMAS_DIR = Path(__file__).resolve().parents[2] / "src" / "indoor_training" / "validation" / "schemas"


@pytest.fixture
def validator():
    return SchemaValidator(schema_dir=SCHEMAS_DIR)


def minimal_experiment():
    return {"game": {"kind": "pacman"}, "layout": {"name": "v2"}}


def test_load_missing_schema(validator):
    with pytest.raises(LabValidationError) as exc:
        validator.validate("nonexistent", {})
    assert "Schema for 'nonexistent' not found" in str(exc.value)


@pytest.mark.parametrize("document_type,required", [
    ("experiment", {"game", "layout"}),
    ("suite", {"game"}),
])
def test_get_required_fields(validator, document_type, required):
    assert set(validator.get_required_fields(document_type)) == required


def test_get_schema_returns_dict(validator):
    schema = validator.get_schema("experiment")
    assert isinstance(schema, dict)
    assert "properties" in schema and "required" in schema


def test_validate_dict_returns_data(validator):
    payload = minimal_experiment()
    assert validator.validate("experiment", payload) == payload


def test_validate_str(validator):
    payload = minimal_experiment()
    assert validator.validate("experiment", json.dumps(payload)) == payload


def test_missing_field(validator):
    payload = {"game": {"kind": "pacman"}}
    with pytest.raises(LabValidationError, match="'layout' is a required property"):
        validator.validate("experiment", payload)


def test_error_names_nested_key(validator):
    payload = minimal_experiment()
    payload["agent"] = {"epsilon": 1.5}
    with pytest.raises(LabValidationError, match="at 'agent.epsilon'"):
        validator.validate("experiment", payload)


def test_wrong_enum(validator):
    payload = minimal_experiment()
    payload["game"]["kind"] = "tetris"
    with pytest.raises(LabValidationError, match="game.kind"):
        validator.validate("experiment", payload)


def test_invalid_json(validator):
    with pytest.raises(LabValidationError, match="Invalid JSON"):
        validator.validate("experiment", "{invalid json}")


def test_schema_is_cached(validator):
    first = validator.get_schema("suite")
    assert validator.get_schema("suite") is first


def test_mdp_schema_rejects_bad_format(validator):
    with pytest.raises(LabValidationError, match="mdp"):
        validator.validate("mdp", {"format": "something-else"})
