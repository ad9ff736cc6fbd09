import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import jsonschema
from jsonschema import ValidationError as JSONSchemaValidationError

from ..utils.exceptions import ValidationError as LabValidationError

logger = logging.getLogger(__name__)


class SchemaValidator:
    """
    Validator for config files and MDP exports using JSON Schema files.
    """

    def __init__(self, schema_dir: Optional[Path] = None):
        # Default to src/indoor_training/validation/schemas
        self.schema_dir = schema_dir or Path(__file__).parent / "schemas"
        self._schema_cache: Dict[str, Dict] = {}

    def _load_schema(self, document_type: str) -> Dict[str, Any]:
        """Load and cache the JSON schema of a document type."""
        if document_type not in self._schema_cache:
            schema_path = self.schema_dir / f"{document_type}.schema.json"
            if not schema_path.exists():
                raise LabValidationError(
                    f"Schema for '{document_type}' not found at {schema_path}"
                )
            with open(schema_path, 'r', encoding='utf-8') as f:
                self._schema_cache[document_type] = json.load(f)
        return self._schema_cache[document_type]

    def validate(self, document_type: str, payload: str | dict) -> dict:
        """
        Validate a document against its JSON schema and return the parsed data.

        Raises ValidationError on JSON or schema failure; the message names
        the offending key path.
        """
        try:
            schema = self._load_schema(document_type)
            data = json.loads(payload) if isinstance(payload, str) else payload
            jsonschema.validate(instance=data, schema=schema)
            logger.debug(f"Document '{document_type}' validation successful")
            return data
        except json.JSONDecodeError as e:
            raise LabValidationError(f"Invalid JSON for '{document_type}': {e}")
        except JSONSchemaValidationError as e:
            where = '.'.join(str(p) for p in e.absolute_path) or '<root>'
            msg = f"Schema validation failed for '{document_type}' at '{where}': {e.message}"
            raise LabValidationError(msg)

    def get_schema(self, document_type: str) -> Dict[str, Any]:
        """Return the loaded JSON schema of a document type."""
        return self._load_schema(document_type)

    def get_required_fields(self, document_type: str) -> list[str]:
        """Return the top-level required fields declared in the schema."""
        schema = self._load_schema(document_type)
        return schema.get("required", [])
