"""Loading systems and supplied components from files.

Systems are read from the line-oriented text format (any suffix other than
``.json``/``.yaml``/``.yml``) or from JSON/YAML documents validated by
``SystemFile``. Supplied components are always JSON or YAML documents validated
by ``ComponentFile``.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

from discvar.core.errors import InputError
from discvar.core.pipeline import ParametricSystem
from discvar.core.poly import Polynomial, RingContext
from discvar.systems.parser import build_system, parse_polynomial, parse_system_file, validate_system_model
from discvar.systems.schema import ComponentFile

logger = logging.getLogger(__name__)

STRUCTURED_SUFFIXES = (".json", ".yaml", ".yml")


class SystemLoader:
    """Reads system and component files, optionally relative to a base directory.

    Attributes:
        base_dir: Directory that relative paths are resolved against.
    """

    def __init__(self, base_dir: str | Path | None = None):
        self.base_dir = Path(base_dir) if base_dir else None

    def _resolve(self, path: str | Path) -> Path:
        path = Path(path)
        if not path.is_absolute() and self.base_dir:
            path = self.base_dir / path
        if not path.exists():
            raise FileNotFoundError(f"File not found: {path}")
        return path

    def _read_text(self, path: Path) -> str:
        try:
            return path.read_text(encoding="utf-8")
        except UnicodeDecodeError as e:
            raise InputError(f"{path}: not valid UTF-8 (byte {e.start})") from e

    def _read_structured(self, path: Path) -> Any:
        content = self._read_text(path)
        try:
            if path.suffix.lower() == ".json":
                return json.loads(content)
            return yaml.safe_load(content)
        except (json.JSONDecodeError, yaml.YAMLError) as e:
            raise InputError(f"{path}: malformed {path.suffix.lower().lstrip('.')} document: {e}") from e

    def load_system(self, path: str | Path) -> ParametricSystem:
        path = self._resolve(path)
        logger.debug("loading system from %s", path)
        if path.suffix.lower() in STRUCTURED_SUFFIXES:
            return self.load_system_from_dict(self._read_structured(path))
        return parse_system_file(self._read_text(path))

    def load_system_from_dict(self, data: Any) -> ParametricSystem:
        if not isinstance(data, dict):
            raise InputError("a system document must be a mapping")
        return build_system(validate_system_model(data))

    def load_component(self, path: str | Path, ring: RingContext) -> list[Polynomial]:
        """Generators of a supplied component, parsed in ``ring``.

        Raises:
            InputError: If the file is malformed or a generator involves an unknown.
        """
        path = self._resolve(path)
        if path.suffix.lower() not in STRUCTURED_SUFFIXES:
            raise InputError(f"unsupported component file format {path.suffix!r}; use .json, .yaml or .yml")
        return self.load_component_from_dict(self._read_structured(path), ring)

    def load_component_from_dict(self, data: Any, ring: RingContext) -> list[Polynomial]:
        try:
            model = ComponentFile.model_validate(data)
        except ValidationError as e:
            raise InputError(f"invalid component file: {e.errors()[0]['msg']}") from e
        generators = []
        for i, text in enumerate(model.generators, start=1):
            g = parse_polynomial(text, ring, line=i)
            if g.involves(ring.unknowns):
                raise InputError(f"generator {i} involves unknowns: {text!r}")
            generators.append(g)
        return generators
