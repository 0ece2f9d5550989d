"""JSON model files: parsing with full validation, and canonical serialization."""

from __future__ import annotations

import json
from typing import Any, Optional, Union

from pydantic import ValidationError

from .architecture import Architecture, Frozen, validate_architecture
from .errors import Diagnostic, ModelSyntaxError, ModelValidationError, error, errors_only
from .modifications import Modification, validate_modifications
from .scenarios import EssentialAssetTag, Scenario, ScenarioKind, ValidationMode, validate_scenario
from .survmap import SurvivabilityMap, validate_map

SCHEMA_VERSION = "1"
SUPPORTED_VERSIONS = frozenset({SCHEMA_VERSION})


class ModelFile(Frozen):
    schema_version: str = SCHEMA_VERSION
    architecture: Architecture = Architecture()
    scenarios: tuple[Scenario, ...] = ()
    essential_assets: tuple[EssentialAssetTag, ...] = ()
    map: Optional[SurvivabilityMap] = None
    modifications: tuple[Modification, ...] = ()
    metadata: dict[str, Any] = {}

    @property
    def usage(self) -> list[Scenario]:
        return [s for s in self.scenarios if s.kind is ScenarioKind.USAGE]

    @property
    def intrusions(self) -> list[Scenario]:
        return [s for s in self.scenarios if s.kind is ScenarioKind.INTRUSION]

    def scenario(self, ident: str) -> Scenario:
        for s in self.scenarios:
            if s.id == ident.lower():
                return s
        raise KeyError(ident)


def _loc(loc: tuple[Any, ...]) -> str:
    return ".".join(str(part) for part in loc) or "<root>"


def load_model(data: Union[bytes, str]) -> ModelFile:
    """Decode and shape-check a model file without cross-reference validation.

    Raises :class:`ModelSyntaxError` for undecodable bytes, malformed JSON,
    an unknown schema version, or fields of the wrong shape.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ModelSyntaxError([error(f"byte {exc.start}", "file is not valid UTF-8")]) from None
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ModelSyntaxError([error(f"line {exc.lineno} column {exc.colno}", exc.msg)]) from None
    if not isinstance(raw, dict):
        raise ModelSyntaxError([error("<root>", "top level must be a JSON object")])
    version = raw.get("schema_version")
    if version not in SUPPORTED_VERSIONS:
        raise ModelSyntaxError([error("schema_version", f"unsupported schema version {version!r}")])
    try:
        return ModelFile.model_validate(raw)
    except ValidationError as exc:
        raise ModelSyntaxError([error(_loc(e["loc"]), e["msg"]) for e in exc.errors()]) from None


def validate_model(m: ModelFile, mode: ValidationMode | str = ValidationMode.LAX) -> list[Diagnostic]:
    diags = validate_architecture(m.architecture)
    seen: set[str] = set()
    for s in m.scenarios:
        if s.id in seen:
            diags.append(error(f"scenarios.{s.id}", f"duplicate scenario id {s.id!r}"))
        seen.add(s.id)
        diags.extend(validate_scenario(m.architecture, s, mode))
    asset_ids = m.architecture.asset_ids()
    for tag in m.essential_assets:
        if tag.asset not in asset_ids:
            diags.append(error(f"essential_assets.{tag.asset}", f"essential asset {tag.asset!r} is not declared"))
    diags.extend(validate_modifications(m.modifications))
    if m.map is not None:
        diags.extend(validate_map(m.map, m.intrusions, m.modifications))
    return diags


def parse_model(data: Union[bytes, str], mode: ValidationMode | str = ValidationMode.LAX) -> ModelFile:
    """Load and fully validate a model file; fail closed on any error."""
    m = load_model(data)
    errs = errors_only(validate_model(m, mode))
    if errs:
        raise ModelValidationError(errs)
    return m


def canonicalize(m: ModelFile) -> ModelFile:
    """Same model with every ID-keyed list in sorted order.

    Traces and provenance keep their order; both are sequences.
    """
    arch = m.architecture
    return m.model_copy(update={
        "architecture": arch.model_copy(update={
            "components": tuple(sorted(arch.components, key=lambda c: c.id)),
            "connectors": tuple(sorted(arch.connectors, key=lambda c: c.id)),
            "assets": tuple(sorted(arch.assets, key=lambda a: a.id)),
        }),
        "scenarios": tuple(sorted(m.scenarios, key=lambda s: s.id)),
        "essential_assets": tuple(sorted(m.essential_assets, key=lambda t: t.asset)),
        "modifications": tuple(sorted(m.modifications, key=lambda x: x.ref)),
    })


def to_json(value: Any) -> str:
    """Canonical JSON text: sorted keys, 2-space indent, trailing newline."""
    if isinstance(value, Frozen):
        value = value.model_dump(mode="json", by_alias=True)
    return json.dumps(value, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize_model(m: ModelFile) -> bytes:
    return to_json(canonicalize(m)).encode("utf-8")
