"""Architecture modifications keyed by reference number, plus diffing and
post-modification coverage checks."""

from __future__ import annotations

from enum import Enum
from typing import Any, Iterable, Optional, Union

from pydantic import model_validator

from .architecture import (
    Architecture,
    Component,
    Connector,
    Frozen,
    Ident,
    IdSet,
    PropertySet,
    ProvenanceNote,
    Scope,
    StrSet,
    validate_architecture,
)
from .errors import Diagnostic, ModificationError, error, errors_only, raise_on_errors
from .scenarios import Scenario, ScenarioKind
from .survmap import RefSet, SurvivabilityMap, check_structure, format_ref


class ModKind(str, Enum):
    ADD_COMPONENT = "add_component"
    ADD_CONNECTOR = "add_connector"
    ALTER_COMPONENT = "alter_component"
    ADD_ASSET_PROPERTY = "add_asset_property"
    PROCEDURAL = "procedural"


class AddComponent(Frozen):
    component: Component
    connectors: tuple[Connector, ...] = ()


class AddConnector(Frozen):
    connector: Connector


class AlterComponent(Frozen):
    """Partial update; ``None`` fields are left unchanged."""

    id: Ident
    name: Optional[str] = None
    description: Optional[str] = None
    scope: Optional[Scope] = None
    add_tags: StrSet = frozenset()
    remove_tags: StrSet = frozenset()


class AddAssetProperty(Frozen):
    assets: IdSet
    properties: PropertySet


Payload = Union[AddComponent, AddConnector, AlterComponent, AddAssetProperty]

PAYLOAD_TYPES: dict[ModKind, type] = {
    ModKind.ADD_COMPONENT: AddComponent,
    ModKind.ADD_CONNECTOR: AddConnector,
    ModKind.ALTER_COMPONENT: AlterComponent,
    ModKind.ADD_ASSET_PROPERTY: AddAssetProperty,
}


class Modification(Frozen):
    ref: int
    title: str = ""
    kind: ModKind
    payload: Optional[Payload] = None
    description: str = ""

    @model_validator(mode="before")
    @classmethod
    def _payload_for_kind(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        try:
            kind = ModKind(data.get("kind"))
        except ValueError:
            return data
        payload = data.get("payload")
        expected = PAYLOAD_TYPES.get(kind)
        if expected is None:
            if payload is not None:
                raise ValueError("procedural modifications carry no payload")
        elif isinstance(payload, dict):
            data = {**data, "payload": expected.model_validate(payload)}
        elif payload is not None and not isinstance(payload, expected):
            raise ValueError(f"{kind.value} payload must be {expected.__name__}")
        return data

    @property
    def structural(self) -> bool:
        return self.kind is not ModKind.PROCEDURAL


class ArchDiff(Frozen):
    added_components: IdSet = frozenset()
    removed_components: IdSet = frozenset()
    altered_components: IdSet = frozenset()
    added_connectors: IdSet = frozenset()
    removed_connectors: IdSet = frozenset()
    altered_connectors: IdSet = frozenset()
    added_assets: IdSet = frozenset()
    removed_assets: IdSet = frozenset()
    altered_assets: IdSet = frozenset()

    def is_empty(self) -> bool:
        return not any(getattr(self, name) for name in type(self).model_fields)


class CoverageStatus(str, Enum):
    COVERED = "covered"
    PARTIALLY_COVERED = "partially_covered"
    UNCOVERED = "uncovered"


class ScenarioCoverage(Frozen):
    scenario: str
    status: CoverageStatus
    missing_refs: RefSet = frozenset()


class NotApplied(Frozen):
    ref: int
    kind: ModKind
    reason: str


class CoverageReport(Frozen):
    scenarios: tuple[ScenarioCoverage, ...]
    applied_refs: RefSet
    not_applied: tuple[NotApplied, ...]

    @property
    def all_covered(self) -> bool:
        return all(s.status is CoverageStatus.COVERED for s in self.scenarios)

    def status_of(self, scenario: str) -> CoverageStatus:
        for s in self.scenarios:
            if s.scenario == scenario:
                return s.status
        raise KeyError(scenario)


def validate_modifications(mods: Iterable[Modification]) -> list[Diagnostic]:
    diags: list[Diagnostic] = []
    seen: set[int] = set()
    for m in mods:
        path = f"modifications.{m.ref}"
        if m.ref < 1:
            diags.append(error(path, f"modification reference {m.ref} is not positive"))
        if m.ref in seen:
            diags.append(error(path, f"duplicate modification reference {format_ref(m.ref)}"))
        seen.add(m.ref)
        if m.structural and m.payload is None:
            diags.append(error(path, f"{m.kind.value} modification has no payload"))
    return diags


def apply_modifications(arch: Architecture, mods: Iterable[Modification]) -> Architecture:
    """Return a new architecture with ``mods`` applied in order.

    Procedural modifications change no structure but are recorded in the
    result's provenance like every other applied modification. Raises
    :class:`ModificationError` rather than return an invalid architecture.
    """
    mods = list(mods)
    raise_on_errors(validate_architecture(arch), "architecture")
    bad = errors_only(validate_modifications(mods))
    if bad:
        raise ModificationError("; ".join(d.message for d in bad))

    components = {c.id: c for c in arch.components}
    connectors = {c.id: c for c in arch.connectors}
    assets = {a.id: a for a in arch.assets}
    provenance = list(arch.provenance)
    already = arch.applied_refs()

    def add_connector(conn: Connector, ref: int) -> None:
        if conn.id in connectors:
            raise ModificationError(f"{format_ref(ref)}: connector {conn.id!r} already exists")
        connectors[conn.id] = conn

    for m in mods:
        tag = format_ref(m.ref)
        if m.ref in already:
            raise ModificationError(f"{tag}: modification already applied to {arch.id or 'architecture'}")
        p = m.payload
        if isinstance(p, AddComponent):
            new = p.component
            if new.id in components or new.id in assets:
                raise ModificationError(f"{tag}: element {new.id!r} already exists")
            components[new.id] = new
            for conn in p.connectors:
                add_connector(conn, m.ref)
        elif isinstance(p, AddConnector):
            add_connector(p.connector, m.ref)
        elif isinstance(p, AlterComponent):
            if p.id not in components:
                raise ModificationError(f"{tag}: cannot alter missing component {p.id!r}")
            old = components[p.id]
            changes: dict[str, Any] = {"tags": (old.tags - p.remove_tags) | p.add_tags}
            for field in ("name", "description", "scope"):
                value = getattr(p, field)
                if value is not None:
                    changes[field] = value
            components[p.id] = old.model_copy(update=changes)
        elif isinstance(p, AddAssetProperty):
            for aid in sorted(p.assets):
                if aid not in assets:
                    raise ModificationError(f"{tag}: unknown asset {aid!r}")
                old = assets[aid]
                assets[aid] = old.model_copy(update={"properties_required": old.properties_required | p.properties})
        provenance.append(ProvenanceNote(ref=m.ref, kind=m.kind.value, note=m.title))

    result = Architecture(
        id=arch.id,
        components=tuple(components.values()),
        connectors=tuple(connectors.values()),
        assets=tuple(assets.values()),
        provenance=tuple(provenance),
    )
    bad = errors_only(validate_architecture(result))
    if bad:
        raise ModificationError("modified architecture is invalid: " + "; ".join(d.message for d in bad))
    return result


def _diff_namespace(before: dict[str, Any], after: dict[str, Any]) -> tuple[frozenset, frozenset, frozenset]:
    added = frozenset(after.keys() - before.keys())
    removed = frozenset(before.keys() - after.keys())
    altered = frozenset(k for k in before.keys() & after.keys() if before[k] != after[k])
    return added, removed, altered


def diff_architectures(before: Architecture, after: Architecture) -> ArchDiff:
    ac, rc, xc = _diff_namespace({c.id: c for c in before.components}, {c.id: c for c in after.components})
    an, rn, xn = _diff_namespace({c.id: c for c in before.connectors}, {c.id: c for c in after.connectors})
    aa, ra, xa = _diff_namespace({a.id: a for a in before.assets}, {a.id: a for a in after.assets})
    return ArchDiff(
        added_components=ac, removed_components=rc, altered_components=xc,
        added_connectors=an, removed_connectors=rn, altered_connectors=xn,
        added_assets=aa, removed_assets=ra, altered_assets=xa,
    )


def _absence(m: Modification, arch: Architecture) -> Optional[str]:
    """Why ``m`` is not reflected in ``arch``, or None when it is."""
    comps = {c.id: c for c in arch.components}
    conns = {c.id: c for c in arch.connectors}
    p = m.payload
    if isinstance(p, AddComponent):
        if p.component.id not in comps:
            return f"component {p.component.id!r} absent"
        missing = [c.id for c in p.connectors if c.id not in conns]
        return f"connector(s) {', '.join(missing)} absent" if missing else None
    if isinstance(p, AddConnector):
        conn = conns.get(p.connector.id)
        if conn is None or (conn.from_, conn.to) != (p.connector.from_, p.connector.to):
            return f"connector {p.connector.id!r} absent"
        return None
    if isinstance(p, AlterComponent):
        comp = comps.get(p.id)
        if comp is None:
            return f"component {p.id!r} absent"
        if not p.add_tags <= comp.tags or p.remove_tags & comp.tags:
            return f"component {p.id!r} lacks the altered tags"
        if (p.name is not None and comp.name != p.name) or (p.scope is not None and comp.scope is not p.scope):
            return f"component {p.id!r} does not carry the alteration"
        return None
    if isinstance(p, AddAssetProperty):
        assets = {a.id: a for a in arch.assets}
        for aid in sorted(p.assets):
            if aid not in assets or not p.properties <= assets[aid].properties_required:
                return f"asset {aid!r} lacks the added properties"
        return None
    if m.ref not in arch.applied_refs():
        return "procedural measure not recorded as applied"
    return None


def verify_mitigation_coverage(
    modified: Architecture,
    smap: SurvivabilityMap,
    intrusions: Iterable[Scenario],
    mods: Iterable[Modification],
) -> CoverageReport:
    """Classify every intrusion row against the modifications present in
    ``modified``.

    A row is covered when some described recommendation cites at least one
    modification and all of its cited modifications are applied; partially
    covered when it has a described recommendation but none is fully
    applied; uncovered when every recommendation is ``none``. Citations of
    modifications missing from ``mods`` count as not applied.
    """
    mods = list(mods)
    intrusions = list(intrusions)
    diags = check_structure(smap)
    ids = {s.id for s in intrusions if s.kind is ScenarioKind.INTRUSION}
    for sid in sorted(set(smap.rows) ^ ids):
        diags.append(error(f"map.rows.{sid}", f"row and intrusion scenarios disagree on {sid!r}"))
    raise_on_errors(diags, "survivability map")

    applied: set[int] = set()
    not_applied: list[NotApplied] = []
    for m in sorted(mods, key=lambda m: m.ref):
        reason = _absence(m, modified)
        if reason is None:
            applied.add(m.ref)
        else:
            not_applied.append(NotApplied(ref=m.ref, kind=m.kind, reason=reason))

    rows: list[ScenarioCoverage] = []
    for sid in smap.row_ids():
        described = [c.recommended for c in smap.rows[sid].cells() if c.recommended.described]
        cited = frozenset().union(*(s.mod_refs for s in described)) if described else frozenset()
        if not described:
            status = CoverageStatus.UNCOVERED
        elif any(s.mod_refs and s.mod_refs <= applied for s in described):
            status = CoverageStatus.COVERED
        else:
            status = CoverageStatus.PARTIALLY_COVERED
        rows.append(ScenarioCoverage(scenario=sid, status=status, missing_refs=cited - applied))
    return CoverageReport(scenarios=tuple(rows), applied_refs=frozenset(applied), not_applied=tuple(not_applied))
