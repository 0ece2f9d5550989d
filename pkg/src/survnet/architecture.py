"""Architecture model: components, directed connectors and custodied assets.

All model types are frozen pydantic models. Identifiers are lowercased on
construction, so ``"API"`` and ``"api"`` name the same element and collide.
"""

from __future__ import annotations

import re
from enum import Enum
from typing import Annotated, Any, Iterable

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer

from .errors import Diagnostic, error, raise_on_errors, warning, UnknownElementError

ID_PATTERN = re.compile(r"^[a-z0-9_]+$")


def _lower(value: Any) -> Any:
    return value.lower() if isinstance(value, str) else value


def _sorted_list(values: Iterable[Any]) -> list[Any]:
    return sorted(values)


Ident = Annotated[str, BeforeValidator(_lower)]
IdSet = Annotated[frozenset[Ident], PlainSerializer(_sorted_list, return_type=list)]
StrSet = Annotated[frozenset[str], PlainSerializer(_sorted_list, return_type=list)]


class Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)


class Scope(str, Enum):
    INTERNAL = "internal"
    EXTERNAL = "external"


class ConnectorKind(str, Enum):
    CALL = "call"
    MESSAGE = "message"
    DATA_ACCESS = "data_access"


class AssetProperty(str, Enum):
    INTEGRITY = "integrity"
    CONFIDENTIALITY = "confidentiality"
    AVAILABILITY = "availability"


PropertySet = Annotated[
    frozenset[AssetProperty],
    PlainSerializer(lambda v: sorted(p.value for p in v), return_type=list),
]


class Component(Frozen):
    id: Ident
    name: str = ""
    description: str = ""
    scope: Scope = Scope.INTERNAL
    tags: StrSet = frozenset()


class Connector(Frozen):
    id: Ident
    from_: Ident = Field(alias="from")
    to: Ident
    kind: ConnectorKind = ConnectorKind.CALL
    description: str = ""


class Asset(Frozen):
    id: Ident
    name: str = ""
    custodians: IdSet = frozenset()
    properties_required: PropertySet = frozenset()


class ProvenanceNote(Frozen):
    """Record of a modification applied to produce this architecture."""

    ref: int
    kind: str
    note: str = ""


class Architecture(Frozen):
    id: str = ""
    components: tuple[Component, ...] = ()
    connectors: tuple[Connector, ...] = ()
    assets: tuple[Asset, ...] = ()
    provenance: tuple[ProvenanceNote, ...] = ()

    def component(self, ident: str) -> Component:
        for c in self.components:
            if c.id == ident:
                return c
        raise UnknownElementError("component", ident)

    def asset(self, ident: str) -> Asset:
        for a in self.assets:
            if a.id == ident:
                return a
        raise UnknownElementError("asset", ident)

    def component_ids(self) -> frozenset[str]:
        return frozenset(c.id for c in self.components)

    def asset_ids(self) -> frozenset[str]:
        return frozenset(a.id for a in self.assets)

    def edges(self) -> frozenset[tuple[str, str]]:
        return frozenset((c.from_, c.to) for c in self.connectors)

    def applied_refs(self) -> frozenset[int]:
        return frozenset(p.ref for p in self.provenance)


def _check_ids(kind: str, idents: list[str], diags: list[Diagnostic]) -> set[str]:
    seen: set[str] = set()
    for ident in idents:
        path = f"{kind}.{ident or '<empty>'}"
        if not ident or not ID_PATTERN.match(ident):
            diags.append(error(path, f"invalid identifier {ident!r}: use lowercase letters, digits, underscore"))
        if ident in seen:
            diags.append(error(path, f"duplicate {kind[:-1]} id {ident!r}"))
        seen.add(ident)
    return seen


def validate_architecture(arch: Architecture) -> list[Diagnostic]:
    """Check every reference and uniqueness invariant of ``arch``.

    Returns errors and warnings in a fixed order; never raises. Warnings
    flag components with no connectors and assets held by external
    components.
    """
    diags: list[Diagnostic] = []
    comp_ids = _check_ids("components", [c.id for c in arch.components], diags)
    asset_ids = _check_ids("assets", [a.id for a in arch.assets], diags)
    _check_ids("connectors", [c.id for c in arch.connectors], diags)

    for ident in sorted(comp_ids & asset_ids):
        diags.append(error(f"assets.{ident}", f"asset id {ident!r} collides with a component id"))

    scopes = {c.id: c.scope for c in arch.components}
    for conn in arch.connectors:
        for end, target in (("from", conn.from_), ("to", conn.to)):
            if target not in comp_ids:
                diags.append(error(
                    f"connectors.{conn.id}.{end}",
                    f"connector {conn.id!r} references unknown component {target!r}",
                ))
        if conn.from_ == conn.to:
            diags.append(error(f"connectors.{conn.id}", f"connector {conn.id!r} is a self-loop on {conn.to!r}"))

    for asset in arch.assets:
        if not asset.custodians:
            diags.append(error(f"assets.{asset.id}.custodians", f"asset {asset.id!r} has no custodian"))
        for cust in sorted(asset.custodians):
            if cust not in comp_ids:
                diags.append(error(
                    f"assets.{asset.id}.custodians",
                    f"asset {asset.id!r} names unknown custodian {cust!r}",
                ))
            elif scopes[cust] is Scope.EXTERNAL:
                diags.append(warning(
                    f"assets.{asset.id}.custodians",
                    f"asset {asset.id!r} is held by external component {cust!r}",
                ))

    for note in arch.provenance:
        if note.ref < 1:
            diags.append(error("provenance", f"modification reference {note.ref} is not positive"))

    touched = {c.from_ for c in arch.connectors} | {c.to for c in arch.connectors}
    for comp in arch.components:
        if comp.id not in touched:
            diags.append(warning(f"components.{comp.id}", f"component {comp.id!r} has no connectors"))
    return diags


def element_ids(arch: Architecture) -> frozenset[str]:
    """Component ids plus asset ids. Rejects architectures with errors."""
    raise_on_errors(validate_architecture(arch), "architecture")
    return arch.component_ids() | arch.asset_ids()


def custodians(arch: Architecture, asset: str) -> frozenset[str]:
    return arch.asset(_lower(asset)).custodians
