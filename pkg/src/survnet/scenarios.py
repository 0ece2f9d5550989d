"""Usage and intrusion scenarios with ordered execution traces."""

from __future__ import annotations

from enum import Enum
from typing import Iterable

from .architecture import ID_PATTERN, Architecture, Frozen, Ident, StrSet
from .errors import Diagnostic, error, raise_on_errors


class ScenarioKind(str, Enum):
    USAGE = "usage"
    INTRUSION = "intrusion"


class Action(str, Enum):
    INVOKE = "invoke"
    READ = "read"
    WRITE = "write"
    TRAVERSE = "traverse"


class ValidationMode(str, Enum):
    STRICT = "strict"
    LAX = "lax"


BLANKET_TAG = "software"


class TraceStep(Frozen):
    element: Ident
    action: Action = Action.INVOKE


class Scenario(Frozen):
    id: Ident
    kind: ScenarioKind
    title: str = ""
    narrative: str = ""
    actor: str = ""
    trace: tuple[TraceStep, ...] = ()
    criticality: int = 0
    attack_types: StrSet = frozenset()
    affects_all_components: bool = False

    @property
    def is_usage(self) -> bool:
        return self.kind is ScenarioKind.USAGE


class EssentialAssetTag(Frozen):
    asset: Ident
    rationale: str = ""


def validate_scenario(
    arch: Architecture, s: Scenario, mode: ValidationMode | str = ValidationMode.LAX
) -> list[Diagnostic]:
    """Check ``s`` against ``arch``.

    Lax mode checks field invariants and that every trace element exists.
    Strict mode also requires a connector between each pair of adjacent
    component steps, and that every read or write of an asset directly
    follows a step on one of its custodians.
    """
    mode = ValidationMode(mode)
    base = f"scenarios.{s.id}"
    diags: list[Diagnostic] = []
    if not s.id or not ID_PATTERN.match(s.id):
        diags.append(error(base, f"invalid scenario identifier {s.id!r}"))
    if s.criticality < 0:
        diags.append(error(f"{base}.criticality", "criticality must be >= 0"))
    if s.is_usage:
        if s.attack_types:
            diags.append(error(f"{base}.attack_types", "usage scenarios carry no attack types"))
        if s.affects_all_components:
            diags.append(error(f"{base}.affects_all_components", "only intrusions may affect all components"))
    elif s.criticality != 0:
        diags.append(error(f"{base}.criticality", "intrusion scenarios have criticality 0"))

    comps = {c.id: c for c in arch.components}
    assets = {a.id: a for a in arch.assets}
    known = [False] * len(s.trace)
    for i, step in enumerate(s.trace):
        if step.element in comps or step.element in assets:
            known[i] = True
        else:
            diags.append(error(f"{base}.trace[{i}]", f"trace step references unknown element {step.element!r}"))

    if mode is ValidationMode.LAX:
        return diags

    edges = arch.edges()
    for i, step in enumerate(s.trace):
        if not known[i]:
            continue
        if step.element in assets and step.action in (Action.READ, Action.WRITE):
            prev = s.trace[i - 1].element if i > 0 else None
            if prev not in assets[step.element].custodians:
                diags.append(error(
                    f"{base}.trace[{i}]",
                    f"{step.action.value} of asset {step.element!r} is not preceded by one of its custodians",
                ))
        if i == 0 or not known[i - 1]:
            continue
        prev = s.trace[i - 1].element
        if prev in comps and step.element in comps and prev != step.element:
            if (prev, step.element) not in edges:
                diags.append(error(
                    f"{base}.trace[{i}]",
                    f"no connector {prev!r} -> {step.element!r}",
                ))
    return diags


def resolve_trace(arch: Architecture, s: Scenario) -> frozenset[str]:
    """Distinct elements touched by ``s``.

    Blanket intrusions also touch every component tagged ``software``.
    """
    raise_on_errors(validate_scenario(arch, s, ValidationMode.LAX), f"scenario {s.id!r}")
    touched = {step.element for step in s.trace}
    if s.affects_all_components:
        touched.update(c.id for c in arch.components if BLANKET_TAG in c.tags)
    return frozenset(touched)


def split_by_kind(scenarios: Iterable[Scenario]) -> tuple[list[Scenario], list[Scenario]]:
    usage: list[Scenario] = []
    intrusions: list[Scenario] = []
    for s in scenarios:
        (usage if s.is_usage else intrusions).append(s)
    return usage, intrusions
