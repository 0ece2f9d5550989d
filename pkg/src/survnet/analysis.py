"""Essential, compromisable and softspot element sets.

An element is essential when it lies on the trace of a usage scenario at or
above the criticality threshold, is a tagged essential asset, or is a
custodian of one. It is compromisable when some intrusion trace reaches it.
Softspots are the elements that are both. Supporting elements are taken
from traces and custodianship only; no transitive dependency closure is
applied.
"""

from __future__ import annotations

from typing import Annotated, Iterable, Mapping

from pydantic import PlainSerializer

from .architecture import Architecture, Frozen, IdSet, Scope
from .errors import UnknownElementError, ScenarioKindError, raise_on_errors
from .architecture import validate_architecture
from .scenarios import EssentialAssetTag, Scenario, ScenarioKind, resolve_trace

SetMap = Annotated[
    dict[str, IdSet],
    PlainSerializer(lambda m: {k: sorted(v) for k, v in sorted(m.items())}, return_type=dict),
]


class AnalysisResult(Frozen):
    essential: IdSet
    compromisable_by_scenario: SetMap
    compromisable_union: IdSet
    softspots: IdSet
    softspots_reported: IdSet
    criticality_threshold: int


class ScenarioEffect(Frozen):
    scenario: str
    compromised: IdSet
    affected_softspots: IdSet
    notes: str = ""


def _require_kind(scenarios: Iterable[Scenario], kind: ScenarioKind) -> None:
    for s in scenarios:
        if s.kind is not kind:
            raise ScenarioKindError(f"scenario {s.id!r} is {s.kind.value}, expected {kind.value}")


def essential_elements(
    arch: Architecture,
    usage: Iterable[Scenario],
    tags: Iterable[EssentialAssetTag],
    threshold: int = 1,
) -> frozenset[str]:
    if threshold < 1:
        raise ValueError(f"criticality threshold must be >= 1, got {threshold}")
    usage = list(usage)
    _require_kind(usage, ScenarioKind.USAGE)
    raise_on_errors(validate_architecture(arch), "architecture")

    essential: set[str] = set()
    for s in usage:
        if s.criticality >= threshold:
            essential |= resolve_trace(arch, s)
    for tag in tags:
        essential.add(tag.asset)
        essential |= arch.asset(tag.asset).custodians
    return frozenset(essential)


def compromisable_elements(
    arch: Architecture, intrusions: Iterable[Scenario]
) -> tuple[dict[str, frozenset[str]], frozenset[str]]:
    intrusions = list(intrusions)
    _require_kind(intrusions, ScenarioKind.INTRUSION)
    raise_on_errors(validate_architecture(arch), "architecture")

    by_scenario: dict[str, frozenset[str]] = {}
    for s in intrusions:
        if s.id in by_scenario:
            raise ValueError(f"duplicate intrusion scenario {s.id!r}")
        by_scenario[s.id] = resolve_trace(arch, s)
    union = frozenset().union(*by_scenario.values())
    return dict(sorted(by_scenario.items())), union


def softspots(
    arch: Architecture,
    usage: Iterable[Scenario],
    tags: Iterable[EssentialAssetTag],
    intrusions: Iterable[Scenario],
    threshold: int = 1,
) -> AnalysisResult:
    essential = essential_elements(arch, usage, tags, threshold)
    by_scenario, union = compromisable_elements(arch, intrusions)
    spots = essential & union
    external = {c.id for c in arch.components if c.scope is Scope.EXTERNAL}
    return AnalysisResult(
        essential=essential,
        compromisable_by_scenario=by_scenario,
        compromisable_union=union,
        softspots=spots,
        softspots_reported=spots - external,
        criticality_threshold=threshold,
    )


def analyze(
    arch: Architecture,
    scenarios: Iterable[Scenario],
    tags: Iterable[EssentialAssetTag],
    threshold: int = 1,
) -> AnalysisResult:
    """Split mixed scenarios by kind and run :func:`softspots`."""
    scenarios = list(scenarios)
    usage = [s for s in scenarios if s.kind is ScenarioKind.USAGE]
    intrusions = [s for s in scenarios if s.kind is ScenarioKind.INTRUSION]
    return softspots(arch, usage, tags, intrusions, threshold)


def scenario_effects(arch: Architecture, intrusion: Scenario, result: AnalysisResult) -> ScenarioEffect:
    by_scenario: Mapping[str, frozenset[str]] = result.compromisable_by_scenario
    if intrusion.id not in by_scenario:
        raise UnknownElementError("scenario in analysis result", intrusion.id)
    compromised = by_scenario[intrusion.id]
    affected = compromised & result.softspots
    internal = sorted(affected & result.softspots_reported)
    if affected:
        notes = f"compromises softspot(s): {', '.join(sorted(affected))}"
        if len(internal) != len(affected):
            notes += f" ({len(internal)} inside the analyzed boundary)"
    else:
        notes = "no softspot reached"
    return ScenarioEffect(
        scenario=intrusion.id,
        compromised=compromised,
        affected_softspots=affected,
        notes=notes,
    )
