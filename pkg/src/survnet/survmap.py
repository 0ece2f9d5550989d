"""Survivability Map: intrusion scenarios x {resistance, recognition, recovery}.

Every cell carries a current and a recommended strategy. A strategy of kind
``none`` is a gap; its ``text`` may hold a caveat such as an assumption that
makes the gap tolerable.
"""

from __future__ import annotations

from enum import Enum
from typing import Annotated, Iterable, Optional, Protocol

from pydantic import PlainSerializer

from .architecture import Frozen, Ident, IdSet
from .errors import Diagnostic, ScenarioKindError, error, raise_on_errors, warning
from .scenarios import Scenario, ScenarioKind


class Pillar(str, Enum):
    RESISTANCE = "resistance"
    RECOGNITION = "recognition"
    RECOVERY = "recovery"


PILLARS = (Pillar.RESISTANCE, Pillar.RECOGNITION, Pillar.RECOVERY)


class Side(str, Enum):
    CURRENT = "current"
    RECOMMENDED = "recommended"


SIDES = (Side.CURRENT, Side.RECOMMENDED)


class StrategyKind(str, Enum):
    DESCRIBED = "described"
    NONE = "none"


class Category(str, Enum):
    SOFTWARE = "software"
    PROCEDURAL = "procedural"
    HARDWARE = "hardware"


RefSet = Annotated[frozenset[int], PlainSerializer(lambda v: sorted(v), return_type=list)]


def format_ref(ref: int) -> str:
    return "{%d}" % ref


class Strategy(Frozen):
    kind: StrategyKind = StrategyKind.NONE
    text: str = ""
    category: Optional[Category] = None
    mod_refs: RefSet = frozenset()

    @property
    def described(self) -> bool:
        return self.kind is StrategyKind.DESCRIBED


NO_STRATEGY = Strategy()


class MapCell(Frozen):
    pillar: Pillar
    current: Strategy = NO_STRATEGY
    recommended: Strategy = NO_STRATEGY

    def side(self, side: Side) -> Strategy:
        return self.current if side is Side.CURRENT else self.recommended


class MapRow(Frozen):
    resistance: MapCell = MapCell(pillar=Pillar.RESISTANCE)
    recognition: MapCell = MapCell(pillar=Pillar.RECOGNITION)
    recovery: MapCell = MapCell(pillar=Pillar.RECOVERY)

    def cell(self, pillar: Pillar) -> MapCell:
        return getattr(self, Pillar(pillar).value)

    def cells(self) -> tuple[MapCell, MapCell, MapCell]:
        return (self.resistance, self.recognition, self.recovery)

    def recommended_refs(self) -> frozenset[int]:
        return frozenset().union(*(c.recommended.mod_refs for c in self.cells()))


class SurvivabilityMap(Frozen):
    rows: dict[Ident, MapRow] = {}

    def row_ids(self) -> list[str]:
        return sorted(self.rows)

    def strategies(self) -> Iterable[tuple[str, Pillar, Side, Strategy]]:
        """All strategies in canonical order: row id, pillar, current before recommended."""
        for sid in self.row_ids():
            row = self.rows[sid]
            for pillar in PILLARS:
                cell = row.cell(pillar)
                for side in SIDES:
                    yield sid, pillar, side, cell.side(side)


class MapGap(Frozen):
    scenario: str
    pillar: Pillar
    side: Side
    note: str = ""


class CoverageMatrix(Frozen):
    entries: Annotated[
        dict[int, IdSet],
        PlainSerializer(lambda m: {str(k): sorted(v) for k, v in sorted(m.items())}, return_type=dict),
    ] = {}
    unreferenced_mods: RefSet = frozenset()
    unmitigated_scenarios: IdSet = frozenset()


class _HasRef(Protocol):
    ref: int


def build_map_skeleton(intrusions: Iterable[Scenario]) -> SurvivabilityMap:
    rows: dict[str, MapRow] = {}
    for s in intrusions:
        if s.kind is not ScenarioKind.INTRUSION:
            raise ScenarioKindError(f"scenario {s.id!r} is not an intrusion")
        if s.id in rows:
            raise ValueError(f"duplicate intrusion scenario {s.id!r}")
        rows[s.id] = MapRow()
    return SurvivabilityMap(rows=rows)


def check_structure(smap: SurvivabilityMap) -> list[Diagnostic]:
    diags: list[Diagnostic] = []
    for sid in smap.row_ids():
        row = smap.rows[sid]
        for pillar in PILLARS:
            cell = row.cell(pillar)
            path = f"map.rows.{sid}.{pillar.value}"
            if cell.pillar is not pillar:
                diags.append(error(path, f"cell tagged {cell.pillar.value!r} sits in the {pillar.value} column"))
            for side in SIDES:
                strat = cell.side(side)
                spath = f"{path}.{side.value}"
                if strat.described and not strat.text.strip():
                    diags.append(error(spath, "described strategy has no text"))
                if not strat.described and strat.mod_refs:
                    diags.append(error(spath, "a 'none' strategy cannot cite modifications"))
                if side is Side.CURRENT and strat.mod_refs:
                    diags.append(error(spath, "only recommended strategies cite modifications"))
                for ref in sorted(strat.mod_refs):
                    if ref < 1:
                        diags.append(error(spath, f"modification reference {ref} is not positive"))
    return diags


def validate_map(
    smap: SurvivabilityMap,
    intrusions: Iterable[Scenario],
    mods: Iterable[_HasRef],
) -> list[Diagnostic]:
    """Errors for rows and scenarios that do not match up and for citations
    of undeclared modifications; warnings for recommended gaps with no
    caveat and described recommendations with no category."""
    diags = check_structure(smap)
    intrusions = list(intrusions)
    declared = {m.ref for m in mods}

    scenario_ids: set[str] = set()
    for s in intrusions:
        if s.kind is not ScenarioKind.INTRUSION:
            diags.append(error(f"scenarios.{s.id}", f"usage scenario {s.id!r} cannot have a map row"))
            continue
        scenario_ids.add(s.id)
    for sid in smap.row_ids():
        if sid not in scenario_ids:
            diags.append(error(f"map.rows.{sid}", f"row {sid!r} has no matching intrusion scenario"))
    for sid in sorted(scenario_ids - set(smap.rows)):
        diags.append(error(f"map.rows.{sid}", f"intrusion scenario {sid!r} has no map row"))

    for sid, pillar, side, strat in smap.strategies():
        path = f"map.rows.{sid}.{pillar.value}.{side.value}"
        for ref in sorted(strat.mod_refs):
            if ref >= 1 and ref not in declared:
                diags.append(error(path, f"cites undeclared modification {format_ref(ref)}"))
        if side is Side.RECOMMENDED:
            if not strat.described and not strat.text.strip():
                diags.append(warning(path, "no recommended strategy and no caveat explaining why"))
            if strat.described and strat.category is None:
                diags.append(warning(path, "recommended strategy has no category"))
    return diags


def gap_report(smap: SurvivabilityMap) -> list[MapGap]:
    raise_on_errors(check_structure(smap), "survivability map")
    return [
        MapGap(scenario=sid, pillar=pillar, side=side, note=strat.text.strip() or "no strategy")
        for sid, pillar, side, strat in smap.strategies()
        if not strat.described
    ]


def coverage_matrix(smap: SurvivabilityMap, mods: Iterable[_HasRef]) -> CoverageMatrix:
    mods = list(mods)
    diags = check_structure(smap)
    declared = {m.ref for m in mods}
    for sid, pillar, side, strat in smap.strategies():
        for ref in sorted(strat.mod_refs - declared):
            diags.append(error(f"map.rows.{sid}.{pillar.value}.{side.value}", f"cites undeclared modification {format_ref(ref)}"))
    raise_on_errors(diags, "survivability map")

    entries: dict[int, set[str]] = {}
    unmitigated: set[str] = set()
    for sid in smap.row_ids():
        row = smap.rows[sid]
        for ref in row.recommended_refs():
            entries.setdefault(ref, set()).add(sid)
        if not any(c.recommended.described for c in row.cells()):
            unmitigated.add(sid)
    return CoverageMatrix(
        entries={ref: frozenset(entries[ref]) for ref in sorted(entries)},
        unreferenced_mods=frozenset(declared - set(entries)),
        unmitigated_scenarios=frozenset(unmitigated),
    )
