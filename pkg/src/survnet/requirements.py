"""Requirement statements derived from a Survivability Map.

Top-level statements use fixed templates with named placeholders. A
placeholder with no value is rendered as its marker (``xx``, ``yy``) so that
no numeric threshold is ever invented.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Mapping, Optional

from .architecture import Frozen
from .errors import raise_on_errors
from .survmap import Category, Pillar, Side, SurvivabilityMap, check_structure, format_ref


class RequirementCategory(str, Enum):
    TOP_LEVEL = "top_level"
    SOFTWARE = "software"
    PROCEDURAL = "procedural"
    HARDWARE = "hardware"


class RequirementSource(Frozen):
    scenario: str
    pillar: Pillar
    side: Side


class RequirementStatement(Frozen):
    id: str
    category: RequirementCategory
    text: str
    source: Optional[RequirementSource] = None
    parameters: dict[str, Optional[str]] = {}


PLACEHOLDERS = {
    "nominal_view_seconds": "xx",
    "recovery_view_seconds": "yy",
}

TOP_LEVEL_TEMPLATES = (
    "The {subject} shall be viewable within {nominal_view_seconds} seconds of request under nominal conditions. "
    "The {subject} shall be viewable within {recovery_view_seconds} seconds of request during recovery.",
    "Resistance and recognition techniques shall be used to protect the integrity of the {subject} "
    "under intrusion scenarios {scenarios}.",
)

CATEGORY_TEMPLATES = {
    Category.SOFTWARE: "The software shall provide this {pillar} measure for {scenario}: {text}",
    Category.PROCEDURAL: "The following {pillar} procedure shall be carried out for {scenario}: {text}",
    Category.HARDWARE: "Hardware and operating system configuration shall provide this {pillar} measure for {scenario}: {text}",
}

ID_PREFIX = {
    Category.SOFTWARE: "REQ-SW",
    Category.PROCEDURAL: "REQ-PROC",
    Category.HARDWARE: "REQ-HW",
}


def derive_requirements(
    smap: SurvivabilityMap,
    mods: Iterable[object] = (),
    params: Optional[Mapping[str, str]] = None,
    *,
    subject: str = "essential data",
) -> list[RequirementStatement]:
    """Top-level statements, then one statement per described recommended
    strategy grouped by category (software, procedural, hardware).

    Recommended strategies without a category are filed as software.
    """
    raise_on_errors(check_structure(smap), "survivability map")
    params = dict(params or {})
    titles = {getattr(m, "ref"): getattr(m, "title", "") for m in mods}
    values = {key: params.get(key) for key in PLACEHOLDERS}
    filled = {key: value if value is not None else PLACEHOLDERS[key] for key, value in values.items()}

    statements = [
        RequirementStatement(
            id="REQ-TOP-1",
            category=RequirementCategory.TOP_LEVEL,
            text=TOP_LEVEL_TEMPLATES[0].format(subject=subject, **filled),
            parameters=values,
        )
    ]
    if smap.rows:
        statements.append(RequirementStatement(
            id="REQ-TOP-2",
            category=RequirementCategory.TOP_LEVEL,
            text=TOP_LEVEL_TEMPLATES[1].format(subject=subject, scenarios=", ".join(smap.row_ids())),
        ))

    grouped: dict[Category, list[RequirementStatement]] = {c: [] for c in Category}
    for sid, pillar, side, strat in smap.strategies():
        if side is not Side.RECOMMENDED or not strat.described:
            continue
        category = strat.category or Category.SOFTWARE
        text = strat.text.strip()
        if strat.mod_refs:
            cited = "; ".join(
                f"{format_ref(r)} {titles[r]}".strip() if titles.get(r) else format_ref(r)
                for r in sorted(strat.mod_refs)
            )
            text = f"{text} [{cited}]"
        bucket = grouped[category]
        bucket.append(RequirementStatement(
            id=f"{ID_PREFIX[category]}-{len(bucket) + 1}",
            category=RequirementCategory(category.value),
            text=CATEGORY_TEMPLATES[category].format(pillar=pillar.value, scenario=sid, text=text),
            source=RequirementSource(scenario=sid, pillar=pillar, side=side),
        ))
    for category in Category:
        statements.extend(grouped[category])
    return statements


def render_requirements(statements: Iterable[RequirementStatement]) -> str:
    lines: list[str] = []
    current: Optional[RequirementCategory] = None
    for st in statements:
        if st.category is not current:
            current = st.category
            if lines:
                lines.append("")
            lines.append(f"## {current.value.replace('_', '-')} requirements")
        src = f" ({st.source.scenario}, {st.source.pillar.value})" if st.source else ""
        lines.append(f"- {st.id}{src}: {st.text}")
    return "\n".join(lines) + "\n"
