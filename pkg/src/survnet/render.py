"""Text renderings: DOT graphs, Survivability Map tables, analysis reports."""

from __future__ import annotations

from typing import Iterable, Optional

from .analysis import AnalysisResult
from .architecture import Architecture, Scope
from .errors import raise_on_errors
from .modifications import ArchDiff, CoverageReport, Modification
from .scenarios import Scenario
from .survmap import (
    PILLARS,
    Strategy,
    SurvivabilityMap,
    check_structure,
    coverage_matrix,
    format_ref,
    gap_report,
)

SOFTSPOT_STYLE = 'style="filled,bold", fillcolor="#f4cccc", penwidth=2'
EXTERNAL_STYLE = 'style=dashed, color="#777777"'


def _q(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def export_graph(arch: Architecture, result: Optional[AnalysisResult] = None) -> str:
    """DOT digraph: components as boxes, assets as ellipses, connectors as
    labelled edges and custodianship as dotted undirected edges.

    With ``result``, reported softspots are filled and bold. External
    components are dashed.
    """
    hot = result.softspots_reported if result is not None else frozenset()
    lines = [f"digraph {_q(arch.id or 'architecture')} {{", "  rankdir=LR;", '  node [fontname="Helvetica"];']
    for comp in sorted(arch.components, key=lambda c: c.id):
        attrs = ["shape=box", f"label={_q(comp.name or comp.id)}"]
        if comp.scope is Scope.EXTERNAL:
            attrs.append(EXTERNAL_STYLE)
        if comp.id in hot:
            attrs.append(SOFTSPOT_STYLE)
        lines.append(f"  {_q(comp.id)} [{', '.join(attrs)}];")
    for asset in sorted(arch.assets, key=lambda a: a.id):
        attrs = ["shape=ellipse", f"label={_q(asset.name or asset.id)}"]
        if asset.id in hot:
            attrs.append(SOFTSPOT_STYLE)
        lines.append(f"  {_q(asset.id)} [{', '.join(attrs)}];")
    for conn in sorted(arch.connectors, key=lambda c: c.id):
        lines.append(f"  {_q(conn.from_)} -> {_q(conn.to)} [label={_q(conn.kind.value)}];")
    for asset in sorted(arch.assets, key=lambda a: a.id):
        for cust in sorted(asset.custodians):
            lines.append(f"  {_q(cust)} -> {_q(asset.id)} [style=dotted, arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cell(text: str) -> str:
    return " ".join(text.replace("|", "\\|").split())


def _strategy_text(strat: Strategy) -> str:
    if strat.described:
        refs = " ".join(format_ref(r) for r in sorted(strat.mod_refs))
        return f"{strat.text.strip()} {refs}".strip()
    caveat = strat.text.strip()
    if caveat.lower().startswith("none"):
        return caveat
    return f"None. {caveat}".strip()


def render_map(
    smap: SurvivabilityMap,
    intrusions: Iterable[Scenario] = (),
    mods: Iterable[Modification] = (),
    result: Optional[AnalysisResult] = None,
    *,
    gaps: bool = True,
    coverage: bool = True,
) -> str:
    raise_on_errors(check_structure(smap), "survivability map")
    titles = {s.id: s.title for s in intrusions}
    mods = sorted(mods, key=lambda m: m.ref)

    out = [
        "| Intrusion Scenario | Resistance Strategy | Recognition Strategy | Recovery Strategy |",
        "|---|---|---|---|",
    ]
    for sid in smap.row_ids():
        row = smap.rows[sid]
        label = f"{sid}: {titles[sid]}" if titles.get(sid) else sid
        if result is not None and sid in result.compromisable_by_scenario:
            hit = sorted(result.compromisable_by_scenario[sid] & result.softspots_reported)
            label += f" (softspots: {', '.join(hit) if hit else 'none'})"
        current = [f"Current: {_strategy_text(row.cell(p).current)}" for p in PILLARS]
        recommended = [f"Recommended: {_strategy_text(row.cell(p).recommended)}" for p in PILLARS]
        out.append("| " + " | ".join(_cell(t) for t in [label, *current]) + " |")
        out.append("| " + " | ".join(_cell(t) for t in ["", *recommended]) + " |")

    if gaps:
        out += ["", "## Gaps", ""]
        found = gap_report(smap)
        if not found:
            out.append("No gaps.")
        for g in found:
            out.append(f"- {g.scenario} / {g.pillar.value} / {g.side.value}: {_cell(g.note)}")

    if coverage:
        matrix = coverage_matrix(smap, mods)
        out += ["", "## Modification coverage", "", "| Ref | Modification | Scenarios |", "|---|---|---|"]
        for m in mods:
            cited = sorted(matrix.entries.get(m.ref, ()))
            out.append(f"| {format_ref(m.ref)} | {_cell(m.title)} | {', '.join(cited) or '-'} |")
        unref = " ".join(format_ref(r) for r in sorted(matrix.unreferenced_mods)) or "none"
        unmit = ", ".join(sorted(matrix.unmitigated_scenarios)) or "none"
        out += ["", f"Unreferenced modifications: {unref}", f"Unmitigated scenarios: {unmit}"]
    return "\n".join(out) + "\n"


def _ids(values: Iterable[str]) -> str:
    return ", ".join(sorted(values)) or "(none)"


def render_analysis(result: AnalysisResult) -> str:
    lines = [
        f"criticality threshold: {result.criticality_threshold}",
        f"essential: {_ids(result.essential)}",
        "compromisable:",
    ]
    for sid in sorted(result.compromisable_by_scenario):
        lines.append(f"  {sid}: {_ids(result.compromisable_by_scenario[sid])}")
    lines += [
        f"compromisable (all): {_ids(result.compromisable_union)}",
        f"softspots: {_ids(result.softspots)}",
        f"softspots reported: {_ids(result.softspots_reported)}",
    ]
    return "\n".join(lines) + "\n"


def render_coverage(report: CoverageReport) -> str:
    lines = [f"{c.scenario}: {c.status.value}" + (
        f" (missing {' '.join(format_ref(r) for r in sorted(c.missing_refs))})" if c.missing_refs else ""
    ) for c in report.scenarios]
    for na in report.not_applied:
        lines.append(f"not applied {format_ref(na.ref)} ({na.kind.value}): {na.reason}")
    applied = " ".join(format_ref(r) for r in sorted(report.applied_refs)) or "none"
    lines.append(f"applied: {applied}")
    return "\n".join(lines) + "\n"


def render_diff(diff: ArchDiff) -> str:
    lines = []
    for name in type(diff).model_fields:
        values = getattr(diff, name)
        if values:
            lines.append(f"{name}: {', '.join(sorted(values))}")
    return ("\n".join(lines) if lines else "no differences") + "\n"
