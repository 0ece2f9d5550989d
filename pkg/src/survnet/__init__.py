"""Survivability analysis for system architectures.

Model an architecture with usage and intrusion scenarios, find the elements
that are both essential and compromisable (softspots), keep a Survivability
Map of current and recommended resistance, recognition and recovery
strategies, and check which intrusions the applied modifications address.
"""

from .analysis import (
    AnalysisResult,
    ScenarioEffect,
    analyze,
    compromisable_elements,
    essential_elements,
    scenario_effects,
    softspots,
)
from .architecture import (
    Architecture,
    Asset,
    Component,
    Connector,
    ConnectorKind,
    Scope,
    custodians,
    element_ids,
    validate_architecture,
)
from .corpus import load_sentinel
from .errors import (
    Diagnostic,
    ModelSyntaxError,
    ModelValidationError,
    ModificationError,
    ScenarioKindError,
    Severity,
    UnknownElementError,
)
from .modelfile import ModelFile, parse_model, serialize_model
from .modifications import (
    ArchDiff,
    CoverageReport,
    CoverageStatus,
    Modification,
    ModKind,
    apply_modifications,
    diff_architectures,
    verify_mitigation_coverage,
)
from .render import export_graph, render_map
from .requirements import RequirementStatement, derive_requirements
from .scenarios import (
    Action,
    EssentialAssetTag,
    Scenario,
    ScenarioKind,
    TraceStep,
    ValidationMode,
    resolve_trace,
    validate_scenario,
)
from .survmap import (
    CoverageMatrix,
    MapCell,
    MapGap,
    MapRow,
    Pillar,
    Strategy,
    StrategyKind,
    SurvivabilityMap,
    build_map_skeleton,
    coverage_matrix,
    gap_report,
    validate_map,
)

__version__ = "0.1.0"
