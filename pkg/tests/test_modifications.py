import random

import pytest
from hypothesis import given, settings, strategies as st

from survnet import (
    CoverageStatus,
    ModificationError,
    Modification,
    apply_modifications,
    build_map_skeleton,
    diff_architectures,
    validate_architecture,
    verify_mitigation_coverage,
)
from survnet.errors import Severity
from survnet.modelfile import ModelFile
from survnet.modifications import AddComponent

from randmodels import random_model


def add_component(ref, ident, to=None):
    payload = {"component": {"id": ident, "tags": ["software"]}}
    if to:
        payload["connectors"] = [{"id": f"k_{ident}", "from": ident, "to": to}]
    return Modification(ref=ref, kind="add_component", title=f"add {ident}", payload=payload)


def test_sentinel_mods_add_the_two_new_components(sentinel, sentinel_modified):
    ids = sentinel_modified.component_ids()
    assert {"security_layer", "emergency_tp_viewer"} <= ids
    assert sentinel.architecture.component_ids() < ids
    assert validate_architecture(sentinel_modified) == []
    assert sentinel_modified.applied_refs() == {1, 2, 3, 4, 5, 6}


def test_apply_does_not_mutate_input(sentinel):
    before = sentinel.architecture.model_dump()
    apply_modifications(sentinel.architecture, sentinel.modifications)
    assert sentinel.architecture.model_dump() == before


def test_empty_mod_list_is_identity(sentinel):
    assert apply_modifications(sentinel.architecture, []) == sentinel.architecture


def test_errors(sentinel):
    arch = sentinel.architecture
    with pytest.raises(ModificationError, match="duplicate"):
        apply_modifications(arch, [add_component(1, "x"), add_component(1, "y")])
    with pytest.raises(ModificationError, match="already exists"):
        apply_modifications(arch, [add_component(1, "api")])
    with pytest.raises(ModificationError, match="missing"):
        apply_modifications(arch, [Modification(ref=1, kind="alter_component", payload={"id": "ghost"})])
    with pytest.raises(ModificationError, match="invalid"):
        apply_modifications(arch, [add_component(1, "x", to="ghost")])


def test_applying_twice_errors(sentinel):
    once = apply_modifications(sentinel.architecture, [add_component(1, "x")])
    with pytest.raises(ModificationError):
        apply_modifications(once, [add_component(2, "x")])
    proc = Modification(ref=3, kind="procedural", title="daily backups")
    twice = apply_modifications(once, [proc])
    assert twice.components == once.components and 3 in twice.applied_refs()
    with pytest.raises(ModificationError, match="already applied"):
        apply_modifications(twice, [proc])


def test_payload_must_match_kind():
    with pytest.raises(ValueError):
        Modification(ref=1, kind="procedural", payload={"id": "x"})
    with pytest.raises(ValueError):
        Modification(ref=1, kind="add_connector", payload={"id": "x"})


def test_diff_reflexive_and_mirrored(sentinel, sentinel_modified):
    assert diff_architectures(sentinel.architecture, sentinel.architecture).is_empty()
    fwd = diff_architectures(sentinel.architecture, sentinel_modified)
    back = diff_architectures(sentinel_modified, sentinel.architecture)
    assert {"security_layer", "emergency_tp_viewer"} <= fwd.added_components
    assert fwd.added_components == back.removed_components
    assert fwd.added_connectors == back.removed_connectors


def test_diff_reports_exactly_the_structural_payloads(sentinel, sentinel_modified):
    d = diff_architectures(sentinel.architecture, sentinel_modified)
    comps, conns, altered, assets = set(), set(), set(), set()
    for m in sentinel.modifications:
        p = m.payload
        if m.kind.value == "add_component":
            comps.add(p.component.id)
            conns |= {c.id for c in p.connectors}
        elif m.kind.value == "add_connector":
            conns.add(p.connector.id)
        elif m.kind.value == "alter_component":
            altered.add(p.id)
        elif m.kind.value == "add_asset_property":
            assets |= p.assets
    assert (d.added_components, d.added_connectors, d.altered_components, d.altered_assets) == (comps, conns, altered, assets)
    assert not (d.removed_components or d.removed_connectors or d.removed_assets or d.added_assets)


def test_verify_all_covered_after_modification(sentinel, sentinel_modified):
    report = verify_mitigation_coverage(sentinel_modified, sentinel.map, sentinel.intrusions, sentinel.modifications)
    assert report.all_covered and len(report.scenarios) == 5
    assert report.not_applied == ()


def test_verify_skeleton_is_uncovered(sentinel, sentinel_modified):
    skel = build_map_skeleton(sentinel.intrusions)
    report = verify_mitigation_coverage(sentinel_modified, skel, sentinel.intrusions, sentinel.modifications)
    assert {s.status for s in report.scenarios} == {CoverageStatus.UNCOVERED}


def test_verify_missing_mod_six_is_partial(sentinel):
    mods = [m for m in sentinel.modifications if m.ref != 6]
    modified = apply_modifications(sentinel.architecture, mods)
    report = verify_mitigation_coverage(modified, sentinel.map, sentinel.intrusions, mods)
    assert report.status_of("ius5") is CoverageStatus.PARTIALLY_COVERED
    assert all(report.status_of(s) is CoverageStatus.COVERED for s in ("ius1", "ius2", "ius3", "ius4"))


def test_verify_lists_absent_structural_mods(sentinel):
    report = verify_mitigation_coverage(sentinel.architecture, sentinel.map, sentinel.intrusions, sentinel.modifications)
    assert [n.ref for n in report.not_applied] == [1, 2, 3, 4, 5, 6]
    assert not report.all_covered


def _fresh_mods(rng, arch, k, start=1):
    existing = sorted(arch.component_ids())
    return [add_component(start + i, f"fresh{start + i}", to=rng.choice(existing)) for i in range(k)]


@settings(max_examples=100)
@given(seed=st.integers(0, 2**32 - 1), k=st.integers(0, 5), split=st.integers(0, 5))
def test_random_apply_properties(seed, k, split):
    rng = random.Random(seed)
    arch = ModelFile.model_validate(random_model(rng)).architecture
    mods = _fresh_mods(rng, arch, k)
    out = apply_modifications(arch, mods)
    assert len(out.components) == len(arch.components) + k
    assert not [d for d in validate_architecture(out) if d.severity is Severity.ERROR]
    split = min(split, k)
    assert apply_modifications(apply_modifications(arch, mods[:split]), mods[split:]) == out
    d = diff_architectures(arch, out)
    assert d.added_components == {m.payload.component.id for m in mods}
    assert d.added_connectors == {c.id for m in mods for c in m.payload.connectors}
