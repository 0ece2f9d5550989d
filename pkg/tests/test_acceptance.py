"""Exit criteria. Each test prints one line in the 'acceptance criteria'
section of the pytest summary."""

import json
import random
import time

import pytest

from survnet import (
    analyze,
    coverage_matrix,
    derive_requirements,
    diff_architectures,
    gap_report,
    parse_model,
    serialize_model,
    validate_map,
)
from survnet.cli import main
from survnet.corpus import corpus_bytes
from survnet.errors import Severity
from survnet.modelfile import ModelFile, canonicalize, to_json
from survnet.requirements import RequirementCategory

from oracle import oracle
from randmodels import random_model, random_scenario

CORE = {"reporting_engine", "database", "treatment_plan"}


@pytest.fixture
def model_path(tmp_path):
    path = tmp_path / "sentinel.json"
    path.write_bytes(corpus_bytes("sentinel"))
    return path


@pytest.mark.acceptance(1, "Sentinel analysis: essential and reported softspots contain the core three; golden match; < 1 s")
def test_ac1_sentinel_analysis(model_path, capsys, golden):
    start = time.perf_counter()
    assert main(["analyze", str(model_path), "--threshold", "1", "--format", "json"]) == 0
    elapsed = time.perf_counter() - start
    result = json.loads(capsys.readouterr().out)
    assert CORE <= set(result["essential"])
    assert CORE <= set(result["softspots_reported"])
    assert result == golden("sentinel_analysis.json")
    assert elapsed < 1.0


@pytest.mark.acceptance(2, "Sentinel map regression: map validates, IUS2 recognition gap, {3} >= 3 and {1} >= 2 scenarios; golden match")
def test_ac2_table_regression(sentinel, golden):
    diags = validate_map(sentinel.map, sentinel.intrusions, sentinel.modifications)
    assert not [d for d in diags if d.severity is Severity.ERROR]
    assert sorted(m.ref for m in sentinel.modifications) == [1, 2, 3, 4, 5, 6]
    gaps = gap_report(sentinel.map)
    assert ("ius2", "recognition", "current") in [(g.scenario, g.pillar.value, g.side.value) for g in gaps]
    matrix = coverage_matrix(sentinel.map, sentinel.modifications)
    assert len(matrix.entries[3]) >= 3 and {"ius1", "ius2", "ius4"} <= matrix.entries[3]
    assert len(matrix.entries[1]) >= 2
    assert [g.model_dump(mode="json") for g in gaps] == golden("sentinel_gaps.json")
    assert matrix.model_dump(mode="json") == golden("sentinel_coverage.json")


@pytest.mark.acceptance(3, "Modification round trip: apply 1..6, diff adds both new components, verify covers all five (exit 0)")
def test_ac3_modification_round_trip(model_path, tmp_path, capsys):
    out = tmp_path / "modified.json"
    assert main(["apply", str(model_path), "--refs", "1..6", "-o", str(out)]) == 0
    assert main(["diff", str(model_path), str(out), "--format", "json"]) == 0
    diff = json.loads(capsys.readouterr().out)
    assert {"security_layer", "emergency_tp_viewer"} <= set(diff["added_components"])
    before = parse_model(model_path.read_bytes())
    after = parse_model(out.read_bytes())
    assert diff == json.loads(to_json(diff_architectures(before.architecture, after.architecture)))
    assert main(["verify", str(out)]) == 0
    report = capsys.readouterr().out.splitlines()
    assert [line for line in report if line.startswith("ius")] == [f"ius{i}: covered" for i in range(1, 6)]


@pytest.mark.acceptance(4, "Set-algebra oracle: 1000 random models, exact equality, < 10 s")
def test_ac4_oracle():
    rng = random.Random(20260415)
    start = time.perf_counter()
    checked = 0
    for _ in range(1000):
        raw = random_model(rng, max_components=8, max_assets=4, max_scenarios=6)
        threshold = rng.randint(1, 3)
        m = ModelFile.model_validate(raw)
        got = analyze(m.architecture, m.scenarios, m.essential_assets, threshold)
        assert got.model_dump(mode="json") == oracle(raw, threshold)
        checked += 1
    elapsed = time.perf_counter() - start
    assert checked == 1000
    assert elapsed < 10.0


@pytest.mark.acceptance(5, "Monotonicity: 500 random model/extension pairs, zero violations")
def test_ac5_monotonicity():
    rng = random.Random(5150)
    violations = []
    for i in range(500):
        raw = random_model(rng, max_scenarios=5)
        threshold = rng.randint(1, 3)
        m = ModelFile.model_validate(raw)
        base = analyze(m.architecture, m.scenarios, m.essential_assets, threshold)
        elements = sorted(m.architecture.component_ids() | m.architecture.asset_ids())
        if i % 2 == 0:
            ext = random_scenario(rng, "ext", elements, kind="usage")
            ext["criticality"] = rng.randint(threshold, 3)
        else:
            ext = random_scenario(rng, "ext", elements, kind="intrusion")
        grown = ModelFile.model_validate({**raw, "scenarios": raw["scenarios"] + [ext]})
        after = analyze(grown.architecture, grown.scenarios, grown.essential_assets, threshold)
        ok = after.essential >= base.essential and after.softspots >= base.softspots \
            and after.compromisable_union >= base.compromisable_union
        if threshold < 3:
            raised = analyze(m.architecture, m.scenarios, m.essential_assets, threshold + 1)
            ok = ok and raised.essential <= base.essential
        if not ok:
            violations.append(i)
    assert violations == []


@pytest.mark.acceptance(6, "Serialization: round trip on Sentinel and 200 random models; byte-deterministic")
def test_ac6_serialization(sentinel):
    assert parse_model(serialize_model(sentinel)) == sentinel
    assert serialize_model(sentinel) == serialize_model(sentinel)
    rng = random.Random(606)
    for _ in range(200):
        m = parse_model(json.dumps(random_model(rng, with_map=True)))
        data = serialize_model(m)
        assert parse_model(data) == canonicalize(m)
        assert serialize_model(parse_model(data)) == data == serialize_model(m)


@pytest.mark.acceptance(7, "Requirements: software, procedural and hardware statements; unset xx/yy placeholders")
def test_ac7_requirements(model_path, capsys):
    sentinel = parse_model(model_path.read_bytes())
    statements = derive_requirements(sentinel.map, sentinel.modifications)
    categories = {s.category for s in statements}
    assert {RequirementCategory.SOFTWARE, RequirementCategory.PROCEDURAL, RequirementCategory.HARDWARE} <= categories
    top = [s for s in statements if s.category is RequirementCategory.TOP_LEVEL]
    assert any("xx seconds" in s.text and "yy seconds" in s.text for s in top)
    assert main(["requirements", str(model_path)]) == 0
    text = capsys.readouterr().out
    assert "xx seconds" in text and "yy seconds" in text
