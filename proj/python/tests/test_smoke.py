import json

import pytest

import natred


def test_catalog_names():
    names = natred.catalog_names()
    assert "heisenberg3_extension" in names
    assert "su2_biinvariant" in names


def test_catalog_documents_verify():
    for name in natred.catalog_names():
        doc = natred.catalog(name)
        assert doc["schema_version"] == natred.SCHEMA_VERSION
        ok, _ = natred.verify(doc)
        assert ok, name


def test_analyze_oscillator():
    r = natred.analyze(natred.catalog("heisenberg3_extension"))
    assert r["type"] == "TypeII"
    assert r["holonomy"]["dim"] == 1
    assert r["canonical_base"]["k_label"] == "so(2)"
    assert r["irreducibility"]["verdict"] == "Irreducible"


def test_analyze_text():
    out = natred.analyze(natred.catalog("su2_biinvariant"), format="text")
    assert "type" in out


def test_reduce():
    reducible, _ = natred.reduce(natred.catalog("flat_Rn(3)"))
    assert reducible
    reducible, _ = natred.reduce(natred.catalog("su2_biinvariant"))
    assert not reducible


def test_extend_base_iso_round_trip():
    spec = natred.catalog("heisenberg3_extension")
    f = natred.extend(spec)
    assert f["kind"] == "decomposition"
    b = natred.base(f)
    assert b["kind"] == "extension_spec"
    verdict, _ = natred.iso(b, spec)
    assert verdict == "Yes"


def test_iso_b_gram_mismatch():
    a = natred.catalog("heisenberg3_extension")
    b = json.loads(json.dumps(a))
    b["payload"]["B"] = [["4"]]
    verdict, report = natred.iso(a, b)
    assert verdict == "No"
    assert "B-Gram mismatch" in json.dumps(report)


def test_errors_carry_kind():
    with pytest.raises(natred.NatredError) as info:
        natred.catalog("no_such_space")
    assert info.value.kind == "UnknownName"
    bad = {"schema_version": "1", "kind": "model",
           "payload": {"dim": 1, "metric": [["1/0"]], "torsion": [], "curvature": []}}
    with pytest.raises(natred.NatredError) as info:
        natred.analyze(bad)
    assert info.value.kind == "SchemaError"
