import copy
import json

import pytest

from torusclass.dataset import (
    SCHEMA,
    DatasetError,
    S_key,
    bundled_dataset_path,
    datum_to_inputs,
    dump_document,
    load_bundled,
    load_dataset,
    load_document,
    normalize_S,
)
from torusclass.formulas import dual_torus_class_number, herbrand_identity_check, norm_torus_class_number
from torusclass.places import INF


@pytest.fixture(scope="module")
def raw():
    return json.loads(bundled_dataset_path().read_text())


def test_bundled_dataset_loads_cleanly():
    result = load_bundled()
    assert not result.errors
    assert {E.label for E in result} == {"Q-zeta7-cubic", "Q-zeta8"}


def test_round_trip_is_stable():
    result = load_bundled()
    doc = dump_document(result.entries)
    again = load_document(json.loads(json.dumps(doc)))
    assert dump_document(again.entries) == doc
    assert doc["schema"] == SCHEMA


@pytest.mark.parametrize("label,S", [("Q-zeta7-cubic", ()), ("Q-zeta7-cubic", (7,)),
                                     ("Q-zeta8", ()), ("Q-zeta8", (2,))])
def test_bundled_entries_give_integral_agreeing_reports(label, S):
    E = load_bundled().by_label(label)
    inputs = datum_to_inputs(E, S)
    n, u = norm_torus_class_number(inputs), dual_torus_class_number(inputs)
    assert n.ok and u.ok
    assert n.h_result == 1 and u.h_result == 1
    if E.group.is_cyclic():
        assert herbrand_identity_check(inputs)[2]


def test_place_keys():
    assert normalize_S("7,inf") == (INF, 7)
    assert S_key([7]) == "inf,7"
    assert normalize_S(()) == (INF,)


def test_missing_override_and_unknown_label():
    result = load_bundled()
    E = result.by_label("Q-zeta7-cubic")
    with pytest.raises(DatasetError, match="no local data"):
        datum_to_inputs(E, (13,))
    with pytest.raises(DatasetError, match="no entry labelled"):
        result.by_label("Q-nothing")


def test_knot_number_rules(raw):
    doc = copy.deepcopy(raw)
    doc["entries"][0]["knot_number"] = 3
    result = load_document(doc)
    assert any("knot_number must be 1" in e for e in result.errors)
    doc = copy.deepcopy(raw)
    zeta8 = next(e for e in doc["entries"] if e["label"] == "Q-zeta8")
    del zeta8["knot_number"]
    E = load_document(doc).by_label("Q-zeta8")
    with pytest.raises(DatasetError, match="knot number required"):
        datum_to_inputs(E)
    assert datum_to_inputs(E, knot=1).knot == 1


@pytest.mark.parametrize("breakage,message", [
    (lambda e: e.pop("class_number_L"), "missing field 'class_number_L'"),
    (lambda e: e.update(class_number_L=0), "class_number_L must be a positive integer"),
    (lambda e: e["places"].pop(0), "infinite place must be listed"),
    (lambda e: e["unit_module"].pop("matrices"), "unit_module needs"),
    (lambda e: e.update(group={"table": [[0, 1], [1, 1]]}), "entry"),
    (lambda e: e["places"][1].update(e=5), "entry"),
    (lambda e: e.update(base_field="Q(i)"), "only base field Q"),
])
def test_broken_entries_are_reported_by_label(raw, breakage, message):
    doc = copy.deepcopy(raw)
    breakage(doc["entries"][0])
    result = load_document(doc)
    label = raw["entries"][0]["label"]
    assert len(result.entries) == len(raw["entries"]) - 1
    assert len(result.errors) == 1
    assert message in result.errors[0]
    assert repr(label) in result.errors[0]


def test_duplicate_labels(raw):
    doc = copy.deepcopy(raw)
    doc["entries"].append(copy.deepcopy(doc["entries"][0]))
    result = load_document(doc)
    assert any("duplicate label" in e for e in result.errors)


def test_file_level_errors(tmp_path):
    with pytest.raises(DatasetError, match="cannot read"):
        load_dataset(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(DatasetError, match="JSON parse error"):
        load_dataset(bad)
    with pytest.raises(DatasetError, match="unsupported schema"):
        load_document({"schema": "other/9", "entries": []})
