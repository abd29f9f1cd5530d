"""Curated Galois extensions of Q stored as JSON.

Document layout::

    {"schema": "torusclass-dataset/1",
     "entries": [{"label", "base_field": "Q", "group", "class_number_L",
                  "class_number_K", "unit_module", "places",
                  "knot_number"?, "s_class_number_overrides"?}]}

``group`` is ``{"table": [[...]]}`` or ``{"permutations": [[...], ...]}``.
``unit_module`` is ``{"rank", "torsion", "action"}`` (one matrix per element)
or ``{"rank", "torsion", "generators", "matrices"}``, optionally with
``"labels"``.  Override keys are comma-separated place lists such as
``"inf,7"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .formulas import TorusInputs
from .groups import FiniteGroup, GroupError, Subgroup, group_from_permutations
from .modules import GModule, ModuleError, module_from_generators
from .places import INF, PlaceDatum, PlaceError, parse_place, place_key

SCHEMA = "torusclass-dataset/1"


class DatasetError(ValueError):
    pass


@dataclass(frozen=True)
class SOverride:
    h_K: int
    h_L: int
    units: GModule
    unit_labels: tuple[str, ...] = ()


@dataclass(frozen=True)
class ExtensionDatum:
    label: str
    group: FiniteGroup
    class_number_L: int
    class_number_K: int
    units: GModule
    places: dict
    knot_number: int | None = None
    overrides: dict = field(default_factory=dict)
    unit_labels: tuple[str, ...] = ()
    base_field: str = "Q"


@dataclass
class LoadResult:
    entries: list[ExtensionDatum]
    errors: list[str]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def by_label(self, label: str) -> ExtensionDatum:
        for e in self.entries:
            if e.label == label:
                return e
        known = ", ".join(e.label for e in self.entries) or "none"
        raise DatasetError(f"no entry labelled {label!r} (known: {known})")


def _positive_int(raw, name: str) -> int:
    if isinstance(raw, bool) or not isinstance(raw, int) or raw < 1:
        raise DatasetError(f"{name} must be a positive integer, got {raw!r}")
    return raw


def _parse_group(raw) -> FiniteGroup:
    if not isinstance(raw, dict):
        raise DatasetError("group must be an object")
    if "table" in raw:
        return FiniteGroup.from_dict(raw)
    if "permutations" in raw:
        return group_from_permutations(raw["permutations"], raw.get("degree"))
    raise DatasetError("group needs 'table' or 'permutations'")


def _parse_module(G: FiniteGroup, raw) -> tuple[GModule, tuple[str, ...]]:
    if not isinstance(raw, dict):
        raise DatasetError("unit_module must be an object")
    rank = raw.get("rank", 0)
    torsion = tuple(raw.get("torsion", ()))
    labels = tuple(raw.get("labels", ()))
    if "action" in raw:
        M = GModule(G, rank, torsion, tuple(tuple(tuple(r) for r in A) for A in raw["action"]))
    elif "generators" in raw and "matrices" in raw:
        M = module_from_generators(G, rank, torsion, raw["generators"], raw["matrices"])
    else:
        raise DatasetError("unit_module needs 'action' or 'generators' + 'matrices'")
    if labels and len(labels) != M.dim:
        raise DatasetError(f"unit_module has {M.dim} coordinates but {len(labels)} labels")
    return M, labels


def _parse_place(G: FiniteGroup, raw) -> PlaceDatum:
    v = parse_place(raw["place"])
    return PlaceDatum(v, _positive_int(raw["e"], "e"), _positive_int(raw["f"], "f"), _positive_int(raw["g"], "g"),
                      Subgroup(G, raw["decomposition"]), Subgroup(G, raw["inertia"]))


def normalize_S(S) -> tuple:
    """Sorted place tuple with infinity included."""
    if isinstance(S, str):
        S = [s for s in S.split(",") if s.strip()]
    return tuple(sorted({parse_place(v) for v in S} | {INF}, key=place_key))


def S_key(S) -> str:
    return ",".join(str(v) for v in normalize_S(S))


def parse_entry(raw: dict) -> ExtensionDatum:
    if not isinstance(raw, dict):
        raise DatasetError("entry must be an object")
    label = raw.get("label")
    if not isinstance(label, str) or not label:
        raise DatasetError("entry needs a non-empty string label")
    try:
        if raw.get("base_field", "Q") != "Q":
            raise DatasetError("only base field Q is supported")
        G = _parse_group(raw["group"])
        units, labels = _parse_module(G, raw["unit_module"])
        places = {}
        for p in raw["places"]:
            P = _parse_place(G, p)
            if P.place in places:
                raise DatasetError(f"place {P.place} listed twice")
            places[P.place] = P
        if INF not in places:
            raise DatasetError("the infinite place must be listed")
        knot = raw.get("knot_number")
        if knot is not None:
            knot = _positive_int(knot, "knot_number")
        if G.is_cyclic():
            if knot not in (None, 1):
                raise DatasetError("knot_number must be 1 for a cyclic group")
            knot = 1
        overrides = {}
        for key, ov in raw.get("s_class_number_overrides", {}).items():
            M, ov_labels = _parse_module(G, ov["unit_module"])
            k = S_key(key)
            for v in normalize_S(key):
                if v not in places:
                    raise DatasetError(f"override {key!r} uses place {v} without local data")
            overrides[k] = SOverride(_positive_int(ov["class_number_K"], "class_number_K"),
                                     _positive_int(ov["class_number_L"], "class_number_L"), M, ov_labels)
        return ExtensionDatum(label, G, _positive_int(raw["class_number_L"], "class_number_L"),
                              _positive_int(raw["class_number_K"], "class_number_K"), units, places,
                              knot, overrides, labels)
    except KeyError as exc:
        raise DatasetError(f"entry {label!r}: missing field {exc.args[0]!r}") from None
    except (DatasetError, GroupError, ModuleError, PlaceError, TypeError, ValueError) as exc:
        raise DatasetError(f"entry {label!r}: {exc}") from None


def load_document(doc) -> LoadResult:
    """Validate every entry; bad entries are reported and skipped."""
    if isinstance(doc, list):
        raw_entries = doc
    elif isinstance(doc, dict):
        if doc.get("schema", SCHEMA) != SCHEMA:
            raise DatasetError(f"unsupported schema {doc.get('schema')!r} (expected {SCHEMA})")
        raw_entries = doc.get("entries", [])
    else:
        raise DatasetError("dataset must be a JSON object or list")
    entries, errors, seen = [], [], set()
    for i, raw in enumerate(raw_entries):
        try:
            E = parse_entry(raw)
        except DatasetError as exc:
            errors.append(f"entry #{i}: {exc}")
            continue
        if E.label in seen:
            errors.append(f"entry #{i}: duplicate label {E.label!r}")
            continue
        seen.add(E.label)
        entries.append(E)
    return LoadResult(entries, errors)


def load_dataset(path) -> LoadResult:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DatasetError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetError(f"{path}: JSON parse error at line {exc.lineno}: {exc.msg}") from None
    return load_document(doc)


def bundled_dataset_path() -> Path:
    return Path(str(resources.files("torusclass") / "data" / "fields.json"))


def load_bundled() -> LoadResult:
    return load_dataset(bundled_dataset_path())


def _module_to_dict(M: GModule, labels) -> dict:
    out = {"rank": M.rank, "torsion": list(M.torsion), "action": [[list(r) for r in A] for A in M.action]}
    if labels:
        out["labels"] = list(labels)
    return out


def entry_to_dict(E: ExtensionDatum) -> dict:
    out = {
        "label": E.label,
        "base_field": E.base_field,
        "group": E.group.to_dict(),
        "class_number_L": E.class_number_L,
        "class_number_K": E.class_number_K,
        "unit_module": _module_to_dict(E.units, E.unit_labels),
        "places": [E.places[v].to_dict() for v in sorted(E.places, key=place_key)],
    }
    if E.knot_number is not None:
        out["knot_number"] = E.knot_number
    if E.overrides:
        out["s_class_number_overrides"] = {
            k: {"class_number_K": o.h_K, "class_number_L": o.h_L, "unit_module": _module_to_dict(o.units, o.unit_labels)}
            for k, o in sorted(E.overrides.items())
        }
    return out


def dump_document(entries) -> dict:
    return {"schema": SCHEMA, "entries": [entry_to_dict(E) for E in entries]}


def datum_to_inputs(E: ExtensionDatum, S=(), knot: int | None = None) -> TorusInputs:
    """Inputs for the formulas; S without overrides must be exactly ``{inf}``."""
    S = normalize_S(S)
    if knot is None:
        knot = E.knot_number
    elif E.group.is_cyclic() and knot != 1:
        raise DatasetError("knot number of a cyclic extension must be 1")
    if knot is None:
        raise DatasetError("knot number required for non-cyclic group")
    for v in S:
        if v not in E.places:
            raise DatasetError(f"{E.label}: no local data for place {v}")
    if S == (INF,):
        h_K, h_L, units, labels = E.class_number_K, E.class_number_L, E.units, E.unit_labels
    else:
        ov = E.overrides.get(S_key(S))
        if ov is None:
            raise DatasetError(f"{E.label}: no S-unit data for S = {{{S_key(S)}}}")
        h_K, h_L, units, labels = ov.h_K, ov.h_L, ov.units, ov.unit_labels
    return TorusInputs(E.label, E.group, units, dict(E.places), S, h_L, h_K, knot, labels)


__all__ = [
    "SCHEMA", "DatasetError", "ExtensionDatum", "SOverride", "LoadResult", "load_dataset", "load_document",
    "load_bundled", "bundled_dataset_path", "parse_entry", "entry_to_dict", "dump_document", "datum_to_inputs",
    "normalize_S", "S_key",
]
